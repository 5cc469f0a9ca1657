#pragma once

// Lattice-point combinatorics on finite point configurations.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tropmom/exact_linalg.hpp"
#include "tropmom/polyhedra.hpp"

namespace tropmom {

/// Total degree first, then ascending lexicographic.
inline bool graded_lex_less(const LatticePoint& a, const LatticePoint& b) {
  const auto sa = std::accumulate(a.begin(), a.end(), std::int64_t{0});
  const auto sb = std::accumulate(b.begin(), b.end(), std::int64_t{0});
  if (sa != sb) return sa < sb;
  return a < b;
}

inline std::string format_point(const LatticePoint& p) { return format_vector(p); }

/// An ordered list of distinct lattice points in Z^n_{>=0}. The order fixes
/// the coordinate order of R^A.
class PointConfig {
 public:
  PointConfig() = default;
  PointConfig(std::size_t n, std::vector<LatticePoint> points) : n_(n), points_(std::move(points)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const auto& p = points_[i];
      if (p.size() != n_)
        throw UsageError("point " + format_point(p) + " has dimension " + std::to_string(p.size()) + ", expected " +
                         std::to_string(n_));
      for (auto x : p)
        if (x < 0) throw UsageError("point " + format_point(p) + " has a negative coordinate");
      if (!index_.emplace(p, i).second) throw UsageError("duplicate point " + format_point(p));
    }
  }

  /// Dimension is taken from the first point.
  explicit PointConfig(std::vector<LatticePoint> points)
      : PointConfig(points.empty() ? 0 : points.front().size(), std::move(points)) {}

  std::size_t dim() const { return n_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<LatticePoint>& points() const { return points_; }
  const LatticePoint& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  std::optional<std::size_t> index_of(const LatticePoint& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const LatticePoint& p) const { return index_.count(p) > 0; }

  std::int64_t max_degree() const {
    std::int64_t d = 0;
    for (const auto& p : points_) d = std::max(d, std::accumulate(p.begin(), p.end(), std::int64_t{0}));
    return d;
  }

  /// Same points, graded-lex order.
  PointConfig sorted() const {
    auto pts = points_;
    std::sort(pts.begin(), pts.end(), graded_lex_less);
    return PointConfig(n_, std::move(pts));
  }

 private:
  std::size_t n_ = 0;
  std::vector<LatticePoint> points_;
  std::map<LatticePoint, std::size_t> index_;
};

struct MidpointTriple {
  LatticePoint a1, a2, b;
  friend bool operator==(const MidpointTriple&, const MidpointTriple&) = default;
};

struct AlmostEmptySimplex {
  std::vector<LatticePoint> vertices;
  LatticePoint interior_point;
  RatVector lambdas;
};

/// Membership in conv(V) via the H-representation of cone{(v,1)}.
class HullOracle {
 public:
  explicit HullOracle(const std::vector<LatticePoint>& vertices) {
    if (vertices.empty()) throw UsageError("convex hull of an empty vertex list");
    n_ = vertices.front().size();
    std::vector<IntVector> gens;
    for (const auto& v : vertices) {
      if (v.size() != n_) throw UsageError("vertices of mixed dimension");
      IntVector g = to_integer(v);
      g.emplace_back(1);
      gens.push_back(std::move(g));
    }
    cone_ = dd_convert(Cone::from_v(n_ + 1, std::move(gens)));
  }

  bool operator()(const LatticePoint& p) const {
    IntVector q = to_integer(p);
    q.emplace_back(1);
    return contains(cone_, std::span<const Integer>(q));
  }

 private:
  std::size_t n_ = 0;
  Cone cone_;
};

/// All lattice points of conv(vertices), graded-lex order.
inline std::vector<LatticePoint> lattice_points(const std::vector<LatticePoint>& vertices) {
  if (vertices.empty()) throw UsageError("lattice_points: empty vertex list");
  const std::size_t n = vertices.front().size();
  LatticePoint lo = vertices.front(), hi = vertices.front();
  for (const auto& v : vertices) {
    if (v.size() != n) throw UsageError("lattice_points: vertices of mixed dimension");
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  }
  const HullOracle inside(vertices);
  std::vector<LatticePoint> out;
  LatticePoint p = lo;
  for (;;) {
    if (inside(p)) out.push_back(p);
    std::size_t i = 0;
    while (i < n && p[i] == hi[i]) p[i] = lo[i], ++i;
    if (i == n) break;
    ++p[i];
  }
  std::sort(out.begin(), out.end(), graded_lex_less);
  return out;
}

/// Triples with a1 + a2 = 2b inside cfg, a1 before a2 in cfg order; sorted
/// by the index pair (a1, a2).
inline std::vector<MidpointTriple> midpoint_triples(const PointConfig& cfg) {
  std::vector<MidpointTriple> out;
  const std::size_t n = cfg.dim();
  LatticePoint mid(n);
  for (std::size_t i = 0; i < cfg.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.size(); ++j) {
      bool even = true;
      for (std::size_t k = 0; k < n && even; ++k) {
        const auto s = cfg[i][k] + cfg[j][k];
        even = s % 2 == 0;
        mid[k] = s / 2;
      }
      if (even && cfg.contains(mid)) out.push_back({cfg[i], cfg[j], mid});
    }
  return out;
}

namespace detail {

inline bool all_even(const LatticePoint& p) {
  return std::all_of(p.begin(), p.end(), [](std::int64_t x) { return x % 2 == 0; });
}

// Calls f(indices) for every k-subset of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Affinely independent V in cfg together with one b in cfg strictly inside
/// conv(V) such that conv(V) meets cfg in exactly V and b.
inline std::vector<AlmostEmptySimplex> almost_empty_simplices(const PointConfig& cfg, bool even_only = false) {
  std::vector<AlmostEmptySimplex> out;
  const std::size_t n = cfg.dim();
  for (std::size_t k = 2; k <= n + 1; ++k) {
    detail::for_each_subset(cfg.size(), k, [&](const std::vector<std::size_t>& idx) {
      std::vector<LatticePoint> verts;
      for (auto i : idx) verts.push_back(cfg[i]);
      if (even_only && !std::all_of(verts.begin(), verts.end(), detail::all_even)) return;
      if (!affinely_independent(verts)) return;
      const BarycentricSolver bary(verts);
      std::optional<std::size_t> interior;
      bool extra = false;
      for (std::size_t j = 0; j < cfg.size() && !extra; ++j) {
        if (std::find(idx.begin(), idx.end(), j) != idx.end()) continue;
        const auto lam = bary(cfg[j]);
        if (!lam || std::any_of(lam->begin(), lam->end(), [](const Rational& x) { return x < 0; })) continue;
        const bool relint = std::all_of(lam->begin(), lam->end(), [](const Rational& x) { return x > 0; });
        if (relint && !interior)
          interior = j;
        else
          extra = true;
      }
      if (extra || !interior) return;
      out.push_back({verts, cfg[*interior], *bary(cfg[*interior])});
    });
  }
  return out;
}

namespace detail {

inline std::set<LatticePoint> midpoints(const std::set<LatticePoint>& x) {
  std::set<LatticePoint> mids;
  for (auto i = x.begin(); i != x.end(); ++i)
    for (auto j = std::next(i); j != x.end(); ++j) {
      LatticePoint m(i->size());
      bool even = true;
      for (std::size_t k = 0; k < m.size() && even; ++k) {
        even = ((*i)[k] + (*j)[k]) % 2 == 0;
        m[k] = ((*i)[k] + (*j)[k]) / 2;
      }
      if (even) mids.insert(std::move(m));
    }
  return mids;
}

}  // namespace detail

/// The maximal V-mediated subset of conv(V) cap Z^n, graded-lex order.
inline std::vector<LatticePoint> mediated_set(const std::vector<LatticePoint>& v) {
  if (v.empty()) throw UsageError("mediated_set: empty vertex list");
  if (!affinely_independent(v)) throw PreconditionError("mediated_set: vertices are affinely dependent");
  const auto all = lattice_points(v);
  std::set<LatticePoint> x(all.begin(), all.end());
  const std::set<LatticePoint> verts(v.begin(), v.end());
  for (;;) {
    const auto mids = detail::midpoints(x);
    std::set<LatticePoint> next = verts;
    for (const auto& p : x)
      if (mids.count(p)) next.insert(p);
    if (next == x) break;
    x = std::move(next);
  }
  std::vector<LatticePoint> out(x.begin(), x.end());
  std::sort(out.begin(), out.end(), graded_lex_less);
  return out;
}

/// Lattice points of the smallest box containing cfg, graded-lex order.
inline PointConfig cubical_hull(const PointConfig& cfg) {
  if (cfg.empty()) throw UsageError("cubical_hull: empty configuration");
  const std::size_t n = cfg.dim();
  LatticePoint lo = cfg[0], hi = cfg[0];
  for (const auto& p : cfg)
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  std::vector<LatticePoint> pts;
  LatticePoint p = lo;
  for (;;) {
    pts.push_back(p);
    std::size_t i = 0;
    while (i < n && p[i] == hi[i]) p[i] = lo[i], ++i;
    if (i == n) break;
    ++p[i];
  }
  std::sort(pts.begin(), pts.end(), graded_lex_less);
  return PointConfig(n, std::move(pts));
}

/// All alpha in Z^n_{>=0} with |alpha| <= d, graded-lex order.
inline PointConfig delta_simplex(std::size_t n, std::int64_t d) {
  if (d < 0) throw UsageError("delta_simplex: negative degree");
  if (n == 0) throw UsageError("delta_simplex: dimension must be positive");
  std::vector<LatticePoint> pts;
  LatticePoint p(n, 0);
  // Odometer over [0,d]^n, keeping points of total degree <= d.
  for (;;) {
    if (std::accumulate(p.begin(), p.end(), std::int64_t{0}) <= d) pts.push_back(p);
    std::size_t i = 0;
    while (i < n && p[i] == d) p[i] = 0, ++i;
    if (i == n) break;
    ++p[i];
  }
  std::sort(pts.begin(), pts.end(), graded_lex_less);
  return PointConfig(n, std::move(pts));
}

/// Whether x - a lies in the cone given by `neg_c` for every a in cfg.
/// `neg_c` must be minimized.
inline bool in_translated_intersection(const LatticePoint& x, const PointConfig& cfg, const Cone& neg_c) {
  IntVector diff(x.size());
  for (const auto& a : cfg) {
    for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - a[i];
    if (!contains(neg_c, std::span<const Integer>(diff))) return false;
  }
  return true;
}

/// -C, minimized.
inline Cone negated_cone(const Cone& c) {
  const VRep v = c.v();
  std::vector<IntVector> rays;
  for (const auto& r : v.rays) rays.push_back(negated(r));
  return dd_convert(Cone::from_v(c.dim(), std::move(rays), v.lineality));
}

/// Checks that every standard basis vector lies in the interior of -C.
/// Throws PreconditionError naming the first failing vector.
inline void check_strict_orthant(const Cone& c) {
  const Cone neg_c = negated_cone(c);
  const std::string msg = "stabilization hypothesis fails: -C does not strictly contain the nonnegative orthant";
  if (!neg_c.is_pointed()) throw PreconditionError(msg + " (C is not pointed)");
  if (!neg_c.eqs().empty()) throw PreconditionError(msg + " (-C is not full-dimensional)");
  for (std::size_t i = 0; i < c.dim(); ++i)
    for (const auto& nu : neg_c.ineqs())
      if (nu[i] <= 0) throw PreconditionError(msg + " (basis vector e" + std::to_string(i + 1) + ")");
}

/// The finite set W = (Z^n_{>=0} minus K) union A, K = intersection of a - C.
inline std::vector<LatticePoint> complement_of_k(const PointConfig& cfg, const Cone& c) {
  check_strict_orthant(c);
  const Cone neg_c = negated_cone(c);
  const std::size_t n = cfg.dim();

  std::int64_t m = 1;
  for (const auto& a : cfg)
    for (auto x : a) m = std::max(m, x);
  // K + R^n_{>=0} is inside K, so once the outer shell {max x_i = m} is in K
  // every point outside the box is too.
  for (;;) {
    bool shell_in_k = true;
    LatticePoint p(n, 0);
    for (;;) {
      if (*std::max_element(p.begin(), p.end()) == m && !in_translated_intersection(p, cfg, neg_c)) {
        shell_in_k = false;
        break;
      }
      std::size_t i = 0;
      while (i < n && p[i] == m) p[i] = 0, ++i;
      if (i == n) break;
      ++p[i];
    }
    if (shell_in_k) break;
    m *= 2;
  }

  std::set<LatticePoint, decltype(&graded_lex_less)> w(&graded_lex_less);
  LatticePoint p(n, 0);
  for (;;) {
    if (!in_translated_intersection(p, cfg, neg_c)) w.insert(p);
    std::size_t i = 0;
    while (i < n && p[i] == m) p[i] = 0, ++i;
    if (i == n) break;
    ++p[i];
  }
  for (const auto& a : cfg) w.insert(a);
  return {w.begin(), w.end()};
}

/// {2b - a : a, b in W} cap Z^n_{>=0} with W = (Z^n_{>=0} minus K) union A.
inline PointConfig a_hat(const PointConfig& cfg, const Cone& c) {
  if (cfg.empty()) throw UsageError("a_hat: empty configuration");
  if (c.dim() != cfg.dim()) throw UsageError("a_hat: cone dimension does not match the configuration");
  const auto w = complement_of_k(cfg, c);
  std::set<LatticePoint, decltype(&graded_lex_less)> out(&graded_lex_less);
  const std::size_t n = cfg.dim();
  for (const auto& b : w)
    for (const auto& a : w) {
      LatticePoint q(n);
      bool nonneg = true;
      for (std::size_t i = 0; i < n && nonneg; ++i) {
        q[i] = 2 * b[i] - a[i];
        nonneg = q[i] >= 0;
      }
      if (nonneg) out.insert(std::move(q));
    }
  return PointConfig(n, {out.begin(), out.end()});
}

}  // namespace tropmom
