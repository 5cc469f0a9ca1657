#pragma once

// Tropicalized moment cones over sets cut out by pure binomial inequalities,
// and the rendering of facet normals as binomial moment inequalities.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tropmom/funcones.hpp"

namespace tropmom {

enum class SetKind { orthant, cube, toric_cube, binomials, full_space };

inline const char* to_string(SetKind k) {
  switch (k) {
    case SetKind::orthant: return "orthant";
    case SetKind::cube: return "cube";
    case SetKind::toric_cube: return "toric_cube";
    case SetKind::binomials: return "binomials";
    case SetKind::full_space: return "full_space";
  }
  return "?";
}

/// x^{plus} - x^{minus} >= 0.
struct BinomialGenerator {
  LatticePoint plus;
  LatticePoint minus;
};

/// A subset of R^n_{>=0} (or R^n for full_space) given by pure binomial
/// inequalities or by one of the presets.
struct SemialgSpec {
  std::size_t n = 0;
  SetKind kind = SetKind::orthant;
  std::vector<BinomialGenerator> generators;
  std::vector<std::vector<std::int64_t>> q;  // d x n, toric_cube only

  static SemialgSpec orthant(std::size_t n) { return {n, SetKind::orthant, {}, {}}; }
  static SemialgSpec full_space(std::size_t n) { return {n, SetKind::full_space, {}, {}}; }

  static SemialgSpec cube(std::size_t n) {
    SemialgSpec s{n, SetKind::cube, {}, {}};
    for (std::size_t i = 0; i < n; ++i) {
      LatticePoint e(n, 0);
      e[i] = 1;
      s.generators.push_back({LatticePoint(n, 0), e});
    }
    return s;
  }

  static SemialgSpec binomials(std::size_t n, std::vector<BinomialGenerator> gens) {
    for (const auto& g : gens) {
      if (g.plus.size() != n || g.minus.size() != n) throw UsageError("binomial generator has wrong dimension");
      for (std::size_t i = 0; i < n; ++i)
        if (g.plus[i] < 0 || g.minus[i] < 0) throw UsageError("binomial exponents must be nonnegative");
      if (g.plus == g.minus) throw UsageError("binomial generator with equal exponents is trivial");
    }
    return {n, SetKind::binomials, std::move(gens), {}};
  }

  /// Columns of q are the exponent vectors of the monomial parametrization.
  static SemialgSpec toric_cube(std::vector<std::vector<std::int64_t>> q) {
    if (q.empty() || q.front().empty()) throw UsageError("toric_cube: empty Q");
    const std::size_t n = q.front().size();
    for (const auto& row : q) {
      if (row.size() != n) throw UsageError("toric_cube: Q is not rectangular");
      for (auto x : row)
        if (x < 0) throw UsageError("toric_cube: Q must be nonnegative");
    }
    for (std::size_t j = 0; j < n; ++j) {
      bool nonzero = false;
      for (const auto& row : q) nonzero = nonzero || row[j] != 0;
      if (!nonzero) throw UsageError("toric_cube: Q has a zero column");
    }
    return {n, SetKind::toric_cube, {}, std::move(q)};
  }

  /// v_i = plus_i - minus_i.
  std::vector<IntVector> generator_differences() const {
    std::vector<IntVector> out;
    for (const auto& g : generators) {
      IntVector v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = g.plus[i] - g.minus[i];
      out.push_back(std::move(v));
    }
    return out;
  }

  LatticePoint apply_q(const LatticePoint& a) const {
    LatticePoint out;
    for (const auto& row : q) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < n; ++j) s += row[j] * a[j];
      out.push_back(s);
    }
    return out;
  }
};

struct TropOfSet {
  Cone cone;
  std::vector<std::string> warnings;
};

/// trop(S). For binomial kinds this is {y : <a_i - b_i, y> >= 0}; for a toric
/// cube it is Q^T(R^d_{<=0}).
inline TropOfSet trop_of_set(const SemialgSpec& s) {
  TropOfSet out;
  if (s.kind == SetKind::toric_cube) {
    std::vector<IntVector> rays;
    for (const auto& row : s.q) {
      IntVector r;
      for (auto x : row) r.emplace_back(-x);
      rays.push_back(std::move(r));
    }
    out.cone = dd_convert(Cone::from_v(s.n, std::move(rays)));
  } else {
    out.cone = dd_convert(Cone::from_h(s.n, s.generator_differences()));
  }
  if (!out.cone.is_full_dimensional())
    out.warnings.push_back("trop(S) is not full-dimensional; the regular-support hypothesis fails and trop(S) may be "
                           "strictly smaller than the cone computed");
  return out;
}

/// C = trop(S)^dual. For a toric cube this is {x : Qx <= 0}.
inline Cone order_cone(const SemialgSpec& s) { return dual(trop_of_set(s).cone); }

namespace detail {

// All lattice points of [-m, m]^n.
inline std::vector<LatticePoint> box_points(std::size_t n, std::int64_t m) {
  std::vector<LatticePoint> pts;
  LatticePoint p(n, -m);
  for (;;) {
    pts.push_back(p);
    std::size_t i = 0;
    while (i < n && p[i] == m) p[i] = -m, ++i;
    if (i == n) break;
    ++p[i];
  }
  return pts;
}

}  // namespace detail

/// Whether the v_i generate the semigroup C cap Z^n, C = cone(v_i).
/// Brute force, so limited to n <= 3.
inline bool semigroup_generation_check(const SemialgSpec& s) {
  if (s.kind == SetKind::full_space || s.kind == SetKind::orthant) return true;
  if (s.n > 3)
    throw PreconditionError("semigroup generation check is only implemented for n <= 3 (got n = " +
                            std::to_string(s.n) + "); pass --assume-semigroup-generated to skip it");
  std::vector<IntVector> gens = s.kind == SetKind::toric_cube ? order_cone(s).rays() : s.generator_differences();
  const Cone c = dd_convert(Cone::from_v(s.n, gens));
  if (!c.is_pointed()) {
    // No Hilbert basis to speak of; instead every lattice point of C in a
    // small box must be reachable by adding generators inside a larger box.
    std::int64_t m = 0;
    for (const auto& g : gens)
      for (const auto& x : g) m = std::max(m, to_int64(abs(x)));
    const std::int64_t bound = static_cast<std::int64_t>(s.n + 1) * std::max<std::int64_t>(m, 1) * 2;
    std::set<LatticePoint> seen{LatticePoint(s.n, 0)};
    std::vector<LatticePoint> frontier{LatticePoint(s.n, 0)};
    while (!frontier.empty()) {
      std::vector<LatticePoint> next;
      for (const auto& p : frontier)
        for (const auto& g : gens) {
          LatticePoint q = p;
          bool in_box = true;
          for (std::size_t i = 0; i < s.n; ++i) {
            q[i] += to_int64(g[i]);
            in_box = in_box && std::abs(q[i]) <= bound;
          }
          if (in_box && seen.insert(q).second) next.push_back(q);
        }
      frontier = std::move(next);
    }
    for (const auto& p : detail::box_points(s.n, std::max<std::int64_t>(m, 1)))
      if (contains(c, std::span<const Integer>(to_integer(p))) && !seen.count(p)) return false;
    return true;
  }

  // Pointed: every Hilbert basis element lies in the zonotope sum [0,1] v_i.
  std::int64_t m = 0;
  for (const auto& g : gens) {
    std::int64_t mx = 0;
    for (const auto& x : g) mx = std::max(mx, to_int64(abs(x)));
    m += mx;
  }
  std::vector<LatticePoint> members;
  for (auto& p : detail::box_points(s.n, m))
    if (std::any_of(p.begin(), p.end(), [](std::int64_t x) { return x != 0; }) &&
        contains(c, std::span<const Integer>(to_integer(p))))
      members.push_back(std::move(p));
  const std::set<LatticePoint> member_set(members.begin(), members.end());

  std::map<LatticePoint, bool> memo;
  std::function<bool(const LatticePoint&)> representable = [&](const LatticePoint& p) -> bool {
    if (std::all_of(p.begin(), p.end(), [](std::int64_t x) { return x == 0; })) return true;
    if (auto it = memo.find(p); it != memo.end()) return it->second;
    bool ok = false;
    for (const auto& g : gens) {
      LatticePoint q = p;
      for (std::size_t i = 0; i < s.n; ++i) q[i] -= to_int64(g[i]);
      const bool zero = std::all_of(q.begin(), q.end(), [](std::int64_t x) { return x == 0; });
      if ((zero || contains(c, std::span<const Integer>(to_integer(q)))) && representable(q)) {
        ok = true;
        break;
      }
    }
    memo[p] = ok;
    return ok;
  };

  for (const auto& p : members) {
    bool reducible = false;
    for (const auto& y : members) {
      LatticePoint z(s.n);
      for (std::size_t i = 0; i < s.n; ++i) z[i] = p[i] - y[i];
      if (y != p && member_set.count(z)) {
        reducible = true;
        break;
      }
    }
    if (!reducible && !representable(p)) return false;
  }
  return true;
}

/// A binomial moment inequality prod m_a^{p_a} >= prod m_b^{q_b}, factors in
/// support order.
struct BinomialIneq {
  std::vector<std::pair<LatticePoint, Integer>> plus;
  std::vector<std::pair<LatticePoint, Integer>> minus;

  std::string str() const {
    auto side = [](const std::vector<std::pair<LatticePoint, Integer>>& fs) {
      if (fs.empty()) return std::string("1");
      std::ostringstream os;
      for (std::size_t i = 0; i < fs.size(); ++i) {
        if (i) os << '*';
        os << 'm' << format_point(fs[i].first);
        if (fs[i].second != 1) os << '^' << fs[i].second;
      }
      return os.str();
    };
    return side(plus) + " >= " + side(minus);
  }
};

/// Positive coefficients become the left-hand exponents, negated negative
/// coefficients the right-hand ones. The normal is made primitive first.
inline BinomialIneq render_binomial(const IntVector& normal, const PointConfig& labels) {
  if (normal.size() != labels.size()) throw UsageError("render_binomial: normal length does not match the support");
  if (is_zero(normal)) throw UsageError("render_binomial: zero normal");
  const IntVector v = primitive(normal);
  BinomialIneq b;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] > 0) b.plus.emplace_back(labels[i], v[i]);
    if (v[i] < 0) b.minus.emplace_back(labels[i], -v[i]);
  }
  return b;
}

/// The single inequality cutting out the moment cone of an almost-empty
/// simplex over the orthant (weighted AM/GM).
inline BinomialIneq amgm_moment_cone(const AlmostEmptySimplex& t) {
  std::vector<LatticePoint> pts = t.vertices;
  pts.push_back(t.interior_point);
  const PointConfig cfg(pts.front().size(), pts);
  return render_binomial(simplex_normal(cfg, t), cfg);
}

/// trop(M_A(S)).
inline GeneralizedConvexityCone trop_moment_cone(const PointConfig& a, const SemialgSpec& s) {
  if (a.dim() != s.n) throw UsageError("support dimension does not match the set");
  switch (s.kind) {
    case SetKind::full_space: return cone_K_even(a);
    case SetKind::toric_cube: {
      std::vector<LatticePoint> image;
      std::map<LatticePoint, LatticePoint> seen;
      for (const auto& p : a) {
        auto q = s.apply_q(p);
        if (auto [it, fresh] = seen.emplace(q, p); !fresh)
          throw PreconditionError("toric_cube: Q maps " + format_point(it->second) + " and " + format_point(p) +
                                  " to the same point " + format_point(q));
        image.push_back(std::move(q));
      }
      const PointConfig pulled(s.q.size(), std::move(image));
      auto k = cone_K(pulled, nonpositive_orthant(s.q.size()));
      return {ConvexityKind::K, order_cone(s), {a, std::move(k.functions.cone)}};
    }
    default: return cone_K(a, order_cone(s));
  }
}

}  // namespace tropmom
