#pragma once

// Cones of (generalized) convex and midpoint-convex functions on a finite
// point configuration. A function h : A -> R is a vector in R^A, coordinates
// in the order of the configuration.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "tropmom/lattice.hpp"
#include "tropmom/polyhedra.hpp"

namespace tropmom {

struct FunctionalCone {
  PointConfig labels;
  Cone cone;
};

enum class ConvexityKind { K, M };

struct GeneralizedConvexityCone {
  ConvexityKind kind = ConvexityKind::K;
  Cone partial_order;  // C
  FunctionalCone functions;

  const PointConfig& support() const { return functions.labels; }
  const Cone& cone() const { return functions.cone; }
};

/// The pointed trivial order {0} in R^n.
inline Cone trivial_order(std::size_t n) { return Cone::origin(n); }

/// R^n_{<=0}.
inline Cone nonpositive_orthant(std::size_t n) {
  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < n; ++i) rays.push_back(unit_vector(n, i, -1));
  return dd_convert(Cone::from_v(n, std::move(rays)));
}

/// Normal of sum lambda_i h(v_i) >= h(b), cleared to a primitive integer vector.
inline IntVector simplex_normal(const PointConfig& cfg, const AlmostEmptySimplex& t) {
  RatVector v(cfg.size(), Rational(0));
  for (std::size_t i = 0; i < t.vertices.size(); ++i) v[*cfg.index_of(t.vertices[i])] += t.lambdas[i];
  v[*cfg.index_of(t.interior_point)] -= 1;
  return primitive(std::span<const Rational>(v));
}

/// K_{A,C}: the tropical conical hull of the image of C^dual under u -> (<a,u>)_a.
inline GeneralizedConvexityCone cone_K(const PointConfig& a, const Cone& c) {
  if (c.dim() != a.dim()) throw UsageError("cone_K: order cone dimension does not match the configuration");
  const Cone cd = dual(c);
  auto image = [&](const std::vector<IntVector>& us) {
    std::vector<IntVector> out;
    for (const auto& u : us) {
      IntVector y;
      for (const auto& p : a) y.push_back(dot(to_integer(p), u));
      out.push_back(std::move(y));
    }
    return out;
  };
  const Cone y = Cone::from_v(a.size(), image(cd.rays()), image(cd.lineality()));
  return {ConvexityKind::K, dd_convert(c), {a, tropical_hull(y)}};
}

/// One convexity normal per almost-empty simplex; sorted, without duplicates.
inline std::vector<IntVector> cone_K_facets_via_simplices(const PointConfig& a, bool even_only = false) {
  std::set<IntVector> normals;
  for (const auto& t : almost_empty_simplices(a, even_only)) normals.insert(simplex_normal(a, t));
  return {normals.begin(), normals.end()};
}

/// Convex on all almost-empty even simplices.
inline GeneralizedConvexityCone cone_K_even(const PointConfig& a) {
  Cone h = dd_convert(Cone::from_h(a.size(), cone_K_facets_via_simplices(a, true)));
  return {ConvexityKind::K, Cone::full_space(a.dim()), {a, std::move(h)}};
}

/// e_{a1} + e_{a2} - 2 e_b for every midpoint triple.
inline std::vector<IntVector> midpoint_normals(const PointConfig& a) {
  std::vector<IntVector> out;
  for (const auto& t : midpoint_triples(a)) {
    IntVector v(a.size(), Integer(0));
    v[*a.index_of(t.a1)] += 1;
    v[*a.index_of(t.a2)] += 1;
    v[*a.index_of(t.b)] -= 2;
    out.push_back(std::move(v));
  }
  return out;
}

/// e_p - e_q for every ordered pair p != q with p - q in C. With `reduced`
/// and C pointed, only covering pairs are kept (pairs implied through an
/// intermediate point of the configuration are dropped).
inline std::vector<IntVector> monotone_normals(const PointConfig& a, const Cone& c, bool reduced = false) {
  const Cone cm = dd_convert(c);
  const std::size_t m = a.size();
  std::vector<std::vector<bool>> rel(m, std::vector<bool>(m, false));
  IntVector diff(a.dim());
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q) {
      if (p == q) continue;
      for (std::size_t i = 0; i < a.dim(); ++i) diff[i] = a[p][i] - a[q][i];
      rel[p][q] = contains(cm, std::span<const Integer>(diff));
    }
  const bool reduce = reduced && cm.is_pointed();
  std::vector<IntVector> out;
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q) {
      if (!rel[p][q]) continue;
      if (reduce) {
        bool implied = false;
        for (std::size_t r = 0; r < m && !implied; ++r) implied = r != p && r != q && rel[p][r] && rel[r][q];
        if (implied) continue;
      }
      IntVector v(m, Integer(0));
      v[p] = 1;
      v[q] = -1;
      out.push_back(std::move(v));
    }
  return out;
}

/// M_{A,C}. The H-representation is exactly the midpoint and monotone
/// inequalities; it is not minimized, so large supports stay cheap.
inline GeneralizedConvexityCone cone_M(const PointConfig& a, const Cone& c, bool reduced = false) {
  if (c.dim() != a.dim()) throw UsageError("cone_M: order cone dimension does not match the configuration");
  auto ineqs = midpoint_normals(a);
  auto mono = monotone_normals(a, c, reduced);
  ineqs.insert(ineqs.end(), mono.begin(), mono.end());
  return {ConvexityKind::M, c, {a, Cone::from_h(a.size(), std::move(ineqs))}};
}

/// Whether the midpoint inequality of t supports a facet of M_A. Points of A
/// on the segment [a1,a2] lacking a witness pair other than {a1,a2} are
/// deleted until nothing changes; t is a facet iff b gets deleted.
inline bool is_midpoint_facet(const PointConfig& a, const MidpointTriple& t) {
  const bool valid = a.contains(t.a1) && a.contains(t.a2) && a.contains(t.b) && t.a1 != t.a2 &&
                     [&] {
                       for (std::size_t i = 0; i < t.b.size(); ++i)
                         if (t.a1[i] + t.a2[i] != 2 * t.b[i]) return false;
                       return true;
                     }();
  if (!valid) throw UsageError("is_midpoint_facet: not a midpoint triple of the configuration");

  // Exact segment parametrization: p = a1 + s (a2 - a1) with s in [0,1].
  const std::size_t n = a.dim();
  std::set<LatticePoint> s;
  for (const auto& p : a) {
    std::optional<Rational> param;
    bool on = true;
    for (std::size_t i = 0; i < n && on; ++i) {
      const auto d = t.a2[i] - t.a1[i];
      const auto off = p[i] - t.a1[i];
      if (d == 0) {
        on = off == 0;
        continue;
      }
      const Rational si(off, d);
      if (param && *param != si) on = false;
      param = si;
    }
    if (on && param && *param >= 0 && *param <= 1) s.insert(p);
  }

  const std::set<LatticePoint> ends{t.a1, t.a2};
  for (bool changed = true; changed;) {
    changed = false;
    for (auto it = s.begin(); it != s.end();) {
      const LatticePoint& p = *it;
      bool witnessed = ends.count(p) > 0;
      for (auto i = s.begin(); i != s.end() && !witnessed; ++i)
        for (auto j = std::next(i); j != s.end() && !witnessed; ++j) {
          if (std::set<LatticePoint>{*i, *j} == ends) continue;
          bool mid = true;
          for (std::size_t k = 0; k < n && mid; ++k) mid = (*i)[k] + (*j)[k] == 2 * p[k];
          witnessed = mid;
        }
      if (witnessed) {
        ++it;
      } else {
        it = s.erase(it);
        changed = true;
      }
    }
  }
  return s.count(t.b) == 0;
}

/// Whether K_A equals the projection of M_E for every E containing the
/// lattice points of conv(A): each almost-empty simplex's interior point
/// must lie in the maximal mediated set of its vertices.
inline bool projection_equality_KM(const PointConfig& a) {
  for (const auto& t : almost_empty_simplices(a)) {
    const auto med = mediated_set(t.vertices);
    if (std::find(med.begin(), med.end(), t.interior_point) == med.end()) return false;
  }
  return true;
}

/// Pointwise max of affine functions <u,x> + c, evaluated at x; used to
/// extend a member of K_{A,C} beyond A.
inline Rational max_affine(const std::vector<std::pair<RatVector, Rational>>& pieces, const LatticePoint& x) {
  if (pieces.empty()) throw UsageError("max_affine: no pieces");
  std::optional<Rational> best;
  const RatVector xr = to_rational(x);
  for (const auto& [u, c] : pieces) {
    Rational v = dot(std::span<const Rational>(u), std::span<const Rational>(xr)) + c;
    if (!best || v > *best) best = v;
  }
  return *best;
}

}  // namespace tropmom
