#pragma once

// Coordinate projection of an H-represented cone without enumerating its
// extreme rays.
//
// For P = {x : Gx >= 0, Ex = 0} in R^N and coordinates A, the dual of the
// image is Q = {w in R^A : (w, 0) in P^dual}. Q is grown from the inside by
// LP separation: each ray r of the current outer approximation cone(Y)^dual
// is tested by minimizing <r, y> over normalized points y of Q. A negative
// optimum yields a new generator of Q; when every ray survives, cone(Y)^dual
// is exactly the projection. Each LP optimum is a vertex of a fixed
// polytope, so the loop terminates.

#include <algorithm>
#include <set>
#include <vector>

#include "tropmom/lp.hpp"
#include "tropmom/polyhedra.hpp"

namespace tropmom {

inline Cone project_hrep(std::size_t dim, const std::vector<IntVector>& ineqs, const std::vector<IntVector>& eqs,
                         const std::vector<std::size_t>& coords) {
  if (coords.empty()) throw UsageError("project: empty coordinate list");
  std::vector<bool> kept(dim, false);
  for (auto c : coords) {
    if (c >= dim) throw UsageError("project: coordinate " + std::to_string(c) + " out of range");
    if (kept[c]) throw UsageError("project: repeated coordinate " + std::to_string(c));
    kept[c] = true;
  }
  const std::size_t k = coords.size();

  std::vector<IntVector> cols;
  for (const auto& g : ineqs)
    if (!is_zero(g)) cols.push_back(g);
  for (const auto& e : eqs)
    if (!is_zero(e)) {
      cols.push_back(e);
      cols.push_back(negated(e));
    }

  // Rows: one per eliminated coordinate, plus the normalization sum = 1.
  std::vector<RatVector> rows;
  for (std::size_t i = 0; i < dim; ++i) {
    if (kept[i]) continue;
    RatVector row(cols.size());
    bool nonzero = false;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      row[j] = cols[j][i];
      nonzero = nonzero || cols[j][i] != 0;
    }
    if (nonzero) rows.push_back(std::move(row));
  }
  rows.emplace_back(cols.size(), Rational(1));
  RatVector rhs(rows.size(), Rational(0));
  rhs.back() = 1;

  if (cols.empty()) return dd_convert(Cone::full_space(k));
  const ExactLP lp(rows, rhs);
  if (!lp.feasible()) return dd_convert(Cone::full_space(k));

  std::vector<IntVector> restricted;
  for (const auto& g : cols) {
    IntVector r;
    for (auto c : coords) r.push_back(g[c]);
    restricted.push_back(std::move(r));
  }

  std::set<IntVector> y;
  for (;;) {
    const Cone outer = dd_convert(Cone::from_h(k, {y.begin(), y.end()}));
    std::vector<IntVector> candidates = outer.rays();
    for (const auto& l : outer.lineality()) {
      candidates.push_back(l);
      candidates.push_back(negated(l));
    }
    bool grew = false;
    for (const auto& r : candidates) {
      RatVector cost(cols.size());
      for (std::size_t j = 0; j < cols.size(); ++j) cost[j] = dot(restricted[j], r);
      const auto sol = lp.minimize(cost);
      if (sol.value >= 0) continue;
      RatVector w(k, Rational(0));
      for (std::size_t j = 0; j < cols.size(); ++j)
        if (sol.x[j] != 0)
          for (std::size_t i = 0; i < k; ++i) w[i] += sol.x[j] * restricted[j][i];
      grew = y.insert(primitive(std::span<const Rational>(w))).second || grew;
    }
    if (!grew) return outer;
  }
}

inline Cone project_hrep(const Cone& c, const std::vector<std::size_t>& coords) {
  const HRep h = c.h();
  return project_hrep(c.dim(), h.ineqs, h.eqs, coords);
}

}  // namespace tropmom
