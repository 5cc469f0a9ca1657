#pragma once

// Tropicalized pseudo-moment cones: projections onto R^A of cones of
// midpoint-convex, C-monotone functions on a larger support E.

#include <algorithm>
#include <cstdlib>
#include <future>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "tropmom/moments.hpp"
#include "tropmom/projection.hpp"

namespace tropmom {

struct PseudoOptions {
  /// Largest admissible |E| before a ResourceError.
  std::size_t max_extension_points = 40;
};

struct PseudoMomentTrop {
  PointConfig support;
  SemialgSpec spec;
  std::optional<std::int64_t> degree;
  bool stabilized = false;
  FunctionalCone cone;
  PointConfig extension_support;
  std::vector<std::string> warnings;
};

/// Worker count for internal parallelism: TROPMOM_THREADS if set and
/// positive, else the hardware concurrency.
inline unsigned thread_budget() {
  if (const char* env = std::getenv("TROPMOM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

namespace detail {

inline Cone pseudo_order_cone(const SemialgSpec& s) {
  switch (s.kind) {
    case SetKind::orthant:
    case SetKind::cube:
    case SetKind::binomials: return order_cone(s);
    case SetKind::toric_cube:
      throw PreconditionError("pseudo-moment cones are not supported for toric_cube sets; describe the set by "
                              "binomial generators instead");
    case SetKind::full_space: break;
  }
  throw PreconditionError("pseudo-moment cones for full_space use the sums-of-squares route, not F(S)_d");
}

inline void guard(const PointConfig& e, const PseudoOptions& opt, const std::string& what) {
  if (e.size() > opt.max_extension_points)
    throw ResourceError(what + " has " + std::to_string(e.size()) + " points, above the limit of " +
                        std::to_string(opt.max_extension_points) + " (raise --max-extension-points)");
}

inline std::vector<std::size_t> support_indices(const PointConfig& e, const PointConfig& a) {
  std::vector<std::size_t> idx;
  for (const auto& p : a) {
    auto i = e.index_of(p);
    if (!i) throw PreconditionError("support point " + format_point(p) + " is not in the extension support");
    idx.push_back(*i);
  }
  return idx;
}

// Projection of M_{E,C} onto the coordinates of A.
inline Cone project_midpoint_cone(const PointConfig& e, const Cone& c, const PointConfig& a) {
  const auto m = cone_M(e, c, /*reduced=*/true);
  return project_hrep(m.cone(), support_indices(e, a));
}

}  // namespace detail

/// F(S)_d: midpoint-convex and C-monotone functions on the degree-d simplex.
inline GeneralizedConvexityCone f_s_d(const SemialgSpec& spec, std::int64_t d) {
  return cone_M(delta_simplex(spec.n, d), detail::pseudo_order_cone(spec));
}

/// Projection of F(S)_d onto R^A.
inline PseudoMomentTrop trop_pseudomoment(const PointConfig& a, const SemialgSpec& spec, std::int64_t d,
                                          const PseudoOptions& opt = {}) {
  if (a.dim() != spec.n) throw UsageError("support dimension does not match the set");
  for (const auto& p : a)
    if (std::accumulate(p.begin(), p.end(), std::int64_t{0}) > d)
      throw PreconditionError("degree " + std::to_string(d) + " is smaller than the total degree of support point " +
                              format_point(p));
  const Cone c = detail::pseudo_order_cone(spec);
  PointConfig e = delta_simplex(spec.n, d);
  detail::guard(e, opt, "the degree-" + std::to_string(d) + " simplex");
  Cone proj = detail::project_midpoint_cone(e, c, a);
  return {a, spec, d, false, {a, std::move(proj)}, std::move(e), {}};
}

/// Stable cube route: E is the cubical hull, C the nonpositive orthant.
inline PseudoMomentTrop trop_pseudomoment_cube_stable(const PointConfig& a, const PseudoOptions& opt = {}) {
  PointConfig e = cubical_hull(a);
  detail::guard(e, opt, "the cubical hull");
  Cone proj = detail::project_midpoint_cone(e, nonpositive_orthant(a.dim()), a);
  return {a, SemialgSpec::cube(a.dim()), std::nullopt, true, {a, std::move(proj)}, std::move(e), {}};
}

/// Stable orthant route: E = conv(A) cap Z^n with C = {0}. Midpoint-convex
/// functions on a lattice-convex E extend to any larger support, so this is
/// the projection of F(S)_d for every d >= max |a|.
inline PseudoMomentTrop trop_pseudomoment_orthant_stable(const PointConfig& a, const PseudoOptions& opt = {}) {
  PointConfig e(a.dim(), lattice_points(a.points()));
  detail::guard(e, opt, "conv(A) cap Z^n");
  Cone proj = detail::project_midpoint_cone(e, trivial_order(a.dim()), a);
  return {a, SemialgSpec::orthant(a.dim()), std::nullopt, true, {a, std::move(proj)}, std::move(e), {}};
}

/// Stable route for binomial sets whose -C strictly contains the orthant:
/// E = A-hat.
inline PseudoMomentTrop trop_pseudomoment_stable(const PointConfig& a, const SemialgSpec& spec,
                                                 const PseudoOptions& opt = {}) {
  if (a.dim() != spec.n) throw UsageError("support dimension does not match the set");
  const Cone c = detail::pseudo_order_cone(spec);
  PointConfig e = a_hat(a, c);
  detail::guard(e, opt, "A-hat");
  Cone proj = detail::project_midpoint_cone(e, c, a);
  return {a, spec, std::nullopt, true, {a, std::move(proj)}, std::move(e), {}};
}

/// trop of the dual of the SOS cone on A: even midpoint inequalities on the
/// lattice points of conv(A).
inline PseudoMomentTrop sigma_dual_trop(const PointConfig& a, const PseudoOptions& opt = {}) {
  PointConfig e(a.dim(), lattice_points(a.points()));
  detail::guard(e, opt, "conv(A) cap Z^n");
  std::vector<IntVector> ineqs;
  for (const auto& t : midpoint_triples(e)) {
    if (!detail::all_even(t.a1) || !detail::all_even(t.a2)) continue;
    IntVector v(e.size(), Integer(0));
    v[*e.index_of(t.a1)] += 1;
    v[*e.index_of(t.a2)] += 1;
    v[*e.index_of(t.b)] -= 2;
    ineqs.push_back(std::move(v));
  }
  Cone proj = project_hrep(e.size(), ineqs, {}, detail::support_indices(e, a));
  return {a, SemialgSpec::full_space(a.dim()), std::nullopt, true, {a, std::move(proj)}, std::move(e), {}};
}

/// h on the box [lo, hi], extended to Z^n by clamping each coordinate.
class BoxFunction {
 public:
  BoxFunction(LatticePoint lo, LatticePoint hi, std::map<LatticePoint, Rational> values)
      : lo_(std::move(lo)), hi_(std::move(hi)), values_(std::move(values)) {
    if (lo_.size() != hi_.size()) throw UsageError("BoxFunction: corner dimensions differ");
    for (std::size_t i = 0; i < lo_.size(); ++i)
      if (lo_[i] > hi_[i]) throw UsageError("BoxFunction: empty box");
  }

  const LatticePoint& lo() const { return lo_; }
  const LatticePoint& hi() const { return hi_; }

  LatticePoint clamp(const LatticePoint& alpha) const {
    if (alpha.size() != lo_.size()) throw UsageError("clamp_extension: point has wrong dimension");
    LatticePoint p(alpha.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::clamp(alpha[i], lo_[i], hi_[i]);
    return p;
  }

  const Rational& at(const LatticePoint& p) const {
    auto it = values_.find(p);
    if (it == values_.end()) throw UsageError("BoxFunction: no value at " + format_point(p));
    return it->second;
  }

 private:
  LatticePoint lo_, hi_;
  std::map<LatticePoint, Rational> values_;
};

/// h(phi(alpha)) with phi the coordinate clamp into the box.
inline Rational clamp_extension(const BoxFunction& h, const LatticePoint& alpha) { return h.at(h.clamp(alpha)); }

/// Closed-form stable cone for the kind of `spec`.
inline PseudoMomentTrop stable_pseudomoment(const PointConfig& a, const SemialgSpec& spec,
                                            const PseudoOptions& opt = {}) {
  switch (spec.kind) {
    case SetKind::cube: return trop_pseudomoment_cube_stable(a, opt);
    case SetKind::orthant: return trop_pseudomoment_orthant_stable(a, opt);
    case SetKind::binomials: return trop_pseudomoment_stable(a, spec, opt);
    case SetKind::full_space: return sigma_dual_trop(a, opt);
    case SetKind::toric_cube: break;
  }
  detail::pseudo_order_cone(spec);  // throws
  throw PreconditionError("no stable route");
}

/// Degree from which Delta_d contains the extension support of the stable
/// route, so that the degree-d cone provably equals the stable one.
inline std::optional<std::int64_t> guaranteed_stable_degree(const PseudoMomentTrop& stable) {
  if (stable.spec.kind == SetKind::full_space) return std::nullopt;
  return stable.extension_support.max_degree();
}

struct ScanReport {
  std::int64_t d_min = 0;
  std::vector<std::pair<std::int64_t, Cone>> cones;
  std::optional<std::int64_t> stabilized_at;
  std::optional<bool> matches_closed_form;
};

/// Computes the projections for d = d_min..d_max. stabilized_at is the first
/// d whose cone equals every later cone in the range.
inline ScanReport stabilization_scan(const PointConfig& a, const SemialgSpec& spec, std::int64_t d_max,
                                     const PseudoOptions& opt = {}) {
  ScanReport rep;
  rep.d_min = std::max<std::int64_t>(a.max_degree(), 0);
  if (d_max < rep.d_min)
    throw PreconditionError("d_max " + std::to_string(d_max) + " is below the largest support degree " +
                            std::to_string(rep.d_min));
  detail::pseudo_order_cone(spec);
  detail::guard(delta_simplex(spec.n, d_max), opt, "the degree-" + std::to_string(d_max) + " simplex");

  const std::size_t count = static_cast<std::size_t>(d_max - rep.d_min + 1);
  std::vector<std::optional<Cone>> cones(count);
  const std::size_t workers = std::min<std::size_t>(thread_budget(), count);
  for (std::size_t start = 0; start < count; start += workers) {
    std::vector<std::future<Cone>> jobs;
    for (std::size_t i = start; i < std::min(count, start + workers); ++i) {
      const std::int64_t d = rep.d_min + static_cast<std::int64_t>(i);
      jobs.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                                [&, d] { return trop_pseudomoment(a, spec, d, opt).cone.cone; }));
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) cones[start + i] = jobs[i].get();
  }
  for (std::size_t i = 0; i < count; ++i) rep.cones.emplace_back(rep.d_min + static_cast<std::int64_t>(i), *cones[i]);

  for (std::size_t i = 0; i < count && !rep.stabilized_at; ++i) {
    bool constant = true;
    for (std::size_t j = i + 1; j < count && constant; ++j) constant = cone_equal(*cones[i], *cones[j]);
    if (constant) rep.stabilized_at = rep.cones[i].first;
  }
  try {
    const auto stable = stable_pseudomoment(a, spec, opt);
    rep.matches_closed_form = cone_equal(stable.cone.cone, rep.cones.back().second);
  } catch (const PreconditionError&) {
  } catch (const ResourceError&) {
  }
  return rep;
}

/// First degree whose projection equals the stable cone, searched while the
/// simplex stays within the size guard. Degree-d cones shrink as d grows and
/// always contain the stable cone, so the first match is exact.
inline std::optional<std::int64_t> find_stabilization_degree(const PseudoMomentTrop& stable,
                                                             const PseudoOptions& opt = {}) {
  const auto bound = guaranteed_stable_degree(stable);
  if (!bound) return std::nullopt;
  for (std::int64_t d = std::max<std::int64_t>(stable.support.max_degree(), 0); d <= *bound; ++d) {
    if (delta_simplex(stable.spec.n, d).size() > opt.max_extension_points) return std::nullopt;
    const auto cone = trop_pseudomoment(stable.support, stable.spec, d, opt).cone.cone;
    if (cone_equal(cone, stable.cone.cone)) return d;
  }
  return bound;
}

/// <normal, x> >= 0 on the whole cone.
inline bool valid_on(const IntVector& normal, const Cone& c) {
  for (const auto& r : c.rays())
    if (dot(normal, r) < 0) return false;
  for (const auto& l : c.lineality())
    if (dot(normal, l) != 0) return false;
  return true;
}

struct GapReport {
  std::vector<IntVector> normals;
  std::vector<BinomialIneq> inequalities;
  GeneralizedConvexityCone moment;
  PseudoMomentTrop pseudo;
};

/// Moment facets not valid on the stable pseudo-moment cone: binomial moment
/// inequalities that no sums-of-squares certificate of any degree proves.
inline GapReport gap_report(const PointConfig& a, const SemialgSpec& spec, const PseudoOptions& opt = {}) {
  GapReport rep{{}, {}, trop_moment_cone(a, spec), stable_pseudomoment(a, spec, opt)};
  for (const auto& nu : rep.moment.cone().ineqs())
    if (!valid_on(nu, rep.pseudo.cone.cone)) {
      rep.normals.push_back(nu);
      rep.inequalities.push_back(render_binomial(nu, a));
    }
  return rep;
}

}  // namespace tropmom
