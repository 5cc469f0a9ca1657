#pragma once

// Rational polyhedral cones through the origin. A Cone carries an
// H-representation (normals nu with <nu,x> >= 0, equation normals with
// <nu,x> = 0), a V-representation (rays plus a lineality basis), or both.
// Conversion is the double description method in fraction-free integer form.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tropmom/exact_linalg.hpp"

namespace tropmom {

struct HRep {
  std::vector<IntVector> ineqs;
  std::vector<IntVector> eqs;
};

struct VRep {
  std::vector<IntVector> rays;
  std::vector<IntVector> lineality;
};

namespace detail {

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bits) : words_((bits + 63) / 64, 0) {}

  void resize(std::size_t bits) { words_.resize((bits + 63) / 64, 0); }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

  Bitset operator&(const Bitset& o) const {
    Bitset r;
    r.words_.resize(std::max(words_.size(), o.words_.size()), 0);
    for (std::size_t i = 0; i < std::min(words_.size(), o.words_.size()); ++i) r.words_[i] = words_[i] & o.words_[i];
    return r;
  }

  /// True iff every bit of `sub` is also set here.
  bool contains(const Bitset& sub) const {
    for (std::size_t i = 0; i < sub.words_.size(); ++i) {
      const std::uint64_t mine = i < words_.size() ? words_[i] : 0;
      if (sub.words_[i] & ~mine) return false;
    }
    return true;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  void set_all_below(std::size_t bits) {
    resize(bits);
    for (std::size_t i = 0; i < bits; ++i) set(i);
  }

 private:
  std::vector<std::uint64_t> words_;
};

inline void check_dims(std::size_t dim, const std::vector<IntVector>& vs, const char* what) {
  for (const auto& v : vs)
    if (v.size() != dim)
      throw UsageError(std::string(what) + ": vector of length " + std::to_string(v.size()) + " in dimension " +
                       std::to_string(dim));
}

// (s*x - t*y), made primitive.
inline IntVector combine(const Integer& s, const IntVector& x, const Integer& t, const IntVector& y) {
  IntVector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = s * x[i] - t * y[i];
  return primitive(std::move(r));
}

inline bool lex_less(const IntVector& a, const IntVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace detail

/// Output of the double description method: a lineality basis and the
/// extreme rays modulo that basis. Neither list is canonicalized.
struct DDResult {
  std::vector<IntVector> lineality;
  std::vector<IntVector> rays;
};

/// Generators of {x in R^dim : <a,x> >= 0 for a in ineqs, <e,x> = 0 for e in eqs}.
/// Constraints are added one at a time; rays are combined only across
/// adjacent pairs (combinatorial test), so every intermediate ray list is
/// irredundant.
inline DDResult double_description(std::size_t dim, const std::vector<IntVector>& ineqs,
                                   const std::vector<IntVector>& eqs) {
  detail::check_dims(dim, ineqs, "double_description");
  detail::check_dims(dim, eqs, "double_description");

  std::vector<std::pair<const IntVector*, bool>> constraints;  // (normal, is_equation)
  for (const auto& e : eqs)
    if (!is_zero(e)) constraints.emplace_back(&e, true);
  for (const auto& a : ineqs)
    if (!is_zero(a)) constraints.emplace_back(&a, false);
  const std::size_t total = constraints.size();

  std::vector<IntVector> lin;
  for (std::size_t i = 0; i < dim; ++i) lin.push_back(unit_vector(dim, i));
  std::vector<IntVector> rays;
  std::vector<detail::Bitset> tight;

  for (std::size_t k = 0; k < total; ++k) {
    const IntVector& a = *constraints[k].first;
    const bool equation = constraints[k].second;

    std::optional<std::size_t> piv;
    Integer apiv;
    for (std::size_t i = 0; i < lin.size() && !piv; ++i) {
      Integer v = dot(a, lin[i]);
      if (v != 0) {
        piv = i;
        apiv = std::move(v);
      }
    }

    if (piv) {
      IntVector l = lin[*piv];
      if (apiv < 0) {
        l = negated(std::move(l));
        apiv = -apiv;
      }
      std::vector<IntVector> rest;
      for (std::size_t i = 0; i < lin.size(); ++i) {
        if (i == *piv) continue;
        const Integer ai = dot(a, lin[i]);
        rest.push_back(ai == 0 ? lin[i] : detail::combine(apiv, lin[i], ai, l));
      }
      lin = std::move(rest);
      for (std::size_t r = 0; r < rays.size(); ++r) {
        const Integer ar = dot(a, rays[r]);
        if (ar != 0) rays[r] = detail::combine(apiv, rays[r], ar, l);
        tight[r].resize(total);
        tight[r].set(k);
      }
      if (!equation) {
        detail::Bitset z(total);
        for (std::size_t j = 0; j < k; ++j) z.set(j);
        rays.push_back(std::move(l));
        tight.push_back(std::move(z));
      }
      continue;
    }

    std::vector<std::size_t> pos, zero, neg;
    std::vector<Integer> val(rays.size());
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(a, rays[r]);
      (val[r] > 0 ? pos : val[r] < 0 ? neg : zero).push_back(r);
    }
    if (neg.empty() && (!equation || pos.empty())) {
      for (auto r : zero) {
        tight[r].resize(total);
        tight[r].set(k);
      }
      continue;
    }

    const std::size_t need = dim >= lin.size() + 2 ? dim - lin.size() - 2 : 0;
    std::vector<IntVector> new_rays;
    std::vector<detail::Bitset> new_tight;
    for (auto p : pos) {
      for (auto q : neg) {
        detail::Bitset common = tight[p] & tight[q];
        if (common.count() < need) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
          if (r != p && r != q && tight[r].contains(common)) adjacent = false;
        if (!adjacent) continue;
        IntVector nr = detail::combine(val[p], rays[q], val[q], rays[p]);
        common.resize(total);
        common.set(k);
        new_rays.push_back(std::move(nr));
        new_tight.push_back(std::move(common));
      }
    }

    std::vector<IntVector> next;
    std::vector<detail::Bitset> next_tight;
    if (!equation)
      for (auto p : pos) {
        next.push_back(std::move(rays[p]));
        next_tight.push_back(std::move(tight[p]));
      }
    for (auto z : zero) {
      tight[z].resize(total);
      tight[z].set(k);
      next.push_back(std::move(rays[z]));
      next_tight.push_back(std::move(tight[z]));
    }
    for (std::size_t i = 0; i < new_rays.size(); ++i) {
      next.push_back(std::move(new_rays[i]));
      next_tight.push_back(std::move(new_tight[i]));
    }
    rays = std::move(next);
    tight = std::move(next_tight);
  }
  return {std::move(lin), std::move(rays)};
}

/// A basis of span(vs) in reduced echelon form with pivots chosen from the
/// rightmost columns, rows primitive and lex-sorted. Pivot entries are
/// positive. Returns (rows, pivot column of each row).
inline std::pair<std::vector<IntVector>, std::vector<std::size_t>> canonical_basis(std::size_t dim,
                                                                                  const std::vector<IntVector>& vs) {
  RatMatrix m(vs.size(), dim);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, dim - 1 - j) = vs[i][j];
  const auto [red, piv] = rref(std::move(m));
  std::vector<std::pair<IntVector, std::size_t>> rows;
  for (std::size_t k = 0; k < piv.size(); ++k) {
    RatVector v(dim);
    for (std::size_t j = 0; j < dim; ++j) v[j] = red(k, dim - 1 - j);
    rows.emplace_back(primitive(std::span<const Rational>(v)), dim - 1 - piv[k]);
  }
  std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) { return detail::lex_less(x.first, y.first); });
  std::pair<std::vector<IntVector>, std::vector<std::size_t>> out;
  for (auto& [v, p] : rows) {
    out.first.push_back(std::move(v));
    out.second.push_back(p);
  }
  return out;
}

/// Adds multiples of basis rows to v so that v vanishes on every pivot
/// column, then makes it primitive. The direction modulo span(basis) is kept.
inline IntVector reduce_modulo(IntVector v, const std::vector<IntVector>& basis, const std::vector<std::size_t>& pivots) {
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const std::size_t p = pivots[k];
    if (v[p] == 0) continue;
    v = detail::combine(basis[k][p], v, v[p], basis[k]);
  }
  return primitive(std::move(v));
}

namespace detail {

// Reduces generators modulo the subspace, drops zeros and duplicates, sorts.
inline std::vector<IntVector> canonical_generators(const std::vector<IntVector>& gens, const std::vector<IntVector>& basis,
                                                   const std::vector<std::size_t>& pivots) {
  std::vector<IntVector> out;
  for (const auto& g : gens) {
    IntVector r = reduce_modulo(g, basis, pivots);
    if (!is_zero(r)) out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

class Cone;
Cone dd_convert(const Cone& c);
Cone dual(const Cone& c);

class Cone {
 public:
  Cone() = default;

  static Cone from_h(std::size_t dim, std::vector<IntVector> ineqs, std::vector<IntVector> eqs = {}) {
    detail::check_dims(dim, ineqs, "Cone::from_h");
    detail::check_dims(dim, eqs, "Cone::from_h");
    Cone c;
    c.dim_ = dim;
    c.h_ = HRep{clean(std::move(ineqs)), clean(std::move(eqs))};
    return c;
  }

  static Cone from_v(std::size_t dim, std::vector<IntVector> rays, std::vector<IntVector> lineality = {}) {
    detail::check_dims(dim, rays, "Cone::from_v");
    detail::check_dims(dim, lineality, "Cone::from_v");
    Cone c;
    c.dim_ = dim;
    c.v_ = VRep{clean(std::move(rays)), clean(std::move(lineality))};
    return c;
  }

  static Cone full_space(std::size_t dim) { return from_h(dim, {}); }
  static Cone origin(std::size_t dim) { return from_v(dim, {}); }

  std::size_t dim() const { return dim_; }
  bool has_h() const { return h_.has_value(); }
  bool has_v() const { return v_.has_value(); }
  bool is_minimal() const { return minimal_; }

  /// Both accessors convert on demand when the representation is missing.
  HRep h() const { return h_ ? *h_ : dd_convert(*this).h(); }
  VRep v() const { return v_ ? *v_ : dd_convert(*this).v(); }

  const std::vector<IntVector>& ineqs() const& { return need_minimal().h_->ineqs; }
  const std::vector<IntVector>& eqs() const& { return need_minimal().h_->eqs; }
  const std::vector<IntVector>& rays() const& { return need_minimal().v_->rays; }
  const std::vector<IntVector>& lineality() const& { return need_minimal().v_->lineality; }
  // By value on temporaries, so range-for over dd_convert(c).rays() is safe.
  std::vector<IntVector> ineqs() && { return need_minimal().h_->ineqs; }
  std::vector<IntVector> eqs() && { return need_minimal().h_->eqs; }
  std::vector<IntVector> rays() && { return need_minimal().v_->rays; }
  std::vector<IntVector> lineality() && { return need_minimal().v_->lineality; }

  std::size_t lineality_dim() const { return lineality().size(); }
  bool is_pointed() const { return lineality().empty(); }
  bool is_full_dimensional() const { return eqs().empty(); }

  friend Cone dd_convert(const Cone& c);
  friend Cone dual(const Cone& c);

 private:
  static std::vector<IntVector> clean(std::vector<IntVector> vs) {
    std::vector<IntVector> out;
    for (auto& v : vs)
      if (!is_zero(v)) out.push_back(primitive(std::move(v)));
    return out;
  }

  const Cone& need_minimal() const {
    if (!minimal_) throw UsageError("Cone: accessor requires a minimized cone (call dd_convert first)");
    return *this;
  }

  std::size_t dim_ = 0;
  std::optional<HRep> h_;
  std::optional<VRep> v_;
  bool minimal_ = false;
};

/// Both representations, irredundant and canonical: subspace bases in
/// rightmost-pivot echelon form; rays and inequalities reduced modulo those
/// bases, primitive, and lex-sorted. Equal cones give identical output.
inline Cone dd_convert(const Cone& c) {
  if (c.minimal_) return c;
  const std::size_t n = c.dim_;
  std::vector<IntVector> v_rays, v_lin;
  if (c.v_) {
    // Dual DD yields irredundant facets; a second pass yields extreme rays.
    auto facets = double_description(n, c.v_->rays, c.v_->lineality);
    auto gens = double_description(n, facets.rays, facets.lineality);
    v_rays = std::move(gens.rays);
    v_lin = std::move(gens.lineality);
  } else {
    auto gens = double_description(n, c.h_->ineqs, c.h_->eqs);
    v_rays = std::move(gens.rays);
    v_lin = std::move(gens.lineality);
  }
  auto facets = double_description(n, v_rays, v_lin);

  Cone out;
  out.dim_ = n;
  out.minimal_ = true;
  auto [lin, lin_piv] = canonical_basis(n, v_lin);
  auto [eqs, eq_piv] = canonical_basis(n, facets.lineality);
  out.v_ = VRep{detail::canonical_generators(v_rays, lin, lin_piv), lin};
  out.h_ = HRep{detail::canonical_generators(facets.rays, eqs, eq_piv), eqs};
  return out;
}

inline Cone dual(const Cone& c) {
  const Cone m = dd_convert(c);
  // Swapping the representations preserves canonical form: both use the
  // same reduction convention.
  Cone d;
  d.dim_ = m.dim_;
  d.minimal_ = true;
  d.h_ = HRep{m.v_->rays, m.v_->lineality};
  d.v_ = VRep{m.h_->ineqs, m.h_->eqs};
  return d;
}

namespace detail {
inline void same_dim(const Cone& a, const Cone& b, const char* op) {
  if (a.dim() != b.dim())
    throw UsageError(std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                     std::to_string(b.dim()) + ")");
}
}  // namespace detail

inline Cone intersect(const Cone& a, const Cone& b) {
  detail::same_dim(a, b, "intersect");
  HRep ha = a.h(), hb = b.h();
  ha.ineqs.insert(ha.ineqs.end(), hb.ineqs.begin(), hb.ineqs.end());
  ha.eqs.insert(ha.eqs.end(), hb.eqs.begin(), hb.eqs.end());
  return dd_convert(Cone::from_h(a.dim(), std::move(ha.ineqs), std::move(ha.eqs)));
}

inline Cone minkowski_sum(const Cone& a, const Cone& b) {
  detail::same_dim(a, b, "minkowski_sum");
  VRep va = a.v(), vb = b.v();
  va.rays.insert(va.rays.end(), vb.rays.begin(), vb.rays.end());
  va.lineality.insert(va.lineality.end(), vb.lineality.begin(), vb.lineality.end());
  return dd_convert(Cone::from_v(a.dim(), std::move(va.rays), std::move(va.lineality)));
}

/// Image under the coordinate projection onto `coords` (0-based, in the
/// given order), computed from the V-representation.
inline Cone project(const Cone& c, const std::vector<std::size_t>& coords) {
  if (coords.empty()) throw UsageError("project: empty coordinate list");
  for (auto i : coords)
    if (i >= c.dim()) throw UsageError("project: coordinate " + std::to_string(i) + " out of range");
  const VRep v = c.v();
  auto pick = [&](const std::vector<IntVector>& vs) {
    std::vector<IntVector> out;
    for (const auto& x : vs) {
      IntVector y;
      for (auto i : coords) y.push_back(x[i]);
      out.push_back(std::move(y));
    }
    return out;
  };
  return dd_convert(Cone::from_v(coords.size(), pick(v.rays), pick(v.lineality)));
}

inline bool contains(const Cone& c, std::span<const Rational> p) {
  if (p.size() != c.dim()) throw UsageError("contains: dimension mismatch");
  const HRep h = c.h();
  for (const auto& a : h.ineqs)
    if (dot(std::span<const Integer>(a), p) < 0) return false;
  for (const auto& e : h.eqs)
    if (dot(std::span<const Integer>(e), p) != 0) return false;
  return true;
}

inline bool contains(const Cone& c, std::span<const Integer> p) {
  if (p.size() != c.dim()) throw UsageError("contains: dimension mismatch");
  const HRep h = c.h();
  for (const auto& a : h.ineqs)
    if (dot(std::span<const Integer>(a), p) < 0) return false;
  for (const auto& e : h.eqs)
    if (dot(std::span<const Integer>(e), p) != 0) return false;
  return true;
}

/// a is a subset of b.
inline bool is_subcone(const Cone& a, const Cone& b) {
  detail::same_dim(a, b, "is_subcone");
  const VRep va = a.v();
  const HRep hb = b.h();
  for (const auto& r : va.rays)
    for (const auto& n : hb.ineqs)
      if (dot(r, n) < 0) return false;
  for (const auto& l : va.lineality) {
    for (const auto& n : hb.ineqs)
      if (dot(l, n) != 0) return false;
  }
  for (const auto& e : hb.eqs) {
    for (const auto& r : va.rays)
      if (dot(r, e) != 0) return false;
    for (const auto& l : va.lineality)
      if (dot(l, e) != 0) return false;
  }
  return true;
}

inline bool cone_equal(const Cone& a, const Cone& b) {
  return a.dim() == b.dim() && is_subcone(a, b) && is_subcone(b, a);
}

/// tcone(Y) as the intersection over i of Y + V_i, V_i = {v : v_i <= v_j}.
inline Cone tropical_hull(const Cone& y) {
  const std::size_t n = y.dim();
  const VRep vy = y.v();
  IntVector ones(n, Integer(1));
  std::vector<IntVector> ineqs, eqs;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<IntVector> rays = vy.rays;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) rays.push_back(unit_vector(n, j));
    std::vector<IntVector> lin = vy.lineality;
    lin.push_back(ones);
    const Cone term = dd_convert(Cone::from_v(n, std::move(rays), std::move(lin)));
    ineqs.insert(ineqs.end(), term.ineqs().begin(), term.ineqs().end());
    eqs.insert(eqs.end(), term.eqs().begin(), term.eqs().end());
  }
  return dd_convert(Cone::from_h(n, std::move(ineqs), std::move(eqs)));
}

/// tcone(Y)^dual as the Minkowski sum over i of Y^dual cap U_i cap H, where
/// U_i = {x_i <= 0, x_j >= 0 otherwise} and H = {sum x = 0}.
inline Cone tropical_hull_dual(const Cone& y) {
  const std::size_t n = y.dim();
  const VRep vy = y.v();
  IntVector ones(n, Integer(1));
  std::vector<IntVector> rays, lin;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<IntVector> ineqs = vy.rays;
    for (std::size_t j = 0; j < n; ++j) ineqs.push_back(unit_vector(n, j, j == i ? -1 : 1));
    std::vector<IntVector> eqs = vy.lineality;
    eqs.push_back(ones);
    const Cone term = dd_convert(Cone::from_h(n, std::move(ineqs), std::move(eqs)));
    rays.insert(rays.end(), term.rays().begin(), term.rays().end());
    lin.insert(lin.end(), term.lineality().begin(), term.lineality().end());
  }
  return dd_convert(Cone::from_v(n, std::move(rays), std::move(lin)));
}

}  // namespace tropmom
