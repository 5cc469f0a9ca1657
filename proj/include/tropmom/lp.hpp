#pragma once

// Exact linear programming for  min c.x  s.t.  Ax = b, x >= 0.
//
// A floating-point simplex on a randomly perturbed right-hand side proposes
// an optimal basis; the basis is then certified in exact arithmetic (primal
// feasibility of B^{-1} b and nonnegative reduced costs). Only when the
// certificate fails does the exact dense-tableau simplex run. Every returned
// value is exact regardless of which path produced the basis.

#include <cmath>
#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "tropmom/exact_linalg.hpp"

namespace tropmom {

namespace detail {

// Dense tableau simplex in double precision. Returns the final basis, or
// nullopt on infeasibility, unboundedness, or iteration overflow.
class FloatSimplex {
 public:
  FloatSimplex(const std::vector<RatVector>& a, const RatVector& b) : m_(a.size()), n_(a.empty() ? 0 : a[0].size()) {
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> jitter(0.5, 1.0);
    tab_.assign(m_, std::vector<double>(n_ + m_ + 1, 0.0));
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      const double sign = b[i] < 0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) tab_[i][j] = sign * a[i][j].convert_to<double>();
      tab_[i][n_ + i] = 1.0;
      // Perturbation removes degeneracy; an optimal basis of the perturbed
      // program is optimal for the original one when the jitter is small.
      tab_[i].back() = sign * b[i].convert_to<double>() + 1e-7 * jitter(rng);
      basis_[i] = n_ + i;
    }
  }

  std::optional<std::vector<std::size_t>> solve(const RatVector& c) {
    std::vector<double> cost(n_ + m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) cost[n_ + i] = 1.0;
    if (!run(cost, n_ + m_)) return std::nullopt;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= n_) {
        if (tab_[i].back() > 1e-9) return std::nullopt;
        std::optional<std::size_t> col;
        double best = 1e-9;
        for (std::size_t j = 0; j < n_; ++j)
          if (std::abs(tab_[i][j]) > best) best = std::abs(tab_[i][j]), col = j;
        if (!col) return std::nullopt;
        pivot(i, *col);
      }
    std::fill(cost.begin(), cost.end(), 0.0);
    for (std::size_t j = 0; j < n_; ++j) cost[j] = c[j].convert_to<double>();
    if (!run(cost, n_)) return std::nullopt;
    return basis_;
  }

 private:
  void pivot(std::size_t r, std::size_t c) {
    const double inv = 1.0 / tab_[r][c];
    for (auto& x : tab_[r]) x *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = tab_[i][c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < tab_[i].size(); ++j) tab_[i][j] -= f * tab_[r][j];
      tab_[i][c] = 0.0;
    }
    basis_[r] = c;
  }

  bool run(const std::vector<double>& cost, std::size_t usable) {
    constexpr double eps = 1e-9;
    for (std::size_t iter = 0; iter < 50000; ++iter) {
      std::optional<std::size_t> enter;
      double most = -eps;
      for (std::size_t j = 0; j < usable; ++j) {
        double r = cost[j];
        for (std::size_t i = 0; i < m_; ++i) r -= cost[basis_[i]] * tab_[i][j];
        if (r < most) most = r, enter = j;
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      double best = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double piv = tab_[i][*enter];
        if (piv <= eps) continue;
        const double ratio = tab_[i].back() / piv;
        if (!leave || ratio < best - 1e-12 || (ratio <= best + 1e-12 && piv > tab_[*leave][*enter])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
    return false;
  }

  std::size_t m_, n_;
  std::vector<std::vector<double>> tab_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

class ExactLP {
 public:
  enum class Status { optimal, unbounded };

  struct Solution {
    Status status = Status::optimal;
    Rational value;
    RatVector x;
  };

  /// Rows of `a` may be linearly dependent; they are reduced exactly first.
  ExactLP(const std::vector<RatVector>& a, const RatVector& b) : cols_(a.empty() ? 0 : a.front().size()) {
    if (a.size() != b.size()) throw UsageError("ExactLP: row count does not match right-hand side");
    std::vector<RatVector> aug;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].size() != cols_) throw UsageError("ExactLP: ragged constraint matrix");
      RatVector r = a[i];
      r.push_back(b[i]);
      aug.push_back(std::move(r));
    }
    const auto [red, piv] = rref(RatMatrix(std::move(aug), cols_ + 1));
    consistent_ = piv.empty() || piv.back() != cols_;
    for (std::size_t k = 0; k < piv.size() && consistent_; ++k) {
      a_.emplace_back(red.row(k).begin(), red.row(k).end() - 1);
      b_.push_back(red(k, cols_));
    }
    if (!consistent_) return;
    if (a_.empty()) {
      feasible_ = true;
      return;
    }
    // Feasibility through the float path first, exact phase 1 otherwise.
    detail::FloatSimplex fs(a_, b_);
    if (auto basis = fs.solve(RatVector(cols_, Rational(0)))) {
      if (primal_values(*basis)) {
        feasible_ = true;
        return;
      }
    }
    exact_phase_one();
  }

  bool feasible() const { return feasible_; }
  std::size_t num_vars() const { return cols_; }

  /// Minimizes c.x over the feasible region. Requires feasible().
  Solution minimize(const RatVector& c) const {
    if (!feasible_) throw PreconditionError("ExactLP: minimize on an infeasible program");
    if (c.size() != cols_) throw UsageError("ExactLP: objective has wrong length");
    if (a_.empty()) {
      // No constraints: bounded only if c >= 0, optimum at x = 0.
      Solution sol{Status::optimal, Rational(0), RatVector(cols_, Rational(0))};
      for (const auto& cj : c)
        if (cj < 0) sol.status = Status::unbounded;
      return sol;
    }
    detail::FloatSimplex fs(a_, b_);
    if (auto basis = fs.solve(c))
      if (auto sol = certify(*basis, c)) return *sol;
    return exact_minimize(c);
  }

 private:
  // x_B = B^{-1} b if B is nonsingular and x_B >= 0.
  std::optional<RatVector> primal_values(const std::vector<std::size_t>& basis) const {
    const std::size_t m = a_.size();
    RatMatrix bm(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k) {
        if (basis[k] >= cols_) return std::nullopt;
        bm(i, k) = a_[i][basis[k]];
      }
    auto xb = solve_linear(bm, b_);
    if (!xb || rank(bm) != m) return std::nullopt;
    for (const auto& v : *xb)
      if (v < 0) return std::nullopt;
    RatVector x(cols_, Rational(0));
    for (std::size_t k = 0; k < m; ++k) x[basis[k]] = (*xb)[k];
    return x;
  }

  // Exact optimality certificate for a proposed basis.
  std::optional<Solution> certify(const std::vector<std::size_t>& basis, const RatVector& c) const {
    auto x = primal_values(basis);
    if (!x) return std::nullopt;
    const std::size_t m = a_.size();
    RatMatrix bt(m, m);
    RatVector cb(m);
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t i = 0; i < m; ++i) bt(k, i) = a_[i][basis[k]];
      cb[k] = c[basis[k]];
    }
    const auto y = solve_linear(bt, cb);
    if (!y) return std::nullopt;
    for (std::size_t j = 0; j < cols_; ++j) {
      Rational reduced = c[j];
      for (std::size_t i = 0; i < m; ++i)
        if (a_[i][j] != 0 && (*y)[i] != 0) reduced -= (*y)[i] * a_[i][j];
      if (reduced < 0) return std::nullopt;
    }
    Solution sol;
    sol.x = std::move(*x);
    sol.value = dot(std::span<const Rational>(c), std::span<const Rational>(sol.x));
    return sol;
  }

  static void pivot(std::vector<RatVector>& tab, std::vector<std::size_t>& basis, std::size_t r, std::size_t c) {
    const Rational inv = 1 / tab[r][c];
    for (auto& x : tab[r])
      if (x != 0) x *= inv;
    for (std::size_t i = 0; i < tab.size(); ++i) {
      if (i == r || tab[i][c] == 0) continue;
      const Rational f = tab[i][c];
      for (std::size_t j = 0; j < tab[i].size(); ++j)
        if (tab[r][j] != 0) tab[i][j] -= f * tab[r][j];
    }
    basis[r] = c;
  }

  // Bland's rule on columns [0, usable); false if unbounded.
  static bool run(std::vector<RatVector>& tab, std::vector<std::size_t>& basis, const RatVector& cost,
                  std::size_t usable) {
    const std::size_t m = tab.size();
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < usable && !enter; ++j) {
        Rational reduced = cost[j];
        for (std::size_t i = 0; i < m; ++i)
          if (tab[i][j] != 0 && cost[basis[i]] != 0) reduced -= cost[basis[i]] * tab[i][j];
        if (reduced < 0) enter = j;
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < m; ++i) {
        if (tab[i][*enter] <= 0) continue;
        const Rational ratio = tab[i].back() / tab[i][*enter];
        if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(tab, basis, *leave, *enter);
    }
  }

  void exact_phase_one() {
    const std::size_t m = a_.size();
    tab_.assign(m, RatVector(cols_ + m + 1, Rational(0)));
    basis_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const int sign = b_[i] < 0 ? -1 : 1;
      for (std::size_t j = 0; j < cols_; ++j) tab_[i][j] = sign * a_[i][j];
      tab_[i][cols_ + i] = 1;
      tab_[i].back() = sign * b_[i];
      basis_[i] = cols_ + i;
    }
    RatVector cost(cols_ + m, Rational(0));
    for (std::size_t i = 0; i < m; ++i) cost[cols_ + i] = 1;
    run(tab_, basis_, cost, cols_ + m);
    for (std::size_t i = 0; i < m; ++i)
      if (basis_[i] >= cols_ && tab_[i].back() != 0) return;
    // Rows are independent, so zero-level artificials can always be pivoted out.
    for (std::size_t i = 0; i < m; ++i) {
      if (basis_[i] < cols_) continue;
      for (std::size_t j = 0; j < cols_; ++j)
        if (tab_[i][j] != 0) {
          pivot(tab_, basis_, i, j);
          break;
        }
    }
    have_tableau_ = true;
    feasible_ = true;
  }

  Solution exact_minimize(const RatVector& c) const {
    if (!have_tableau_) const_cast<ExactLP*>(this)->exact_phase_one();
    auto tab = tab_;
    auto basis = basis_;
    RatVector cost(c.begin(), c.end());
    cost.resize(cols_ + a_.size(), Rational(0));
    const bool bounded = run(tab, basis, cost, cols_);
    Solution sol;
    sol.x.assign(cols_, Rational(0));
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i] < cols_) sol.x[basis[i]] = tab[i].back();
    sol.status = bounded ? Status::optimal : Status::unbounded;
    sol.value = dot(std::span<const Rational>(c), std::span<const Rational>(sol.x));
    return sol;
  }

  std::size_t cols_;
  std::vector<RatVector> a_;
  RatVector b_;
  bool consistent_ = false;
  bool feasible_ = false;
  bool have_tableau_ = false;
  std::vector<RatVector> tab_;
  std::vector<std::size_t> basis_;
};

}  // namespace tropmom
