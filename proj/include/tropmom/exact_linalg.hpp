#pragma once

// Exact rational and integer linear algebra. Every quantity in the library
// flows through these types; nothing is ever rounded.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "tropmom/errors.hpp"

namespace tropmom {

using Integer = boost::multiprecision::mpz_int;
/// Always in lowest terms with a positive denominator (GMP canonicalizes
/// after every operation).
using Rational = boost::multiprecision::mpq_rational;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Lattice points are small; machine integers keep enumeration cheap.
using LatticePoint = std::vector<std::int64_t>;

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}

inline Integer content(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) {
    if (x != 0) g = gcd(g, abs(x));
    if (g == 1) break;
  }
  return g;
}

/// Divides out the gcd of the entries. The zero vector is returned unchanged.
inline IntVector primitive(IntVector v) {
  const Integer g = content(v);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

/// Clears denominators and divides by the gcd, preserving direction.
inline IntVector primitive(std::span<const Rational> v) {
  Integer den = 1;
  for (const auto& x : v) den = lcm(den, boost::multiprecision::denominator(x));
  IntVector out;
  out.reserve(v.size());
  for (const auto& x : v)
    out.push_back(boost::multiprecision::numerator(x) * (den / boost::multiprecision::denominator(x)));
  return primitive(std::move(out));
}

inline bool is_zero(std::span<const Integer> v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

inline bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

inline Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  if (a.size() != b.size()) throw UsageError("dot: dimension mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw UsageError("dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

inline Rational dot(std::span<const Integer> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw UsageError("dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += Rational(a[i]) * b[i];
  return s;
}

inline RatVector to_rational(std::span<const Integer> v) {
  return RatVector(v.begin(), v.end());
}

inline IntVector to_integer(const LatticePoint& p) {
  return IntVector(p.begin(), p.end());
}

inline RatVector to_rational(const LatticePoint& p) {
  RatVector out;
  out.reserve(p.size());
  for (auto x : p) out.emplace_back(x);
  return out;
}

inline IntVector negated(IntVector v) {
  for (auto& x : v) x = -x;
  return v;
}

inline IntVector unit_vector(std::size_t dim, std::size_t i, int sign = 1) {
  IntVector e(dim, Integer(0));
  e.at(i) = sign;
  return e;
}

template <typename Vec>
std::string format_vector(const Vec& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

/// Dense matrix over Q. Rows are stored as vectors of equal length.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, RatVector(cols, Rational(0))) {}
  explicit RatMatrix(std::vector<RatVector> rows) : rows_(std::move(rows)) {
    cols_ = rows_.empty() ? 0 : rows_.front().size();
    for (const auto& r : rows_)
      if (r.size() != cols_) throw UsageError("RatMatrix: ragged rows");
  }
  RatMatrix(std::vector<RatVector> rows, std::size_t cols) : cols_(cols), rows_(std::move(rows)) {
    for (const auto& r : rows_)
      if (r.size() != cols_) throw UsageError("RatMatrix: ragged rows");
  }

  static RatMatrix from_integer_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    std::vector<RatVector> r;
    r.reserve(rows.size());
    for (const auto& row : rows) r.push_back(to_rational(row));
    return RatMatrix(std::move(r), cols);
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const RatVector& row(std::size_t i) const { return rows_.at(i); }
  const Rational& operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  Rational& operator()(std::size_t i, std::size_t j) { return rows_[i][j]; }
  const std::vector<RatVector>& row_vectors() const { return rows_; }

  RatVector apply(std::span<const Rational> x) const {
    if (x.size() != cols_) throw UsageError("RatMatrix::apply: dimension mismatch");
    RatVector y;
    y.reserve(rows_.size());
    for (const auto& r : rows_) y.push_back(dot(std::span<const Rational>(r), x));
    return y;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<RatVector> rows_;
};

/// Reduced row echelon form. `pivots[k]` is the pivot column of row k.
struct Echelon {
  RatMatrix reduced;
  std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination. The first nonzero entry in a column is used as
/// pivot; RREF is unique, so the pivot rule cannot influence the result.
inline Echelon rref(RatMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (m(r, j) != 0) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const RatMatrix& m) { return rref(m).pivots.size(); }

inline std::size_t rank(const std::vector<IntVector>& rows, std::size_t cols) {
  return rank(RatMatrix::from_integer_rows(rows, cols));
}

/// Basis of {x : Mx = 0}, one primitive integer vector per free column.
inline std::vector<IntVector> kernel(const RatMatrix& m) {
  const auto [red, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<IntVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v(m.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -red(k, f);
    basis.push_back(primitive(std::span<const Rational>(v)));
  }
  return basis;
}

/// One exact solution of Mx = b, or nullopt when the system is inconsistent.
inline std::optional<RatVector> solve_linear(const RatMatrix& m, std::span<const Rational> b) {
  if (b.size() != m.rows()) throw UsageError("solve_linear: matrix has " + std::to_string(m.rows()) +
                                             " rows but right-hand side has " + std::to_string(b.size()));
  std::vector<RatVector> aug;
  aug.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    RatVector r = m.row(i);
    r.push_back(b[i]);
    aug.push_back(std::move(r));
  }
  const auto [red, pivots] = rref(RatMatrix(std::move(aug), m.cols() + 1));
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  RatVector x(m.cols(), Rational(0));
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = red(k, m.cols());
  return x;
}

/// Solves barycentric systems against a fixed vertex set. The vertex matrix is
/// factored once so that many query points are cheap.
class BarycentricSolver {
 public:
  explicit BarycentricSolver(std::vector<LatticePoint> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw UsageError("barycentric_coords: empty vertex list");
    dim_ = vertices_.front().size();
    for (const auto& v : vertices_)
      if (v.size() != dim_) throw UsageError("barycentric_coords: vertices of mixed dimension");
    // Columns (v_i, 1); rows are coordinates plus the affine row.
    RatMatrix m(dim_ + 1, vertices_.size());
    for (std::size_t j = 0; j < vertices_.size(); ++j) {
      for (std::size_t i = 0; i < dim_; ++i) m(i, j) = vertices_[j][i];
      m(dim_, j) = 1;
    }
    if (rank(m) != vertices_.size()) throw UsageError("barycentric_coords: vertices are affinely dependent");
    matrix_ = std::move(m);
  }

  const std::vector<LatticePoint>& vertices() const { return vertices_; }

  std::optional<RatVector> operator()(const LatticePoint& p) const {
    if (p.size() != dim_) throw UsageError("barycentric_coords: query point has wrong dimension");
    RatVector rhs = to_rational(p);
    rhs.emplace_back(1);
    return solve_linear(matrix_, rhs);
  }

 private:
  std::vector<LatticePoint> vertices_;
  std::size_t dim_ = 0;
  RatMatrix matrix_;
};

/// Affine coordinates of p with respect to affinely independent vertices;
/// nullopt when p is off their affine span. Coordinates may be negative.
inline std::optional<RatVector> barycentric_coords(const std::vector<LatticePoint>& vertices, const LatticePoint& p) {
  return BarycentricSolver(vertices)(p);
}

inline bool affinely_independent(const std::vector<LatticePoint>& pts) {
  if (pts.empty()) return true;
  const std::size_t n = pts.front().size();
  if (pts.size() > n + 1) return false;
  RatMatrix m(pts.size() - 1, n);
  for (std::size_t k = 1; k < pts.size(); ++k)
    for (std::size_t i = 0; i < n; ++i) m(k - 1, i) = pts[k][i] - pts[0][i];
  return rank(m) == pts.size() - 1;
}

/// Converts a machine-sized integer, throwing if it does not fit.
inline std::int64_t to_int64(const Integer& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    throw UsageError("integer " + x.str() + " does not fit in 64 bits");
  return x.convert_to<std::int64_t>();
}

}  // namespace tropmom
