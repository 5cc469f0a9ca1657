#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace tropmom;

namespace {

RatMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<RatVector> r;
  for (auto row : rows) {
    RatVector v;
    for (auto x : row) v.emplace_back(x);
    r.push_back(v);
  }
  return RatMatrix(std::move(r));
}

RatVector vec(std::initializer_list<Rational> xs) { return RatVector(xs); }

}  // namespace

TEST(SolveLinear, Identity) {
  EXPECT_EQ(solve_linear(mat({{1, 0}, {0, 1}}), vec({3, 5})), vec({3, 5}));
}

TEST(SolveLinear, SymmetricSystem) {
  EXPECT_EQ(solve_linear(mat({{1, 1}, {1, -1}}), vec({2, 0})), vec({1, 1}));
}

TEST(SolveLinear, InconsistentRankOne) {
  EXPECT_FALSE(solve_linear(mat({{1, 2}, {2, 4}}), vec({1, 0})).has_value());
}

TEST(SolveLinear, DimensionMismatchIsUsageError) {
  EXPECT_THROW(solve_linear(mat({{1, 2}}), vec({1, 0})), UsageError);
}

TEST(SolveLinear, PropertySolutionsSatisfySystem) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> entry(-4, 4), size(1, 5);
  for (int trial = 0; trial < 300; ++trial) {
    const int r = size(rng), c = size(rng);
    std::vector<RatVector> rows(r, RatVector(c));
    for (auto& row : rows)
      for (auto& x : row) x = Rational(entry(rng), 1 + std::abs(entry(rng)));
    const RatMatrix m(rows, c);
    RatVector b(r);
    // Half the systems are consistent by construction.
    if (trial % 2 == 0) {
      RatVector x0(c);
      for (auto& x : x0) x = entry(rng);
      b = m.apply(x0);
    } else {
      for (auto& x : b) x = entry(rng);
    }
    const auto x = solve_linear(m, b);
    if (trial % 2 == 0) ASSERT_TRUE(x.has_value());
    if (x) EXPECT_EQ(m.apply(*x), b);
    if (!x) {
      // Inconsistency certificate: rank grows when b is appended.
      auto aug = rows;
      for (int i = 0; i < r; ++i) aug[i].push_back(b[i]);
      EXPECT_EQ(rank(RatMatrix(aug, c + 1)), rank(m) + 1);
    }
  }
}

TEST(Kernel, RankNullityAndAnnihilation) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> entry(-3, 3), size(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const int r = size(rng), c = size(rng);
    std::vector<IntVector> rows(r, IntVector(c));
    for (auto& row : rows)
      for (auto& x : row) x = entry(rng);
    const auto m = RatMatrix::from_integer_rows(rows, c);
    const auto ker = kernel(m);
    EXPECT_EQ(ker.size() + rank(m), static_cast<std::size_t>(c));
    for (const auto& v : ker) {
      EXPECT_EQ(content(v), 1);
      for (const auto& row : rows) EXPECT_EQ(dot(row, v), 0);
    }
    EXPECT_EQ(rank(m), oracle::rank_of(rows, c));
  }
}

TEST(Barycentric, MotzkinTriangleCenter) {
  const auto lam = barycentric_coords({{0, 0}, {1, 2}, {2, 1}}, {1, 1});
  ASSERT_TRUE(lam);
  EXPECT_EQ(*lam, vec({Rational(1, 3), Rational(1, 3), Rational(1, 3)}));
}

TEST(Barycentric, SegmentMidpoint) {
  EXPECT_EQ(barycentric_coords({{0, 0}, {2, 0}}, {1, 0}), vec({Rational(1, 2), Rational(1, 2)}));
}

TEST(Barycentric, OffAffineSpan) {
  // 3 + 2 != 4, so (3,2) is off the line through (4,0) and (0,4).
  EXPECT_FALSE(barycentric_coords({{4, 0}, {0, 4}}, {3, 2}).has_value());
}

TEST(Barycentric, NegativeCoordinatesAllowed) {
  const auto lam = barycentric_coords({{0, 0}, {1, 0}}, {3, 0});
  ASSERT_TRUE(lam);
  EXPECT_EQ(*lam, vec({-2, 3}));
}

TEST(Barycentric, AffinelyDependentThrows) {
  EXPECT_THROW(barycentric_coords({{0, 0}, {1, 1}, {2, 2}}, {1, 1}), UsageError);
}

TEST(Barycentric, PropertyAffineIdentities) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> coord(0, 6);
  int checked = 0;
  while (checked < 300) {
    std::vector<LatticePoint> v(3, LatticePoint(2));
    for (auto& p : v)
      for (auto& x : p) x = coord(rng);
    if (!affinely_independent(v)) continue;
    const LatticePoint p{coord(rng), coord(rng)};
    const auto lam = barycentric_coords(v, p);
    ASSERT_TRUE(lam);
    Rational sum = 0;
    RatVector comb(2, Rational(0));
    for (std::size_t i = 0; i < 3; ++i) {
      sum += (*lam)[i];
      for (std::size_t k = 0; k < 2; ++k) comb[k] += (*lam)[i] * v[i][k];
    }
    EXPECT_EQ(sum, 1);
    EXPECT_EQ(comb, to_rational(p));
    EXPECT_EQ(*lam, *oracle::barycentric(v, p));
    ++checked;
  }
}

TEST(Rational, LowestTermsAndPositiveDenominator) {
  // Built by division: the two-integer constructor takes an unsigned denominator.
  const Rational q = Rational(6) / Rational(-4);
  EXPECT_EQ(numerator(q), -3);
  EXPECT_EQ(denominator(q), 2);
}

TEST(Rational, PropertyOrderIndependence) {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 40);
  for (int i = 0; i < 1000; ++i) {
    const Rational a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
  }
}

TEST(Primitive, ClearsDenominatorsAndContent) {
  EXPECT_EQ(primitive(oracle::iv({2, -2, 0, 0})), oracle::iv({1, -1, 0, 0}));
  const RatVector r{Rational(1, 3), Rational(-2, 3), Rational(1, 2)};
  EXPECT_EQ(primitive(std::span<const Rational>(r)), oracle::iv({2, -4, 3}));
  EXPECT_EQ(primitive(oracle::iv({0, 0})), oracle::iv({0, 0}));
}

TEST(ToInt64, OverflowIsReported) {
  EXPECT_EQ(to_int64(Integer(-7)), -7);
  EXPECT_THROW(to_int64(Integer(1) << 70), UsageError);
}
