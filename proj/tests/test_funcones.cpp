#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace tropmom;
using oracle::as_set;
using oracle::iv;

namespace {

using Pts = std::vector<LatticePoint>;

PointConfig line(std::initializer_list<std::int64_t> xs) {
  Pts p;
  for (auto x : xs) p.push_back({x});
  return PointConfig(1, p);
}

MidpointTriple triple(std::int64_t a1, std::int64_t a2, std::int64_t b) { return {{a1}, {a2}, {b}}; }

// Order (0,0), (1,1), (1,2), (2,1).
const PointConfig motzkin(2, {{0, 0}, {1, 1}, {1, 2}, {2, 1}});

PointConfig random_config(std::mt19937& rng, std::size_t count, std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> e(0, hi);
  std::set<LatticePoint> s;
  while (s.size() < count) s.insert({e(rng), e(rng)});
  Pts p(s.begin(), s.end());
  std::shuffle(p.begin(), p.end(), rng);
  return PointConfig(2, p);
}

RatVector to_rat(const IntVector& v) { return to_rational(v); }

}  // namespace

TEST(ConeK, MotzkinTrivialOrder) {
  const auto k = cone_K(motzkin, trivial_order(2));
  EXPECT_EQ(k.cone().ineqs(), std::vector<IntVector>{iv({1, -3, 1, 1})});
  EXPECT_TRUE(k.cone().eqs().empty());
}

TEST(ConeK, MotzkinCube) {
  const auto k = cone_K(motzkin, nonpositive_orthant(2));
  EXPECT_EQ(as_set(k.cone().ineqs()), as_set({iv({0, 1, -1, 0}), iv({0, 1, 0, -1}), iv({1, -3, 1, 1})}));
}

TEST(ConeK, NotTwoExample) {
  // h(3,0) + h(0,3) >= 2 h(2,2) holds but is the average of the two facets;
  // (1/3)(3,0) + (2/3)(0,3) = (1,2) lies below (2,2), and symmetrically.
  const PointConfig a(2, {{3, 0}, {0, 3}, {2, 2}});
  const Cone k = cone_K(a, nonpositive_orthant(2)).cone();
  EXPECT_EQ(as_set(k.ineqs()), as_set({iv({1, 2, -3}), iv({2, 1, -3})}));
  EXPECT_TRUE(contains(dual(k), std::span<const Integer>(iv({1, 1, -2}))));
  EXPECT_FALSE(contains(dual(k), std::span<const Integer>(iv({1, 0, -1}))));
}

TEST(ConeKFacets, MotzkinOne) { EXPECT_EQ(cone_K_facets_via_simplices(motzkin).size(), 1U); }

TEST(ConeKFacets, ConvexPositionNone) {
  const PointConfig a(2, {{4, 0}, {0, 4}, {3, 2}});
  EXPECT_TRUE(cone_K_facets_via_simplices(a).empty());
  EXPECT_TRUE(cone_equal(cone_K(a, trivial_order(2)).cone(), Cone::full_space(3)));
}

TEST(ConeKFacets, LineOfFiveConsecutiveTriples) {
  EXPECT_EQ(as_set(cone_K_facets_via_simplices(line({0, 1, 2, 3, 4}))),
            as_set({iv({1, -2, 1, 0, 0}), iv({0, 1, -2, 1, 0}), iv({0, 0, 1, -2, 1})}));
}

TEST(ConeKEven, DoubledMotzkin) {
  const PointConfig dm(2, {{0, 0}, {2, 4}, {4, 2}, {2, 2}});
  EXPECT_EQ(cone_K_even(dm).cone().ineqs(), std::vector<IntVector>{iv({1, 1, 1, -3})});
}

TEST(ConeKEven, MotzkinHasNoEvenSimplex) {
  EXPECT_TRUE(cone_equal(cone_K_even(motzkin).cone(), Cone::full_space(4)));
}

TEST(ConeKEven, EvenSquare) {
  const PointConfig sq(2, {{0, 0}, {0, 2}, {2, 0}, {2, 2}});
  EXPECT_TRUE(cone_equal(cone_K_even(sq).cone(), Cone::full_space(4)));
}

TEST(ConeM, MotzkinIsEverything) {
  EXPECT_TRUE(cone_equal(cone_M(motzkin, trivial_order(2)).cone(), Cone::full_space(4)));
}

TEST(ConeM, ShortLine) {
  const Cone m = dd_convert(cone_M(line({0, 1, 2}), trivial_order(1)).cone());
  EXPECT_EQ(m.ineqs(), std::vector<IntVector>{iv({1, -2, 1})});
}

TEST(ConeM, LineOfSevenDecreasing) {
  const auto a = line({0, 1, 2, 3, 4, 5, 6});
  const auto ineqs = as_set(cone_M(a, nonpositive_orthant(1)).cone().h().ineqs);
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    IntVector v(a.size(), Integer(0));
    v[i] = 1;
    v[i + 1] = -1;
    EXPECT_TRUE(ineqs.count(v));
  }
  for (const auto& n : midpoint_normals(a)) EXPECT_TRUE(ineqs.count(n));
}

TEST(ConeM, ReducedPairsGiveSameCone) {
  const auto a = line({0, 1, 2, 3, 4, 5, 6});
  EXPECT_TRUE(cone_equal(cone_M(a, nonpositive_orthant(1)).cone(), cone_M(a, nonpositive_orthant(1), true).cone()));
  const auto sq = cubical_hull(motzkin);
  EXPECT_TRUE(cone_equal(cone_M(sq, nonpositive_orthant(2)).cone(), cone_M(sq, nonpositive_orthant(2), true).cone()));
}

TEST(MidpointFacet, LineCases) {
  EXPECT_FALSE(is_midpoint_facet(line({0, 1, 2, 3, 4}), triple(0, 4, 2)));
  EXPECT_FALSE(is_midpoint_facet(line({0, 2, 3, 4, 6}), triple(0, 6, 3)));
  EXPECT_TRUE(is_midpoint_facet(line({0, 3, 4, 5, 8}), triple(0, 8, 4)));
}

TEST(MidpointFacet, NotATripleIsUsageError) {
  EXPECT_THROW(is_midpoint_facet(line({0, 1, 2}), triple(0, 1, 2)), UsageError);
}

TEST(MidpointFacet, PropertyAgreesWithRedundancyAndShuffledOrder) {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const bool one_dim = trial % 2 == 0;
    PointConfig a = one_dim ? [&] {
      std::set<std::int64_t> s;
      while (s.size() < 6) s.insert(static_cast<std::int64_t>(rng() % 12));
      Pts p;
      for (auto x : s) p.push_back({x});
      return PointConfig(1, p);
    }()
                            : random_config(rng, 7, 4);
    const Cone m = dd_convert(cone_M(a, trivial_order(a.dim())).cone());
    const auto facets = as_set(m.ineqs());
    for (const auto& t : midpoint_triples(a)) {
      IntVector v(a.size(), Integer(0));
      v[*a.index_of(t.a1)] += 1;
      v[*a.index_of(t.a2)] += 1;
      v[*a.index_of(t.b)] -= 2;
      const bool facet = is_midpoint_facet(a, t);
      EXPECT_EQ(facet, facets.count(v) == 1);
      EXPECT_EQ(facet, oracle::midpoint_facet_shuffled(a.points(), t.a1, t.a2, t.b, rng));
    }
  }
}

TEST(ProjectionEquality, Motzkin) { EXPECT_FALSE(projection_equality_KM(motzkin)); }

TEST(ProjectionEquality, SecondTriangleWithInterior) {
  EXPECT_TRUE(projection_equality_KM(PointConfig(2, {{0, 3}, {1, 0}, {3, 1}, {1, 1}})));
}

TEST(ProjectionEquality, ConvexPosition) {
  EXPECT_TRUE(projection_equality_KM(PointConfig(2, {{4, 0}, {0, 4}, {3, 2}})));
}

TEST(ProjectionEquality, PropertyDecidesProjectionOfM) {
  std::mt19937 rng(42);
  int strict = 0, equal = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = random_config(rng, 3 + trial % 3, 3);
    const PointConfig e(2, lattice_points(a.points()));
    std::vector<std::size_t> keep;
    for (const auto& p : a) keep.push_back(*e.index_of(p));
    const Cone proj = project_hrep(cone_M(e, trivial_order(2)).cone(), keep);
    const Cone k = cone_K(a, trivial_order(2)).cone();
    EXPECT_TRUE(is_subcone(k, proj));
    if (projection_equality_KM(a)) {
      EXPECT_TRUE(cone_equal(k, proj));
      ++equal;
    } else {
      // Certificate: some generator of the projection violates a K facet.
      const Cone pm = dd_convert(proj);
      bool violated = false;
      for (const auto& r : pm.rays())
        for (const auto& nu : k.ineqs()) violated = violated || dot(nu, r) < 0;
      for (const auto& l : pm.lineality())
        for (const auto& nu : k.ineqs()) violated = violated || dot(nu, l) != 0;
      EXPECT_TRUE(violated);
      ++strict;
    }
  }
  EXPECT_GT(strict, 0);
  EXPECT_GT(equal, 0);
}

TEST(ProjectionEquality, MotzkinCubeIsStrict) {
  const auto e = cubical_hull(motzkin);
  std::vector<std::size_t> keep;
  for (const auto& p : motzkin) keep.push_back(*e.index_of(p));
  const Cone proj = project_hrep(cone_M(e, nonpositive_orthant(2), true).cone(), keep);
  const Cone k = cone_K(motzkin, nonpositive_orthant(2)).cone();
  EXPECT_TRUE(is_subcone(k, proj));
  EXPECT_FALSE(is_subcone(proj, k));
}

TEST(ConeKInvariants, PropertySimplexRouteAndMembershipOracle) {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = random_config(rng, 3 + trial % 4, 4);
    const Cone k = cone_K(a, trivial_order(2)).cone();
    EXPECT_TRUE(cone_equal(k, Cone::from_h(a.size(), cone_K_facets_via_simplices(a))));
    EXPECT_TRUE(is_subcone(k, cone_M(a, trivial_order(2)).cone()));
    // Generators of K pass the affine-minorant oracle; random vectors agree.
    const Cone km = dd_convert(k);
    for (const auto& r : km.rays()) EXPECT_TRUE(oracle::in_K(a.points(), {}, {}, to_rat(r)));
    std::uniform_int_distribution<int> e(-4, 4);
    for (int s = 0; s < 5; ++s) {
      IntVector h(a.size());
      for (auto& x : h) x = e(rng);
      EXPECT_EQ(contains(k, std::span<const Integer>(h)), oracle::in_K(a.points(), {}, {}, to_rat(h)));
    }
  }
}

TEST(ConeKInvariants, PropertyOrderedVersusOracle) {
  std::mt19937 rng(44);
  const std::vector<Cone> orders{nonpositive_orthant(2), Cone::from_v(2, {iv({-1, 2}), iv({1, -3})}),
                                 Cone::from_v(2, {iv({-1, -1})}), Cone::from_v(2, {}, {iv({1, -1})})};
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = random_config(rng, 3 + trial % 3, 3);
    const Cone& c = orders[trial % orders.size()];
    SCOPED_TRACE("order " + std::to_string(trial % orders.size()));
    const Cone k = cone_K(a, c).cone();
    const Cone cm = dd_convert(c);
    const Cone cd = dd_convert(dual(c));
    EXPECT_TRUE(is_subcone(k, cone_M(a, c).cone()));
    const Cone km = dd_convert(k);
    for (const auto& r : km.rays()) EXPECT_TRUE(oracle::in_K(a.points(), cm.rays(), cm.lineality(), to_rat(r)));
    std::uniform_int_distribution<int> e(-3, 3);
    for (int s = 0; s < 4; ++s) {
      IntVector h(a.size());
      for (auto& x : h) x = e(rng);
      EXPECT_EQ(contains(k, std::span<const Integer>(h)), oracle::in_K(a.points(), cm.rays(), cm.lineality(), to_rat(h)));
    }
    // Affine functions <u,a> + d with u in C^dual lie in K_{A,C}.
    std::uniform_int_distribution<int> coef(0, 3);
    IntVector u(2, Integer(0));
    for (const auto& r : cd.rays()) {
      const int t = coef(rng);
      for (std::size_t i = 0; i < 2; ++i) u[i] += t * r[i];
    }
    for (const auto& l : cd.lineality()) {
      const int t = coef(rng) - 1;
      for (std::size_t i = 0; i < 2; ++i) u[i] += t * l[i];
    }
    IntVector h;
    for (const auto& p : a) h.push_back(u[0] * p[0] + u[1] * p[1] + 5);
    EXPECT_TRUE(contains(k, std::span<const Integer>(h)));
    // Max of such affine functions also lies in K_{A,C}, and max_affine
    // reproduces it on A.
    std::vector<std::pair<RatVector, Rational>> pieces;
    for (int piece = 0; piece < 3; ++piece) {
      RatVector w(2, Rational(0));
      for (const auto& r : cd.rays()) {
        const Rational t(coef(rng));
        for (std::size_t i = 0; i < 2; ++i) w[i] += t * r[i];
      }
      for (const auto& l : cd.lineality()) {
        const Rational t(coef(rng) - 1);
        for (std::size_t i = 0; i < 2; ++i) w[i] += t * l[i];
      }
      pieces.emplace_back(w, Rational(coef(rng)));
    }
    RatVector hm;
    for (const auto& p : a) hm.push_back(max_affine(pieces, p));
    EXPECT_TRUE(contains(k, std::span<const Rational>(hm)));
  }
}

TEST(ConeKInvariants, PropertyFaceMonotonicity) {
  // F a face of C gives K_{A,C} inside K_{A,F}.
  std::mt19937 rng(45);
  const Cone c = nonpositive_orthant(2);
  const std::vector<Cone> faces{Cone::origin(2), Cone::from_v(2, {iv({-1, 0})}), Cone::from_v(2, {iv({0, -1})}), c};
  for (int trial = 0; trial < 15; ++trial) {
    const auto a = random_config(rng, 4, 3);
    const Cone kc = cone_K(a, c).cone();
    for (const auto& f : faces) {
      const Cone kf = cone_K(a, f).cone();
      for (const auto& nu : kf.ineqs()) {
        const Cone km = dd_convert(kc);
        for (const auto& r : km.rays()) EXPECT_GE(dot(nu, r), 0);
        for (const auto& l : km.lineality()) EXPECT_EQ(dot(nu, l), 0);
      }
    }
  }
}
