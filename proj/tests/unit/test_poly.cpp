#include <gtest/gtest.h>

#include <cmath>

#include "qlb/error.hpp"
#include "qlb/poly.hpp"

using namespace qlb;

TEST(Poly, SimplexSolvesSmallLp) {
  // max x + y, x + 2y <= 4, 3x + y <= 6 -> (8/5, 6/5), value 14/5
  Eigen::MatrixXd a(2, 2);
  a << 1, 2, 3, 1;
  RVector b(2), c(2);
  b << 4, 6;
  c << 1, 1;
  LpResult r = simplex_max(a, b, c);
  ASSERT_TRUE(r.bounded);
  EXPECT_NEAR(r.value, 2.8, 1e-9);
}

TEST(Poly, ExactDegrees) {
  for (int n = 1; n <= 4; ++n) {
    EXPECT_EQ(exact_degree(BooleanFunction::parity(n)), n);
    EXPECT_EQ(exact_degree(BooleanFunction::and_fn(n)), n);
    EXPECT_EQ(exact_degree(BooleanFunction::or_fn(n)), n);
  }
  EXPECT_EQ(exact_degree(BooleanFunction::constant(3, 1)), 0);
  BooleanFunction dictator = BooleanFunction::from_fn(3, [](std::uint32_t x) { return static_cast<int>(x & 1u); });
  EXPECT_EQ(exact_degree(dictator), 1);
}

TEST(Poly, OrTwoBestLinearFit) {
  // best linear fit of OR_2 leaves error 1/4 at every level of |x|
  PolyApprox p = chebyshev_fit(BooleanFunction::or_fn(2), 1);
  EXPECT_NEAR(p.max_deviation, 0.25, 1e-9);
  EXPECT_EQ(approx_degree(BooleanFunction::or_fn(2), 1.0 / 3.0).degree, 1);
}

TEST(Poly, ParityNeedsFullDegree) {
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(approx_degree(BooleanFunction::parity(n), 1.0 / 3.0).degree, n);
}

TEST(Poly, FitEvaluatesWithinDeviation) {
  BooleanFunction f = BooleanFunction::from_fn(3, [](std::uint32_t x) { return (x == 3u || x == 6u) ? 1 : 0; });
  PolyApprox p = chebyshev_fit(f, 2);
  for (std::uint32_t x = 0; x < 8; ++x) EXPECT_LE(std::abs(p.eval(x) - f.table[x]), p.max_deviation + 1e-9);
}

TEST(Poly, Parse) {
  EXPECT_EQ(BooleanFunction::parse("parity", 3).table, BooleanFunction::parity(3).table);
  EXPECT_EQ(BooleanFunction::parse("and", 2).table, BooleanFunction::and_fn(2).table);
  EXPECT_THROW(BooleanFunction::parse("nosuch", 2), ParameterError);
}

TEST(Poly, KappaFormula) { EXPECT_NEAR(poly_kappa(2, 0.25), std::pow(2.0, 16.0), 1e-6); }

TEST(Poly, ParityLadderLevelsByWeight) {
  MlaMatrix g = parity_ladder_gamma(3, 2.0);
  ASSERT_EQ(g.ladder_levels(), 3);
  const int ranks[] = {1, 3, 3, 1};
  for (int i = 0; i <= 3; ++i) EXPECT_EQ(g.eigenspaces[i].rank(), ranks[i]);
}

TEST(Poly, ReductionBoundVerdicts) {
  BoundReport b = poly_reduction_bound(BooleanFunction::parity(2), 1.0 / 3.0);
  ASSERT_TRUE(b.value);
  EXPECT_NEAR(*b.value, 0.5, 1e-12);
  for (const auto& v : b.verdicts) EXPECT_TRUE(v.pass) << v.name;
}

TEST(Poly, SpotcheckHasNoViolations) {
  EXPECT_TRUE(magnin_fact_spotcheck(BooleanFunction::parity(2), 1.0 / 3.0, 20, 3).pass());
}
