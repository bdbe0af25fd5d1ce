#include <gtest/gtest.h>

#include <cmath>

#include "qlb/compressed.hpp"
#include "qlb/error.hpp"
#include "qlb/ladder.hpp"
#include "qlb/poly.hpp"
#include "qlb/reductions.hpp"

using namespace qlb;

namespace {

double binom(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(Ladder, VStateIsNormalizedIndicator) {
  ProblemSpec s = full_problem(2, 3);
  auto v = v_state(InputDistribution::uniform(s), s, {{0}, {2}});
  ASSERT_TRUE(v);
  EXPECT_NEAR(v->alpha, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(v->vec.norm(), 1.0, 1e-12);
}

TEST(Ladder, SpaceChainRanksCountLowDegreeFunctions) {
  for (auto [n, m] : {std::pair{3, 2}, std::pair{2, 3}, std::pair{3, 3}}) {
    ProblemSpec s = full_problem(n, m);
    SpaceChain c = space_chain(InputDistribution::uniform(s), s);
    double expect = 0;
    for (int t = 0; t <= n; ++t) {
      expect += binom(n, t) * std::pow(m - 1, t);
      EXPECT_EQ(static_cast<double>(c.upto(t).rank()), expect);
    }
  }
}

TEST(Ladder, OneQueryRelationHolds) {
  ProblemSpec s = full_problem(2, 3);
  SpaceChain c = space_chain(InputDistribution::uniform(s), s);
  EXPECT_LE(one_query_violation(c, s), 1e-10);
}

TEST(Ladder, ParityLadderIsMla) {
  for (int n = 1; n <= 3; ++n) {
    ProblemSpec s = full_problem(n, 2);
    SpaceChain c = space_chain(InputDistribution::uniform(s), s);
    Report r = validate_mla(parity_ladder_gamma(n, 3.0), c, s);
    EXPECT_TRUE(r.pass()) << n;
  }
}

TEST(Ladder, FromDenseRecoversLevels) {
  MlaMatrix g = parity_ladder_gamma(2, 3.0);
  MlaMatrix h = MlaMatrix::from_dense(g.dense());
  EXPECT_NEAR(h.kappa, 3.0, 1e-9);
  ASSERT_EQ(h.ladder_levels(), 2);
  for (int i = 0; i <= 2; ++i) EXPECT_EQ(h.eigenspaces[i].rank(), g.eigenspaces[i].rank());
}

TEST(Ladder, ProgressStartsAtOneAndStepsAreBounded) {
  Property p = collision_property(2, 2);
  ProblemSpec s = problem_from_property(2, 2, p);
  MlaMatrix g = gamma_from_property(s, p, 4.0);
  SpaceChain c = space_chain(InputDistribution::uniform(s), s);
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    QueryAlgorithm a = random_algorithm(s, 2, s.sigma, s.sigma, rng);
    SimTrace tr = run_algorithm(a, InputDistribution::uniform(s), s);
    ProgressTrace pt = progress(g, tr, &c);
    EXPECT_NEAR(pt.values.front(), 1.0, 1e-9);
    EXPECT_LE(pt.adv_time_violation, 1e-9);
    const double madv = madv_step_bound(g.dense(), s);
    for (std::size_t t = 0; t < pt.step_ratios.size(); ++t) {
      EXPECT_LE(pt.step_ratios[t], mladv_step_bound(g, c, s, static_cast<int>(t)).value + 1e-8);
      EXPECT_LE(pt.step_ratios[t], madv + 1e-8);
    }
  }
}

TEST(Ladder, BoundGates) {
  Property p = collision_property(2, 2);
  ProblemSpec s = problem_from_property(2, 2, p);
  MlaMatrix g = gamma_from_property(s, p, 4.0);
  SpaceChain c = space_chain(InputDistribution::uniform(s), s);
  EXPECT_THROW(mladv_lower_bound(g, c, s, g.max_eigenvalue() * 2, 0.5, 0.1), ParameterError);
  EXPECT_THROW(mladv_lower_bound(g, c, s, 1.0, 0.5, 0.1), ParameterError);
  const double lam = g.max_eigenvalue();
  const double eta = eta_for(g, lam, s);
  EXPECT_THROW(mladv_lower_bound(g, c, s, lam, eta - 0.1, 0.1), ParameterError);
  EXPECT_THROW(mladv_lower_bound(g, c, s, lam, eta, 1.0 - eta + 0.01), ParameterError);
  BoundReport b = mladv_lower_bound(g, c, s, lam, eta, 1.0 - eta);
  ASSERT_TRUE(b.T);
  EXPECT_EQ(*b.T, 0);  // gap vanishes at eps = 1 - eta
}

TEST(Ladder, OutputConditionOnFeasibleGrams) {
  ProblemSpec s = boolean_problem(BooleanFunction::parity(2));
  MlaMatrix g = parity_ladder_gamma(2, 4.0);
  BoundParams bp = make_bound_params(g, 4.0, 0.1, s);
  CMatrix target = target_gram(s);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    CMatrix n = gen_feasible_gram(s, 0.1, seed);
    EXPECT_TRUE(output_condition_check(g, bp, n, target, seed).pass()) << seed;
  }
}

TEST(Ladder, HadamardFidelityOfEqualGramsIsOne) {
  ProblemSpec s = boolean_problem(BooleanFunction::parity(2));
  CMatrix t = target_gram(s);
  EXPECT_NEAR(hadamard_fidelity_heuristic(t, t, 2, 1), 1.0, 1e-6);
}
