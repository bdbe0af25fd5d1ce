#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "qlb/compressed.hpp"
#include "qlb/error.hpp"
#include "qlb/reductions.hpp"

using namespace qlb;

namespace {

std::vector<double> sorted(const RVector& v) {
  std::vector<double> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

// eigenvalues computed independently by dense diagonalization of Comp^dag P Comp
TEST(Reductions, CollisionGammaLevelsAtN3M2) {
  Property p = collision_property(3, 2);
  ProblemSpec s = full_problem(3, 2);
  MlaMatrix g = gamma_from_property(s, p, 5.0);
  auto lo = sorted(g.level_values(0));
  ASSERT_EQ(lo.size(), 4u);
  for (double v : lo) EXPECT_NEAR(v, 1.0, 1e-12);
  auto hi = sorted(g.level_values(1));
  ASSERT_EQ(hi.size(), 4u);
  EXPECT_NEAR(hi[0], 3.0, 1e-9);
  EXPECT_NEAR(hi[2], 3.0, 1e-9);
  EXPECT_NEAR(hi[3], 5.0, 1e-9);
  ProblemSpec ps = problem_from_property(3, 2, p);
  MlaMatrix gp = gamma_from_property(ps, p, 5.0);
  EXPECT_NEAR(eta_for(gp, 5.0, ps), 1.0, 1e-9);
  EXPECT_NEAR(eta_for(gp, 3.0, ps), 0.75, 1e-9);
}

TEST(Reductions, EqualProjectorsHold) {
  for (auto [n, m] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
    ProblemSpec s = full_problem(n, m);
    EXPECT_TRUE(check_equal_proj(s, collision_property(n, m)).pass()) << n << m;
    EXPECT_TRUE(check_equal_proj(s, preimage_property(n, m)).pass()) << n << m;
  }
}

TEST(Reductions, EtaBoundChain) {
  ProblemSpec s = full_problem(2, 3);
  Property p = collision_property(2, 3);
  for (int z = 0; z < static_cast<int>(p.tuples.size()); ++z) EXPECT_TRUE(eta_bound_check(s, p, z).pass()) << z;
  EXPECT_THROW(eta_bound_check(s, p, -1), ParameterError);
}

TEST(Reductions, KappaFormula) {
  const double eps = 0.1, eta = 0.25;
  const double gap = std::sqrt(1 - eps) - std::sqrt(eta);
  EXPECT_NEAR(reduction_kappa(eps, eta), 1 + (std::exp(1.0) - 1) / (gap * gap), 1e-12);
}

TEST(Reductions, GateRejectsSmallM) {
  try {
    gate_reduction(4, 2, 0.1);
    FAIL();
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("9 - 4 sqrt 2"), std::string::npos);
  }
  EXPECT_NO_THROW(gate_reduction(8, 2, 0.1));
}

TEST(Reductions, TensorPowerSpectrum) {
  Property p = preimage_property(1, 3);
  ProblemSpec s = full_problem(1, 3);
  MlaMatrix g = gamma_from_property(s, p, 2.0);
  MlaMatrix g2 = tensor_power(g, 2);
  EXPECT_EQ(g2.dim(), 9);
  CMatrix d = g.dense();
  EXPECT_LT((g2.dense() - kron(d, d)).norm(), 1e-9);
}

TEST(Reductions, ProductChainMatchesKFoldChain) {
  ProblemSpec s = full_problem(1, 3);
  InputDistribution u = InputDistribution::uniform(s);
  SpaceChain base = space_chain(u, s);
  auto pc = product_chain(base, 2);
  ProblemSpec s2 = full_problem(2, 3);
  SpaceChain c2 = space_chain(power_distribution(u, s, 2), s2);
  for (int t = 0; t <= 2; ++t) {
    EXPECT_LE(pc[t].excess(c2.upto(t)), 1e-9);
    EXPECT_LE(c2.upto(t).excess(pc[t]), 1e-9);
  }
}

TEST(Reductions, SdptEtaPowerAndGates) {
  for (int k : {361, 400, 1000})
    for (double eta : {0.5, 0.25}) EXPECT_TRUE(sdpt_scalar_checks(2.0, 0.4, eta, k).report.checks[0].pass);
  EXPECT_LT(sdpt_scalar_checks(10.0, 0.5, 0.125, 400).log_c, 0.0);
  EXPECT_THROW(sdpt_scalar_checks(2.0, 0.5, 0.125, 100), ParameterError);
  EXPECT_THROW(sdpt_scalar_checks(2.0, 0.5, 0.75, 400), ParameterError);
}

TEST(Reductions, FactorCheckAtM8) {
  Report r = reduction_factor_check(full_problem(2, 8), collision_property(2, 8), 0.1);
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name;
}
