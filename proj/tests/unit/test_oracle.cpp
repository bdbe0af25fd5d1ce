#include <gtest/gtest.h>

#include <cmath>

#include "qlb/error.hpp"
#include "qlb/oracle.hpp"

using namespace qlb;

TEST(Oracle, EncodeDecodeRoundTrip) {
  for (std::int64_t c = 0; c < 27; ++c) EXPECT_EQ(encode(decode(c, 3, 3), 3), c);
  FuncTable f = decode(5, 3, 2);  // little-endian: 5 = 1 + 0*2 + 1*4
  EXPECT_EQ(f, (FuncTable{1, 0, 1}));
}

TEST(Oracle, QftIsUnitaryWithFlatEntries) {
  for (int m : {2, 3, 5}) {
    CMatrix q = qft(m);
    EXPECT_LT((q.adjoint() * q - CMatrix::Identity(m, m)).norm(), 1e-12);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) EXPECT_NEAR(std::abs(q(i, j)), 1.0 / std::sqrt(m), 1e-12);
  }
  CMatrix e = qft_extended(3);
  EXPECT_NEAR(std::abs(e(3, 3)), 1.0, 1e-12);
}

TEST(Oracle, PurifiedOracleIsUnitary) {
  ProblemSpec s = full_problem(2, 2);
  CMatrix o = purified_oracle(s);
  EXPECT_LT((o.adjoint() * o - CMatrix::Identity(o.rows(), o.cols())).norm(), 1e-10);
}

TEST(Oracle, PhaseDecompositionReconstructsOracle) {
  for (auto [n, m] : {std::pair{2, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
    ProblemSpec s = full_problem(n, m);
    EXPECT_LT((query_reconstruction(s, -1) - purified_oracle(s)).norm(), 1e-10) << n << " " << m;
  }
}

TEST(Oracle, PhaseComponentIsDiagonalCharacter) {
  ProblemSpec s = full_problem(2, 3);
  CVector d = phase_diag(s, 1, 2);
  for (int f = 0; f < s.size(); ++f) {
    const double ang = 2.0 * M_PI * 2 * s.value(f, 1) / 3.0;
    EXPECT_NEAR(std::abs(d(f) - std::polar(1.0, ang)), 0.0, 1e-12);
  }
}

TEST(Oracle, LookupAlgorithmSolvesValueProblem) {
  ProblemSpec s = value_problem(2, 3, 1);
  QueryAlgorithm a = lookup_algorithm(s, {1}, 3, [](const std::vector<int>& ans) { return ans[0]; });
  SimTrace tr = run_algorithm(a, InputDistribution::uniform(s), s);
  EXPECT_NEAR(success_probability(tr, s, a), 1.0, 1e-10);
  EXPECT_LT((tr.input_densities.front() - [&] {
               CVector d = InputDistribution::uniform(s).purification();
               return CMatrix(d * d.adjoint());
             }()).norm(),
            1e-10);
}

TEST(Oracle, ZeroQueryGuessHasPriorSuccess) {
  ProblemSpec s = value_problem(2, 3, 0);
  QueryAlgorithm a = identity_algorithm(s, 0, 3, 3);
  SimTrace tr = run_algorithm(a, InputDistribution::uniform(s), s);
  EXPECT_NEAR(success_probability(tr, s, a), 1.0 / 3.0, 1e-10);
}

TEST(Oracle, RandomAlgorithmsPreserveNorm) {
  Rng rng(7);
  ProblemSpec s = full_problem(2, 2);
  QueryAlgorithm a = random_algorithm(s, 3, 2, 2, rng);
  SimTrace tr = run_algorithm(a, InputDistribution::uniform(s), s);
  for (const auto& st : tr.states) EXPECT_NEAR(st.squaredNorm(), 1.0, 1e-10);
  for (const auto& rho : tr.input_densities) EXPECT_NEAR(rho.trace().real(), 1.0, 1e-10);
}

TEST(Oracle, FzProjectorsPartitionForSingleValuedTargets) {
  ProblemSpec s = value_problem(2, 2, 0);
  Eigen::Index total = 0;
  for (int z = 0; z < s.sigma; ++z) total += f_z_projector(s, z).rank();
  EXPECT_EQ(total, s.size());
}

TEST(Oracle, RejectsBadSizes) {
  EXPECT_THROW(full_problem(0, 2), ParameterError);
  EXPECT_THROW(value_problem(2, 2, 5), ParameterError);
}
