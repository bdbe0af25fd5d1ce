#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "qlb/compressed.hpp"
#include "qlb/error.hpp"

using namespace qlb;

TEST(Compressed, CompIsAnIsometry) {
  for (auto [n, m] : {std::pair{2, 2}, std::pair{3, 2}, std::pair{2, 3}}) {
    CMatrix c = comp_isometry(full_problem(n, m));
    EXPECT_EQ(c.rows(), static_cast<Eigen::Index>(std::pow(m + 1, n)));
    EXPECT_LT((c.adjoint() * c - CMatrix::Identity(c.cols(), c.cols())).norm(), 1e-10);
  }
}

TEST(Compressed, DatabaseIndexRoundTrip) {
  for (std::int64_t i = 0; i < 27; ++i) EXPECT_EQ(db_index(db_decode(i, 3, 2), 2), i);
  Database d = db_decode(db_index(Database{{Database::kBottom, 1}}, 2), 2, 2);
  EXPECT_EQ(d.size(), 1);
}

TEST(Compressed, DatabasesUptoCounts) {
  // sum_{s<=t} C(3,s) M^s databases of size <= t
  EXPECT_EQ(databases_upto(3, 2, 0).size(), 1u);
  EXPECT_EQ(databases_upto(3, 2, 1).size(), 7u);
  EXPECT_EQ(databases_upto(3, 2, 3).size(), 27u);
}

TEST(Compressed, CollisionTuplesAreDistinctInputsSameOutput) {
  Property p = collision_property(3, 2);
  EXPECT_EQ(p.arity, 2);
  EXPECT_FALSE(p.tuples.empty());
  for (const auto& t : p.tuples) {
    EXPECT_NE(t[0].first, t[1].first);
    EXPECT_EQ(t[0].second, t[1].second);
  }
}

TEST(Compressed, PropertyDatabasesMatchBruteForce) {
  ProblemSpec s = full_problem(3, 2);
  Property p = collision_property(3, 2);
  auto dp = property_databases(s, p);
  std::size_t brute = 0;
  for (const auto& d : all_databases(3, 2)) {
    bool hit = false;
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        hit = hit || (d.entries[a] != Database::kBottom && d.entries[a] == d.entries[b]);
    brute += hit;
  }
  EXPECT_EQ(dp.size(), brute);
}

TEST(Compressed, CollisionStepNorms) {
  ProblemSpec s = full_problem(3, 3);
  Property p = collision_property(3, 3);
  EXPECT_EQ(comp_step_norm(s, p, 1).value, 0.0);
  for (int t = 2; t <= 3; ++t) EXPECT_LE(comp_step_norm(s, p, t).value, std::sqrt((t - 1.0) / 3.0) + 1e-9);
  EXPECT_THROW(comp_step_norm(s, p, 0), ParameterError);
}

TEST(Compressed, AnalyticBoundIsSmallestT) {
  const int m = 64;
  const double eps = 0.5;
  BoundReport r = comp_lower_bound(3, m, 2, eps, CompMode{true, collision_step_formula(m)});
  const double target = std::sqrt(1 - eps) - std::sqrt(2.0 / m);
  double sum = 0.0;
  long long t = 0;
  while (sum < target) sum += std::sqrt(static_cast<double>(t++) / m);
  ASSERT_TRUE(r.T);
  EXPECT_EQ(*r.T, t);
}

TEST(Compressed, GateNamesTheViolatedRange) {
  try {
    comp_lower_bound(3, 2, 2, 0.9, CompMode{true, collision_step_formula(2)});
    FAIL();
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("1 - k/M"), std::string::npos);
  }
  EXPECT_THROW(comp_lower_bound(3, 16, 2, 0.0, CompMode{true, collision_step_formula(16)}), ParameterError);
}

TEST(Compressed, NumericBoundSteps) {
  BoundReport r = comp_lower_bound(full_problem(2, 3), preimage_property(2, 3), 0.1, CompMode{});
  ASSERT_TRUE(r.T);
  EXPECT_GE(*r.T, 1);
  for (const auto& v : r.verdicts) EXPECT_TRUE(v.pass) << v.name;
}

TEST(Compressed, CompressedOracleIntertwinesComp) {
  ProblemSpec s = full_problem(2, 3);
  CMatrix c = comp_isometry(s);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 3; ++y) {
      CMatrix o = compressed_oracle(s, x, y);
      EXPECT_LT((o * c - c * phase_diag(s, x, y).asDiagonal().toDenseMatrix()).norm(), 1e-10);
    }
  // zero phase acts as the identity on the image of Comp
  CMatrix o0 = compressed_oracle(s, 0, 0);
  EXPECT_LT((o0 - c * c.adjoint()).norm(), 1e-10);
}
