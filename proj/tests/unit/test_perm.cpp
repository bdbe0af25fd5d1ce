#include <gtest/gtest.h>

#include <cmath>

#include "qlb/error.hpp"
#include "qlb/perm.hpp"

using namespace qlb;

TEST(Perm, LehmerRank) {
  EXPECT_EQ(lehmer_rank({0, 1, 2, 3}), 0);
  EXPECT_EQ(lehmer_rank({3, 2, 1, 0}), 23);
  EXPECT_EQ(lehmer_rank({1, 0, 2}), 2);
}

TEST(Perm, ProblemOrderIsLexicographic) {
  ProblemSpec s = perm_problem(4);
  ASSERT_EQ(s.size(), 24);
  for (int f = 0; f < s.size(); ++f) EXPECT_EQ(lehmer_rank(s.function(f)), f);
  EXPECT_THROW(perm_problem(7), SizeError);
  EXPECT_THROW(perm_problem(1), ParameterError);
}

// dimension of degree <= t functions on S_4: irreps with first row >= 4 - t
TEST(Perm, ChainRanksAtN4) {
  PermChains c = perm_chains(perm_problem(4));
  EXPECT_EQ(c.a[0].rank(), 1);
  EXPECT_EQ(c.a[1].rank(), 10);
  EXPECT_EQ(c.a[2].rank(), 23);
  EXPECT_EQ(c.a[3].rank(), 24);
}

// regression: 17 degenerate generators in 24 dimensions once produced a wrong span
TEST(Perm, DegenerateSpanIsExact) {
  ProblemSpec s = perm_problem(4);
  std::vector<CVector> g = {InputDistribution::uniform(s).purification()};
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) g.push_back(perm_v_state(s, {x}, {y})->vec);
  Isometry a = span_isometry(g);
  EXPECT_EQ(a.rank(), 10);
  for (const auto& v : g) EXPECT_LT((v - a.projector() * v).norm(), 1e-10);
}

TEST(Perm, SubsetChainAndProjectorIdentities) {
  for (int n : {3, 4}) {
    ProblemSpec s = perm_problem(n);
    PermChains c = perm_chains(s);
    EXPECT_TRUE(check_perm_subsets(c).pass()) << n;
    EXPECT_TRUE(check_perm_proj(c).pass()) << n;
    EXPECT_TRUE(validate_mla(perm_mla(c, 2.0), c.space(), s).pass()) << n;
  }
}

TEST(Perm, FirstSlotGeneratorsSpanAnySlotSpace) {
  ProblemSpec s = perm_problem(4);
  PermChains c = perm_chains(s);
  auto any = perm_b_any_slot(s);
  for (int t = 1; t <= 4; ++t) {
    EXPECT_LE(any[t - 1].excess(c.b_at(t)), 1e-10);
    EXPECT_LE(c.b_at(t).excess(any[t - 1]), 1e-10);
  }
}

TEST(Perm, SuccessBounds) {
  PermBounds b = perm_success_bound(1000, 10);
  EXPECT_NEAR(b.cited, std::pow(1 + 20 * std::sqrt(2.0), 2) / 960, 1e-12);
  EXPECT_NEAR(b.derived, 81.0 * 81.0 / 960, 1e-12);
  EXPECT_NEAR(perm_success_bound(50, 0).cited, 1.0 / 50, 1e-15);
  EXPECT_THROW(perm_success_bound(40, 10), ParameterError);
}

TEST(Perm, EtaAtZeroQueriesIsTight) {
  ProblemSpec s = perm_problem(4);
  PermChains c = perm_chains(s);
  Report r = perm_eta(s, c, 0);
  EXPECT_NEAR(r.data["reachable_norm"].get<double>(), 0.5, 1e-9);
  EXPECT_THROW(perm_eta(s, c, 2), ParameterError);
}
