#pragma once

#include <optional>
#include <vector>

#include "qlb/compressed.hpp"
#include "qlb/ladder.hpp"

namespace qlb {

// Func = all bijections on [N), in lexicographic (Lehmer rank) order; F(f) = f^{-1}(0)
ProblemSpec perm_problem(int n);
std::int64_t lehmer_rank(const std::vector<int>& perm);

std::optional<VState> perm_v_state(const ProblemSpec& spec, const std::vector<int>& xs, const std::vector<int>& ys);

struct PermChains {
  std::vector<Isometry> a;         // A_0..A_N
  std::vector<Isometry> b;         // B_1..B_N at index t-1
  std::vector<Isometry> hat_high;  // hat Pi_{1,t}, t = 0..N
  std::vector<Isometry> hat_low;   // hat Pi_{0,t}, t = 0..N

  int n() const { return static_cast<int>(a.size()) - 1; }
  const Isometry& b_at(int t) const { return b[static_cast<std::size_t>(t - 1)]; }
  SpaceChain space() const { return chain_from(a); }
};

PermChains perm_chains(const ProblemSpec& spec);
// B_t from every ordered constraint tuple with a zero value in any slot (brute force)
std::vector<Isometry> perm_b_any_slot(const ProblemSpec& spec);

MlaMatrix perm_mla(const PermChains& chains, double kappa);
Report check_perm_subsets(const PermChains& chains);
Report check_perm_proj(const PermChains& chains, double kappa = 2.0);

StepNorm perm_step_norm(const ProblemSpec& spec, const PermChains& chains, int t);
Report perm_eta(const ProblemSpec& spec, const PermChains& chains, int big_t);

struct PermBounds {
  double cited = 0.0;
  double derived = 0.0;
};
PermBounds perm_success_bound(long long n, long long big_t);
BoundReport perm_bound_report(long long n, long long big_t);

}  // namespace qlb
