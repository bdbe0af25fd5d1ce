#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qlb/linalg.hpp"
#include "qlb/oracle.hpp"
#include "qlb/report.hpp"

namespace qlb {

struct VStateSpec {
  std::vector<int> xs;
  std::vector<int> ys;
};

struct VState {
  CVector vec;
  double alpha = 0.0;
};

std::optional<VState> v_state(const InputDistribution& dist, const ProblemSpec& spec, const VStateSpec& v);

struct SpaceChain {
  std::vector<Isometry> cumulative;  // Pi_{<=0} .. Pi_{<=N}
  std::vector<Isometry> increments;  // Pi_0 .. Pi_N

  int n() const { return static_cast<int>(cumulative.size()) - 1; }
  const Isometry& upto(int t) const;  // plateau for t > N
  const Isometry& increment(int t) const;
};

SpaceChain chain_from(std::vector<Isometry> cumulative);
SpaceChain space_chain(const InputDistribution& dist, const ProblemSpec& spec, double tol = 1e-9);

// Gamma = sum_i kappa^i Lambda_i. When the eigenvalues on a level are not
// exactly kappa^i (an operator that only approximates the ladder form),
// `values` holds the true eigenvalue of every basis column of that level.
struct MlaMatrix {
  double kappa = 2.0;
  std::vector<Isometry> eigenspaces;
  std::vector<RVector> values;  // empty, or one vector per level

  int ladder_levels() const { return static_cast<int>(eigenspaces.size()) - 1; }
  Eigen::Index dim() const { return eigenspaces.empty() ? 0 : eigenspaces.front().ambient(); }
  RVector level_values(int i) const;
  double max_eigenvalue() const;
  CMatrix dense() const;
  // max over levels of |actual - kappa^i| / kappa^i
  double eigenvalue_defect() const;
  // eigenvectors (as an isometry) with eigenvalue < lambda
  Isometry below(double lambda) const;
  Isometry at_least(double lambda) const;

  static MlaMatrix two_level(const Isometry& lambda1, double kappa);
  // groups eigenvalues within relative tol; kappa from consecutive ratios
  static MlaMatrix from_dense(const CMatrix& gamma, double tol = 1e-6);
};

Report validate_mla(const MlaMatrix& gamma, const SpaceChain& chain, const ProblemSpec& spec, double tol = 1e-9);

struct ProgressTrace {
  std::vector<double> values;
  std::vector<double> step_ratios;
  double adv_time_violation = 0.0;  // |Tr[Gamma Pi_{<=t} rho^t] - W^t|, needs a chain
};

ProgressTrace progress(const MlaMatrix& gamma, const SimTrace& trace, const SpaceChain* chain = nullptr);

struct StepBound {
  double value = 1.0;
  double norm = 0.0;
  int i = 0, x = 0, y = 0;
};

// bounds W^{t+1}/W^t
StepBound mladv_step_bound(const MlaMatrix& gamma, const SpaceChain& chain, const ProblemSpec& spec, int t);
double madv_step_bound(const CMatrix& gamma, const ProblemSpec& spec);

struct BoundParams {
  double lambda = 0.0;
  double eta = 0.0;
  double eps = 0.0;
  Isometry bad_projector;
  Isometry good_projector;
};

double eta_for(const MlaMatrix& gamma, double lam, const ProblemSpec& spec);
BoundParams make_bound_params(const MlaMatrix& gamma, double lam, double eps, const ProblemSpec& spec,
                              std::optional<double> eta = std::nullopt);

BoundReport mladv_lower_bound(const MlaMatrix& gamma, const SpaceChain& chain, const ProblemSpec& spec, double lam,
                              double eta, double eps);

// same target with the constant per-step bound madv_step_bound(Gamma)
BoundReport madv_lower_bound(const MlaMatrix& gamma, const ProblemSpec& spec, double lam, double eta, double eps);
// Gram matrix of a single-valued target: 1 iff F(f) = F(f')
CMatrix target_gram(const ProblemSpec& spec);
CMatrix gen_feasible_gram(const ProblemSpec& spec, double eps, std::uint64_t seed);
Report output_condition_check(const MlaMatrix& gamma, const BoundParams& params, const CMatrix& feasible_gram,
                              const CMatrix& target, std::uint64_t seed = 0, int restarts = 8);
double hadamard_fidelity_heuristic(const CMatrix& a, const CMatrix& b, int restarts, std::uint64_t seed);

// ||O_{x,y} Pi_{<=t} - Pi_{<=t+1} O_{x,y} Pi_{<=t}|| maximized over x, y, t
double one_query_violation(const SpaceChain& chain, const ProblemSpec& spec);
// largest decrease in t of ||Lambda_i Pi_{<=t} O Pi_{<=t-1} Lambda_{i-1}||
double monotonicity_violation(const MlaMatrix& gamma, const SpaceChain& chain, const ProblemSpec& spec);

}  // namespace qlb
