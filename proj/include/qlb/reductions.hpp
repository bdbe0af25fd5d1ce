#pragma once

#include <vector>

#include "qlb/compressed.hpp"
#include "qlb/ladder.hpp"

namespace qlb {

// Comp^dag P_{D_P} Comp on C[Y^X]
CMatrix property_lambda1(const ProblemSpec& spec, const Property& p);

// Gamma = (I - Lambda1) + kappa Lambda1 with Lambda1 as above. Level 0 is the
// kernel of Lambda1, level 1 its support; the true eigenvalues 1 + (kappa-1) mu
// are kept per column.
MlaMatrix gamma_from_property(const ProblemSpec& spec, const Property& p, double kappa);

Report check_equal_proj(const ProblemSpec& spec, const Property& p);
Report eta_bound_check(const ProblemSpec& spec, const Property& p, int z);

// lambda = kappa = 1 + (e - 1)/(sqrt(1-eps) - sqrt(eta))^2
double reduction_kappa(double eps, double eta);
void gate_reduction(int m, int k, double eps);
Report reduction_factor_check(const ProblemSpec& spec, const Property& p, double eps);

MlaMatrix tensor_power(const MlaMatrix& base, int k);
// k-fold input distribution on (Y^X)^k = Y^{kN}, f' = sum_j code(f_j) (M^N)^j
InputDistribution power_distribution(const InputDistribution& dist, const ProblemSpec& spec, int k);
// sum_{t_1 + ... + t_k <= t} Pi_{t_1} (x) ... (x) Pi_{t_k}, all t up to kN
std::vector<Isometry> product_chain(const SpaceChain& base, int k);

struct SdptScalars {
  double log_c = 0.0;  // ln c_k
  double c = 0.0;
  double lambda_prime = 0.0;
  double log_eta_prime = 0.0;
  Report report;
};

SdptScalars sdpt_scalar_checks(double lam, double eps, double eta, int k);
BoundReport sdpt_bound_report(const BoundReport& base, int k);

}  // namespace qlb
