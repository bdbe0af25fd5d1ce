#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlb/report.hpp"

namespace qlb {

struct SuiteOptions {
  std::optional<int> n, m, k, t;
  std::optional<double> eps, eta, lambda, kappa;
  std::uint64_t seed = 0;
  int samples = 50;
};

Report holder_suite(int count, int max_dim, std::uint64_t seed);
Report space_suite(int n, int m);
Report one_query_suite(int n, int m);
Report collision_step_suite(int n, const std::vector<int>& ms, int t_max);
Report closed_form_suite(const std::vector<int>& ms, const std::vector<double>& eps);
Report progress_suite(int n, int m, int algorithms, std::uint64_t seed);
Report reduction_pack(int n_max, int m_max, int rn, int rm, double reps);
Report tensor_suite(const std::vector<int>& ks);
Report sdpt_suite(const std::vector<int>& ks, const std::vector<double>& etas, const std::vector<double>& lambdas,
                  double eps, double eta_c);
Report poly_suite(int n_max, int samples, std::uint64_t seed);
Report perm_suite(const std::vector<int>& ns, std::uint64_t seed);
Report output_condition_suite(int grams, std::uint64_t seed);

// named suites for the CLI: space, ladder, reduction, sdpt, poly, perm, all
Report run_suite(const std::string& name, const SuiteOptions& opt);
const std::vector<std::string>& suite_names();

}  // namespace qlb
