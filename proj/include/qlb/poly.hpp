#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qlb/ladder.hpp"

namespace qlb {

// F: {0,1}^n -> {0,1}; table index = sum_i x_i 2^i
struct BooleanFunction {
  int n = 0;
  std::vector<int> table;

  static BooleanFunction from_fn(int n, const std::function<int(std::uint32_t)>& f);
  static BooleanFunction parity(int n);
  static BooleanFunction or_fn(int n);
  static BooleanFunction and_fn(int n);
  static BooleanFunction constant(int n, int v);
  // "parity", "or", "and", "zero", "one", or a hex / 0b bitstring truth table
  static BooleanFunction parse(const std::string& s, int n);
  void validate() const;
};

struct PolyApprox {
  int degree = 0;
  double max_deviation = 0.0;
  std::map<std::uint32_t, double> coefficients;  // subset mask -> c_S

  double eval(std::uint32_t x) const;
};

// min over multilinear p of degree <= d of max_x |p(x) - F(x)|
PolyApprox chebyshev_fit(const BooleanFunction& f, int d);
PolyApprox approx_degree(const BooleanFunction& f, double eps);
// exact multilinear degree by Moebius inversion
int exact_degree(const BooleanFunction& f);

ProblemSpec boolean_problem(const BooleanFunction& f);
MlaMatrix parity_ladder_gamma(int n, double kappa);
CMatrix target_gram(const BooleanFunction& f);

// kappa = 2^{4(n - log2 eps)}
double poly_kappa(int n, double eps);
BoundReport poly_reduction_bound(const BooleanFunction& f, double eps);
Report magnin_fact_spotcheck(const BooleanFunction& f, double eps, int samples, std::uint64_t seed,
                             double kappa = 0.0);

// small dense simplex: maximize c.x subject to A x <= b, x >= 0, b >= 0
struct LpResult {
  bool bounded = true;
  double value = 0.0;
  RVector x;
};
LpResult simplex_max(const Eigen::MatrixXd& a, const RVector& b, const RVector& c);

}  // namespace qlb
