#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qlb/linalg.hpp"
#include "qlb/rng.hpp"

namespace qlb {

std::int64_t ipow(std::int64_t b, int e);

// X = [N), Y = [M), Func a subset of Y^X in a fixed order, F: Func -> 2^Sigma.
// Function tables are coded little-endian in base M: code = sum_x f(x) M^x.
struct ProblemSpec {
  std::string name;
  int n = 0;
  int m = 0;
  int sigma = 0;
  std::vector<int> table;                 // |Func| x n values, row-major
  std::vector<std::int64_t> codes;        // code of each position
  std::vector<int> position;              // code -> position, -1 outside Func
  std::vector<std::vector<int>> target;   // sorted valid outputs per position
  std::vector<std::string> sigma_labels;  // optional

  int size() const { return static_cast<int>(codes.size()); }
  int value(int f, int x) const { return table[static_cast<std::size_t>(f) * n + x]; }
  std::vector<int> function(int f) const;
  bool full() const { return static_cast<std::int64_t>(codes.size()) == ipow(m, n); }
  bool single_valued() const;
  int pos_of(std::int64_t code) const;
};

using FuncTable = std::vector<int>;
using TargetFn = std::function<std::vector<int>(const FuncTable&)>;
using FilterFn = std::function<bool(const FuncTable&)>;

std::int64_t encode(const FuncTable& f, int m);
FuncTable decode(std::int64_t code, int n, int m);

// Func enumerated in code order
ProblemSpec make_problem(std::string name, int n, int m, int sigma, const FilterFn& filter,
                         const TargetFn& target);
// Func given explicitly, in the given order
ProblemSpec make_problem(std::string name, int n, int m, int sigma,
                         const std::vector<FuncTable>& funcs, const TargetFn& target);

ProblemSpec full_problem(int n, int m);                  // Sigma empty
ProblemSpec identity_problem(int n, int m);              // F(f) = {f}
ProblemSpec value_problem(int n, int m, int x0);         // F(f) = {f(x0)}
ProblemSpec unique_search_problem(int n);                // weight-one strings, F(f) = {i : f(i) = 1}
ProblemSpec constant_target_problem(int n, int m, int sigma, const std::vector<int>& outputs);

struct InputDistribution {
  std::vector<double> weights;  // indexed by Func position

  static InputDistribution uniform(const ProblemSpec& spec);
  CVector purification() const;
  void validate(const ProblemSpec& spec) const;
};

struct QueryAlgorithm {
  int t_queries = 0;
  std::vector<CMatrix> unitaries;  // U_0..U_T on W (x) X (x) Y
  int workspace_dim = 1;
  int output_dim = 1;  // W_O: the output is w mod output_dim

  Eigen::Index dim(const ProblemSpec& spec) const {
    return static_cast<Eigen::Index>(workspace_dim) * spec.n * spec.m;
  }
  void validate(const ProblemSpec& spec) const;
};

struct SimTrace {
  // psi_t as a (W N M) x |Func| matrix; the flat state index is row * |Func| + f
  std::vector<CMatrix> states;
  std::vector<CMatrix> input_densities;
};

CMatrix qft(int m);
CMatrix qft_extended(int m);  // on Y + {bot}, bot = index m fixed
CVector phase_diag(const ProblemSpec& spec, int x, int y);
CMatrix phase_oracle_component(const ProblemSpec& spec, int x, int y);
CMatrix purified_oracle(const ProblemSpec& spec);
// sum_{x,y} |x><x| (x) |y^><y^| (x) O_{x, sign*y}; sign = -1 is the form that
// matches the additive oracle under the +2 pi i transform
CMatrix query_reconstruction(const ProblemSpec& spec, int sign);
// QFT^{(x) N} |f> restricted to Func (full Func only)
CVector fourier_input_vector(const ProblemSpec& spec, std::int64_t code);

void apply_oracle(CMatrix& psi, const ProblemSpec& spec);
SimTrace run_algorithm(const QueryAlgorithm& alg, const InputDistribution& dist, const ProblemSpec& spec);
double success_probability(const SimTrace& trace, const ProblemSpec& spec, const QueryAlgorithm& alg);
Isometry f_z_projector(const ProblemSpec& spec, int z);

// algorithm builders
CMatrix random_unitary(Eigen::Index dim, Rng& rng);
CMatrix permutation_matrix(const std::vector<Eigen::Index>& image);
QueryAlgorithm identity_algorithm(const ProblemSpec& spec, int t, int workspace_dim, int output_dim);
QueryAlgorithm random_algorithm(const ProblemSpec& spec, int t, int workspace_dim, int output_dim, Rng& rng);

using OutputFn = std::function<int(const std::vector<int>& answers)>;
// Queries xs in order and stores each answer in a base-M digit of W. With
// keep_last the final answer stays in Y, saving a factor M of workspace.
// W = output_dim * M^(stored answers).
QueryAlgorithm lookup_algorithm(const ProblemSpec& spec, const std::vector<int>& xs, int output_dim,
                                const OutputFn& output, bool keep_last = false);
// U_t <- U_t exp(i s H_t) with H_t a random Hermitian of unit spectral norm
QueryAlgorithm perturb_algorithm(const QueryAlgorithm& alg, double strength, Rng& rng);

}  // namespace qlb
