#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qlb/linalg.hpp"
#include "qlb/oracle.hpp"
#include "qlb/report.hpp"

namespace qlb {

struct Database {
  static constexpr int kBottom = -1;
  std::vector<int> entries;  // D(x) in [M) or kBottom

  int size() const;
  bool operator==(const Database& o) const { return entries == o.entries; }
};

using Pair = std::pair<int, int>;  // (x, y)

struct Property {
  std::string name;
  int arity = 0;
  std::vector<std::vector<Pair>> tuples;

  bool consistent(std::size_t i, const std::vector<int>& values) const;  // values may hold kBottom
};

Property collision_property(int n, int m);       // ((x1,y),(x2,y)), x1 != x2
Property preimage_property(int n, int m, int y0 = 0);  // ((x, y0))
Property empty_property(int arity);

// Func = Y^X, Sigma = the tuples of p, F(f) = tuples consistent with f
ProblemSpec problem_from_property(int n, int m, const Property& p);

CMatrix comp_isometry(const ProblemSpec& spec);
std::int64_t db_index(const Database& d, int m);
Database db_decode(std::int64_t index, int n, int m);
std::vector<Database> all_databases(int n, int m);
std::vector<Database> databases_upto(int n, int m, int s);
CMatrix compressed_oracle(const ProblemSpec& spec, int x, int y);
std::vector<Database> property_databases(const ProblemSpec& spec, const Property& p);
Isometry db_projector(const std::vector<Database>& dbs, const ProblemSpec& spec);

// Comp^dag P_S Comp for a database set S, as a dense operator on C[Y^X]
CMatrix comp_conjugate(const CMatrix& comp, const std::vector<Database>& dbs, int m);

struct StepNorm {
  double value = 0.0;
  int x = 0;
  int y = 0;
};

StepNorm comp_step_norm(const ProblemSpec& spec, const Property& p, int t);

struct CompMode {
  bool analytic = false;
  std::function<double(long long)> step;  // analytic per-step bound
  long long max_t = 10'000'000;
};

BoundReport comp_lower_bound(const ProblemSpec& spec, const Property& p, double eps, const CompMode& mode);
// analytic mode without materializing anything; n is only echoed
BoundReport comp_lower_bound(int n, int m, int k, double eps, const CompMode& mode);

// sqrt((t-1)/M), the collision per-step bound
std::function<double(long long)> collision_step_formula(int m);

}  // namespace qlb
