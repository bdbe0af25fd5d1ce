#include "qlb/compressed.hpp"

#include <algorithm>
#include <cmath>

#include "qlb/error.hpp"

namespace qlb {

int Database::size() const {
  return static_cast<int>(std::count_if(entries.begin(), entries.end(), [](int v) { return v != kBottom; }));
}

bool Property::consistent(std::size_t i, const std::vector<int>& values) const {
  for (const auto& [x, y] : tuples[i])
    if (values[static_cast<std::size_t>(x)] != y) return false;
  return true;
}

Property collision_property(int n, int m) {
  Property p{"collision", 2, {}};
  for (int x1 = 0; x1 < n; ++x1)
    for (int x2 = 0; x2 < n; ++x2)
      if (x1 != x2)
        for (int y = 0; y < m; ++y) p.tuples.push_back({{x1, y}, {x2, y}});
  return p;
}

Property preimage_property(int n, int m, int y0) {
  if (y0 < 0 || y0 >= m) throw ParameterError("preimage_property: y0 outside Y");
  Property p{"preimage", 1, {}};
  for (int x = 0; x < n; ++x) p.tuples.push_back({{x, y0}});
  return p;
}

Property empty_property(int arity) { return Property{"empty", arity, {}}; }

ProblemSpec problem_from_property(int n, int m, const Property& p) {
  ProblemSpec s = make_problem(p.name, n, m, static_cast<int>(p.tuples.size()), nullptr,
                               [&p](const FuncTable& f) {
                                 std::vector<int> out;
                                 for (std::size_t i = 0; i < p.tuples.size(); ++i)
                                   if (p.consistent(i, f)) out.push_back(static_cast<int>(i));
                                 return out;
                               });
  for (const auto& t : p.tuples) {
    std::string l;
    for (const auto& [x, y] : t) l += "(" + std::to_string(x) + "," + std::to_string(y) + ")";
    s.sigma_labels.push_back(l);
  }
  return s;
}

namespace {

void require_full(const ProblemSpec& spec, const char* what) {
  if (!spec.full()) throw ParameterError(std::string(what) + ": needs Func = Y^X");
}

}  // namespace

CMatrix comp_isometry(const ProblemSpec& spec) {
  require_full(spec, "comp_isometry");
  const int m = spec.m;
  require_size(static_cast<std::size_t>(ipow(m + 1, spec.n)), caps().max_state_dim, "comp_isometry");
  require_size(static_cast<std::size_t>(ipow(m + 1, spec.n) * ipow(m, spec.n)), caps().max_kron_entries,
               "comp_isometry entries");
  // Comp_x = |bot><0^| + (I - |0^><0^|) as an (M+1) x M matrix, bot = row M
  CMatrix c1 = CMatrix::Zero(m + 1, m);
  const double u = 1.0 / m;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) c1(i, j) = (i == j ? 1.0 : 0.0) - u;
  for (int j = 0; j < m; ++j) c1(m, j) = 1.0 / std::sqrt(static_cast<double>(m));
  CMatrix c = c1;
  for (int x = 1; x < spec.n; ++x) c = kron(c1, c);
  return c;
}

std::int64_t db_index(const Database& d, int m) {
  std::int64_t idx = 0;
  for (int x = static_cast<int>(d.entries.size()) - 1; x >= 0; --x) {
    int v = d.entries[static_cast<std::size_t>(x)];
    idx = idx * (m + 1) + (v == Database::kBottom ? m : v);
  }
  return idx;
}

Database db_decode(std::int64_t index, int n, int m) {
  Database d;
  d.entries.resize(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    int v = static_cast<int>(index % (m + 1));
    d.entries[static_cast<std::size_t>(x)] = v == m ? Database::kBottom : v;
    index /= (m + 1);
  }
  return d;
}

std::vector<Database> all_databases(int n, int m) {
  std::vector<Database> out;
  const std::int64_t total = ipow(m + 1, n);
  for (std::int64_t i = 0; i < total; ++i) out.push_back(db_decode(i, n, m));
  return out;
}

std::vector<Database> databases_upto(int n, int m, int s) {
  std::vector<Database> out;
  for (auto& d : all_databases(n, m))
    if (d.size() <= s) out.push_back(std::move(d));
  return out;
}

CMatrix compressed_oracle(const ProblemSpec& spec, int x, int y) {
  CMatrix c = comp_isometry(spec);
  return c * phase_diag(spec, x, y).asDiagonal() * c.adjoint();
}

std::vector<Database> property_databases(const ProblemSpec& spec, const Property& p) {
  std::vector<Database> out;
  for (auto& d : all_databases(spec.n, spec.m)) {
    bool hit = false;
    for (std::size_t i = 0; i < p.tuples.size() && !hit; ++i) hit = p.consistent(i, d.entries);
    if (hit) out.push_back(std::move(d));
  }
  return out;
}

Isometry db_projector(const std::vector<Database>& dbs, const ProblemSpec& spec) {
  std::vector<Eigen::Index> idx;
  for (const auto& d : dbs) idx.push_back(static_cast<Eigen::Index>(db_index(d, spec.m)));
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return Isometry::coordinates(static_cast<Eigen::Index>(ipow(spec.m + 1, spec.n)), idx);
}

namespace {

CMatrix rows_of(const CMatrix& comp, const std::vector<Database>& dbs, int m) {
  CMatrix r(static_cast<Eigen::Index>(dbs.size()), comp.cols());
  for (std::size_t i = 0; i < dbs.size(); ++i)
    r.row(static_cast<Eigen::Index>(i)) = comp.row(static_cast<Eigen::Index>(db_index(dbs[i], m)));
  return r;
}

std::vector<Database> filter(const std::vector<Database>& dbs, int max_size, const std::vector<bool>& in_p,
                             bool want_p, int m) {
  std::vector<Database> out;
  for (const auto& d : dbs)
    if (d.size() <= max_size && in_p[static_cast<std::size_t>(db_index(d, m))] == want_p) out.push_back(d);
  return out;
}

}  // namespace

CMatrix comp_conjugate(const CMatrix& comp, const std::vector<Database>& dbs, int m) {
  CMatrix r = rows_of(comp, dbs, m);
  return r.adjoint() * r;
}

StepNorm comp_step_norm(const ProblemSpec& spec, const Property& p, int t) {
  if (t < 1) throw ParameterError("comp_step_norm: t must be >= 1");
  require_full(spec, "comp_step_norm");
  const CMatrix comp = comp_isometry(spec);
  const auto dbs = all_databases(spec.n, spec.m);
  std::vector<bool> in_p(dbs.size(), false);
  for (const auto& d : property_databases(spec, p)) in_p[static_cast<std::size_t>(db_index(d, spec.m))] = true;
  const int hi = std::min(t, spec.n), lo = std::min(t - 1, spec.n);
  CMatrix left = rows_of(comp, filter(dbs, hi, in_p, true, spec.m), spec.m);
  CMatrix right = rows_of(comp, filter(dbs, lo, in_p, false, spec.m), spec.m);
  StepNorm best;
  if (left.rows() == 0 || right.rows() == 0) return best;
  bool first = true;
  for (int x = 0; x < spec.n; ++x)
    for (int y = 0; y < spec.m; ++y) {
      double v = spectral_norm(left * phase_diag(spec, x, y).asDiagonal() * right.adjoint());
      if (first || v > best.value + 1e-12 * std::max(1.0, best.value)) {
        best = {v, x, y};
        first = false;
      }
    }
  return best;
}

std::function<double(long long)> collision_step_formula(int m) {
  return [m](long long t) { return std::sqrt(static_cast<double>(t - 1) / m); };
}

namespace {

void gate_comp(int m, int k, double eps) {
  if (!(eps > 0.0 && eps < 1.0 - static_cast<double>(k) / m))
    throw ParameterError("comp_lower_bound: requires eps in (0, 1 - k/M); got eps >= 1 - k/M or eps <= 0");
  if (k < 1 || k > m - 1) throw ParameterError("comp_lower_bound: requires k in [1, M-1]");
}

BoundReport analytic_bound(int n, int m, int k, double eps, const CompMode& mode) {
  if (!mode.step) throw ParameterError("comp_lower_bound: analytic mode needs a step function");
  const double target = std::sqrt(1.0 - eps) - std::sqrt(static_cast<double>(k) / m);
  BoundReport r;
  r.bound_name = "COMP";
  r.parameters = {{"N", n}, {"M", m}, {"k", k}, {"eps", eps}, {"target", target}};
  r.extra["mode"] = "analytic";
  double sum = 0.0;
  for (long long t = 1; t <= mode.max_t; ++t) {
    double s = mode.step(t);
    if (r.per_step.size() < 4096) r.per_step.push_back(s);
    sum += s;
    if (sum >= target) {
      r.T = t;
      r.parameters["cumulative"] = sum;
      return r;
    }
  }
  r.unbounded = true;
  r.note = "cumulative step bound stayed below the target up to max_t";
  return r;
}

}  // namespace

BoundReport comp_lower_bound(int n, int m, int k, double eps, const CompMode& mode) {
  if (!mode.analytic) throw ParameterError("comp_lower_bound: numeric mode needs a problem instance");
  gate_comp(m, k, eps);
  return analytic_bound(n, m, k, eps, mode);
}

BoundReport comp_lower_bound(const ProblemSpec& spec, const Property& p, double eps, const CompMode& mode) {
  gate_comp(spec.m, p.arity, eps);
  if (mode.analytic) return analytic_bound(spec.n, spec.m, p.arity, eps, mode);

  const double target = std::sqrt(1.0 - eps) - std::sqrt(static_cast<double>(p.arity) / spec.m);
  BoundReport r;
  r.bound_name = "COMP";
  r.parameters = {{"N", spec.n}, {"M", spec.m}, {"k", p.arity}, {"eps", eps}, {"target", target}};
  r.extra["mode"] = "numeric";
  r.extra["property"] = p.name;
  double mono = 0.0;
  for (int t = 1; t <= spec.n + 1; ++t) {
    StepNorm s = comp_step_norm(spec, p, t);
    if (!r.per_step.empty()) mono = std::max(mono, r.per_step.back() - s.value);
    r.per_step.push_back(s.value);
    r.witnesses.push_back({{"t", t}, {"x", s.x}, {"y", s.y}, {"norm", s.value}});
  }
  r.verdicts.push_back(Check::le("steps_non_decreasing", mono, 1e-9));
  double sum = 0.0;
  for (std::size_t i = 0; i < r.per_step.size() && !r.T; ++i) {
    sum += r.per_step[i];
    if (sum >= target) r.T = static_cast<long long>(i + 1);
  }
  if (!r.T) {
    // every t > N repeats the plateau value
    const double plateau = r.per_step.back();
    if (plateau <= 0.0) {
      r.unbounded = true;
      r.note = "all steps vanish";
      return r;
    }
    long long extra = static_cast<long long>(std::ceil((target - sum) / plateau));
    extra = std::max(0LL, extra - 1);
    while (sum + static_cast<double>(extra) * plateau < target) ++extra;
    r.T = spec.n + 1 + extra;
    sum += static_cast<double>(extra) * plateau;
  }
  r.parameters["cumulative"] = sum;
  return r;
}

}  // namespace qlb
