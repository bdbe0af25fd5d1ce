#include "qlb/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qlb/error.hpp"

namespace qlb {

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

std::vector<int> ProblemSpec::function(int f) const {
  return {table.begin() + static_cast<std::ptrdiff_t>(f) * n,
          table.begin() + static_cast<std::ptrdiff_t>(f + 1) * n};
}

bool ProblemSpec::single_valued() const {
  return std::all_of(target.begin(), target.end(), [](const auto& t) { return t.size() == 1; });
}

int ProblemSpec::pos_of(std::int64_t code) const {
  if (code < 0 || code >= static_cast<std::int64_t>(position.size())) return -1;
  return position[static_cast<std::size_t>(code)];
}

std::int64_t encode(const FuncTable& f, int m) {
  std::int64_t c = 0;
  for (int x = static_cast<int>(f.size()) - 1; x >= 0; --x) c = c * m + f[x];
  return c;
}

FuncTable decode(std::int64_t code, int n, int m) {
  FuncTable f(n);
  for (int x = 0; x < n; ++x) {
    f[x] = static_cast<int>(code % m);
    code /= m;
  }
  return f;
}

namespace {

void check_nm(int n, int m) {
  if (n < 1) throw ParameterError("problem: N must be >= 1");
  if (m < 2) throw ParameterError("problem: M must be >= 2");
  require_size(static_cast<std::size_t>(ipow(m, n)), caps().max_state_dim, "problem: M^N");
}

void add_function(ProblemSpec& s, const FuncTable& f, const TargetFn& target) {
  std::int64_t c = encode(f, s.m);
  s.position[static_cast<std::size_t>(c)] = s.size();
  s.codes.push_back(c);
  s.table.insert(s.table.end(), f.begin(), f.end());
  std::vector<int> t = target ? target(f) : std::vector<int>{};
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  for (int z : t)
    if (z < 0 || z >= s.sigma) throw ContractError("problem: target output outside Sigma");
  s.target.push_back(std::move(t));
}

}  // namespace

ProblemSpec make_problem(std::string name, int n, int m, int sigma, const FilterFn& filter,
                         const TargetFn& target) {
  check_nm(n, m);
  ProblemSpec s;
  s.name = std::move(name);
  s.n = n;
  s.m = m;
  s.sigma = sigma;
  const std::int64_t total = ipow(m, n);
  s.position.assign(static_cast<std::size_t>(total), -1);
  for (std::int64_t c = 0; c < total; ++c) {
    FuncTable f = decode(c, n, m);
    if (filter && !filter(f)) continue;
    add_function(s, f, target);
  }
  if (s.codes.empty()) throw ParameterError("problem: Func is empty");
  return s;
}

ProblemSpec make_problem(std::string name, int n, int m, int sigma, const std::vector<FuncTable>& funcs,
                         const TargetFn& target) {
  check_nm(n, m);
  ProblemSpec s;
  s.name = std::move(name);
  s.n = n;
  s.m = m;
  s.sigma = sigma;
  s.position.assign(static_cast<std::size_t>(ipow(m, n)), -1);
  for (const auto& f : funcs) {
    if (static_cast<int>(f.size()) != n) throw ContractError("problem: table length differs from N");
    if (s.pos_of(encode(f, m)) >= 0) throw ContractError("problem: duplicate function");
    add_function(s, f, target);
  }
  if (s.codes.empty()) throw ParameterError("problem: Func is empty");
  return s;
}

ProblemSpec full_problem(int n, int m) { return make_problem("full", n, m, 0, nullptr, nullptr); }

ProblemSpec identity_problem(int n, int m) {
  return make_problem("identity", n, m, static_cast<int>(ipow(m, n)), nullptr,
                      [m](const FuncTable& f) { return std::vector<int>{static_cast<int>(encode(f, m))}; });
}

ProblemSpec value_problem(int n, int m, int x0) {
  if (x0 < 0 || x0 >= n) throw ParameterError("value_problem: x0 outside X");
  return make_problem("value", n, m, m, nullptr, [x0](const FuncTable& f) { return std::vector<int>{f[x0]}; });
}

ProblemSpec unique_search_problem(int n) {
  auto weight_one = [](const FuncTable& f) { return std::count(f.begin(), f.end(), 1) == 1; };
  auto marked = [](const FuncTable& f) {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(f.size()); ++i)
      if (f[i] == 1) out.push_back(i);
    return out;
  };
  return make_problem("search", n, 2, n, weight_one, marked);
}

ProblemSpec constant_target_problem(int n, int m, int sigma, const std::vector<int>& outputs) {
  return make_problem("constant", n, m, sigma, nullptr, [outputs](const FuncTable&) { return outputs; });
}

InputDistribution InputDistribution::uniform(const ProblemSpec& spec) {
  return {std::vector<double>(static_cast<std::size_t>(spec.size()), 1.0 / spec.size())};
}

CVector InputDistribution::purification() const {
  CVector v(static_cast<Eigen::Index>(weights.size()));
  for (std::size_t i = 0; i < weights.size(); ++i) v(static_cast<Eigen::Index>(i)) = std::sqrt(weights[i]);
  return v;
}

void InputDistribution::validate(const ProblemSpec& spec) const {
  if (static_cast<int>(weights.size()) != spec.size())
    throw ContractError("distribution: weight count differs from |Func|");
  double s = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw ContractError("distribution: negative weight");
    s += w;
  }
  if (std::abs(s - 1.0) > 1e-12) throw ContractError("distribution: weights do not sum to 1");
}

void QueryAlgorithm::validate(const ProblemSpec& spec) const {
  if (static_cast<int>(unitaries.size()) != t_queries + 1)
    throw ContractError("algorithm: need T+1 unitaries");
  if (output_dim < std::max(1, spec.sigma) || workspace_dim % output_dim != 0)
    throw ContractError("algorithm: output slot smaller than Sigma or not a factor of W");
  const Eigen::Index d = dim(spec);
  for (const auto& u : unitaries) {
    if (u.rows() != d || u.cols() != d) throw ContractError("algorithm: unitary has wrong dimension");
    CMatrix e = u.adjoint() * u - CMatrix::Identity(d, d);
    if (e.cwiseAbs().maxCoeff() > 1e-10) throw ContractError("algorithm: U_t is not unitary");
  }
}

CMatrix qft(int m) {
  if (m < 2) throw ParameterError("qft: m must be >= 2");
  CMatrix q(m, m);
  const double s = 1.0 / std::sqrt(static_cast<double>(m));
  for (int z = 0; z < m; ++z)
    for (int y = 0; y < m; ++y) q(z, y) = std::polar(s, 2.0 * M_PI * ((y * z) % m) / m);
  return q;
}

CMatrix qft_extended(int m) {
  CMatrix q = CMatrix::Zero(m + 1, m + 1);
  q.topLeftCorner(m, m) = qft(m);
  q(m, m) = 1.0;
  return q;
}

CVector phase_diag(const ProblemSpec& spec, int x, int y) {
  CVector d(spec.size());
  for (int f = 0; f < spec.size(); ++f)
    d(f) = std::polar(1.0, 2.0 * M_PI * ((y * spec.value(f, x)) % spec.m) / spec.m);
  return d;
}

CMatrix phase_oracle_component(const ProblemSpec& spec, int x, int y) {
  if (x < 0 || x >= spec.n || y < 0 || y >= spec.m) throw ParameterError("phase oracle: (x, y) out of range");
  return phase_diag(spec, x, y).asDiagonal();
}

CMatrix purified_oracle(const ProblemSpec& spec) {
  const Eigen::Index fs = spec.size();
  const Eigen::Index d = static_cast<Eigen::Index>(spec.n) * spec.m * fs;
  require_size(static_cast<std::size_t>(d), caps().max_state_dim, "purified_oracle");
  require_size(static_cast<std::size_t>(d * d), caps().max_kron_entries, "purified_oracle entries");
  CMatrix o = CMatrix::Zero(d, d);
  for (int x = 0; x < spec.n; ++x)
    for (int y = 0; y < spec.m; ++y)
      for (int f = 0; f < fs; ++f) {
        int y2 = (y + spec.value(f, x)) % spec.m;
        o((static_cast<Eigen::Index>(x) * spec.m + y2) * fs + f, (static_cast<Eigen::Index>(x) * spec.m + y) * fs + f) = 1.0;
      }
  return o;
}

CMatrix query_reconstruction(const ProblemSpec& spec, int sign) {
  const Eigen::Index fs = spec.size();
  const Eigen::Index d = static_cast<Eigen::Index>(spec.n) * spec.m * fs;
  CMatrix q = qft(spec.m);
  CMatrix out = CMatrix::Zero(d, d);
  for (int x = 0; x < spec.n; ++x) {
    CMatrix px = CMatrix::Zero(spec.n, spec.n);
    px(x, x) = 1.0;
    for (int y = 0; y < spec.m; ++y) {
      CMatrix py = q.col(y) * q.col(y).adjoint();
      int ys = ((sign * y) % spec.m + spec.m) % spec.m;
      CMatrix oxy = phase_oracle_component(spec, x, ys);
      out += kron(kron(px, py), oxy);
    }
  }
  return out;
}

CVector fourier_input_vector(const ProblemSpec& spec, std::int64_t code) {
  if (!spec.full()) throw ParameterError("fourier_input_vector: needs Func = Y^X");
  FuncTable f = decode(code, spec.n, spec.m);
  CVector v(spec.size());
  const double s = std::pow(static_cast<double>(spec.m), -0.5 * spec.n);
  for (int g = 0; g < spec.size(); ++g) {
    long long ph = 0;
    for (int x = 0; x < spec.n; ++x) ph += static_cast<long long>(f[x]) * spec.value(g, x);
    v(g) = std::polar(s, 2.0 * M_PI * static_cast<double>(ph % spec.m) / spec.m);
  }
  return v;
}

void apply_oracle(CMatrix& psi, const ProblemSpec& spec) {
  const Eigen::Index block = static_cast<Eigen::Index>(spec.n) * spec.m;
  const Eigen::Index w_dim = psi.rows() / block;
  CMatrix out(psi.rows(), psi.cols());
  for (Eigen::Index f = 0; f < psi.cols(); ++f)
    for (Eigen::Index w = 0; w < w_dim; ++w)
      for (int x = 0; x < spec.n; ++x) {
        const int fx = spec.value(static_cast<int>(f), x);
        const Eigen::Index base = w * block + static_cast<Eigen::Index>(x) * spec.m;
        for (int y = 0; y < spec.m; ++y) out(base + (y + fx) % spec.m, f) = psi(base + y, f);
      }
  psi = std::move(out);
}

SimTrace run_algorithm(const QueryAlgorithm& alg, const InputDistribution& dist, const ProblemSpec& spec) {
  alg.validate(spec);
  dist.validate(spec);
  const Eigen::Index d = alg.dim(spec);
  require_size(static_cast<std::size_t>(d) * static_cast<std::size_t>(spec.size()) *
                   static_cast<std::size_t>(alg.t_queries + 1),
               caps().max_state_dim * 16, "run_algorithm trace");
  require_size(static_cast<std::size_t>(d) * static_cast<std::size_t>(spec.size()), caps().max_state_dim,
               "run_algorithm state");
  CMatrix psi = CMatrix::Zero(d, spec.size());
  psi.row(0) = dist.purification().transpose();
  SimTrace tr;
  for (int t = 0; t <= alg.t_queries; ++t) {
    if (t > 0) apply_oracle(psi, spec);
    psi = alg.unitaries[t] * psi;
    tr.states.push_back(psi);
    CMatrix rho = psi.transpose() * psi.conjugate();
    tr.input_densities.push_back(0.5 * (rho + rho.adjoint()));
  }
  return tr;
}

double success_probability(const SimTrace& trace, const ProblemSpec& spec, const QueryAlgorithm& alg) {
  const CMatrix& psi = trace.states.back();
  const Eigen::Index block = static_cast<Eigen::Index>(spec.n) * spec.m;
  double p = 0.0;
  for (Eigen::Index r = 0; r < psi.rows(); ++r) {
    const int z = static_cast<int>((r / block) % alg.output_dim);
    if (z >= spec.sigma) continue;
    for (int f = 0; f < spec.size(); ++f) {
      const auto& t = spec.target[f];
      if (std::binary_search(t.begin(), t.end(), z)) p += std::norm(psi(r, f));
    }
  }
  return p;
}

Isometry f_z_projector(const ProblemSpec& spec, int z) {
  if (z < 0 || z >= spec.sigma) throw ParameterError("f_z_projector: z outside Sigma");
  std::vector<Eigen::Index> idx;
  for (int f = 0; f < spec.size(); ++f)
    if (std::binary_search(spec.target[f].begin(), spec.target[f].end(), z)) idx.push_back(f);
  return Isometry::coordinates(spec.size(), idx);
}

CMatrix random_unitary(Eigen::Index dim, Rng& rng) {
  CMatrix g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) g(i, j) = rng.cnormal();
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  // fix the phases of R's diagonal so the distribution is Haar
  const CMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < dim; ++j) {
    cplx d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

CMatrix permutation_matrix(const std::vector<Eigen::Index>& image) {
  const Eigen::Index d = static_cast<Eigen::Index>(image.size());
  CMatrix p = CMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) p(image[static_cast<std::size_t>(i)], i) = 1.0;
  return p;
}

QueryAlgorithm identity_algorithm(const ProblemSpec& spec, int t, int workspace_dim, int output_dim) {
  QueryAlgorithm a{t, {}, workspace_dim, output_dim};
  const Eigen::Index d = a.dim(spec);
  a.unitaries.assign(static_cast<std::size_t>(t + 1), CMatrix::Identity(d, d));
  return a;
}

QueryAlgorithm random_algorithm(const ProblemSpec& spec, int t, int workspace_dim, int output_dim, Rng& rng) {
  QueryAlgorithm a{t, {}, workspace_dim, output_dim};
  for (int i = 0; i <= t; ++i) a.unitaries.push_back(random_unitary(a.dim(spec), rng));
  return a;
}

QueryAlgorithm lookup_algorithm(const ProblemSpec& spec, const std::vector<int>& xs, int output_dim,
                                const OutputFn& output, bool keep_last) {
  const int t = static_cast<int>(xs.size());
  for (int x : xs)
    if (x < 0 || x >= spec.n) throw ParameterError("lookup_algorithm: query index outside X");
  if (keep_last && t == 0) keep_last = false;
  const int stored = keep_last ? t - 1 : t;
  const int aux = static_cast<int>(ipow(spec.m, stored));
  QueryAlgorithm alg{t, {}, output_dim * aux, output_dim};
  const int n = spec.n, m = spec.m;
  const Eigen::Index d = alg.dim(spec);

  struct Reg {
    int o, a, x, y;
  };
  auto split = [&](Eigen::Index r) {
    Reg g;
    g.y = static_cast<int>(r % m);
    g.x = static_cast<int>((r / m) % n);
    Eigen::Index w = r / (static_cast<Eigen::Index>(n) * m);
    g.o = static_cast<int>(w % output_dim);
    g.a = static_cast<int>(w / output_dim);
    return g;
  };
  auto join = [&](const Reg& g) {
    Eigen::Index w = static_cast<Eigen::Index>(g.a) * output_dim + g.o;
    return (w * n + g.x) * m + g.y;
  };
  auto digit = [&](int a, int j) { return static_cast<int>((a / ipow(m, j)) % m); };
  auto set_digit = [&](int a, int j, int v) {
    return static_cast<int>(a + (v - digit(a, j)) * ipow(m, j));
  };

  for (int step = 0; step <= t; ++step) {
    std::vector<Eigen::Index> image(static_cast<std::size_t>(d));
    for (Eigen::Index r = 0; r < d; ++r) {
      Reg g = split(r);
      // move the previous answer out of Y
      if (step >= 1 && !(step == t && keep_last)) {
        int j = step - 1;
        int held = digit(g.a, j);
        g.a = set_digit(g.a, j, g.y);
        g.y = held;
      }
      if (step < t) {
        int prev = step == 0 ? 0 : xs[step - 1];
        g.x = ((g.x - prev + xs[step]) % n + n) % n;
      } else {
        std::vector<int> answers;
        for (int j = 0; j < stored; ++j) answers.push_back(digit(g.a, j));
        if (keep_last) answers.push_back(g.y);
        int z = output ? output(answers) : 0;
        g.o = ((g.o + z) % output_dim + output_dim) % output_dim;
      }
      image[static_cast<std::size_t>(r)] = join(g);
    }
    alg.unitaries.push_back(permutation_matrix(image));
  }
  return alg;
}

QueryAlgorithm perturb_algorithm(const QueryAlgorithm& alg, double strength, Rng& rng) {
  QueryAlgorithm out = alg;
  for (auto& u : out.unitaries) {
    const Eigen::Index d = u.rows();
    CMatrix g(d, d);
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index i = 0; i < d; ++i) g(i, j) = rng.cnormal();
    HermEig e = herm_eig(0.5 * (g + g.adjoint()));
    // unit spectral norm: scale by the largest |eigenvalue|
    const double norm = std::max(std::abs(e.values(0)), std::abs(e.values(d - 1)));
    CVector ph(d);
    for (Eigen::Index i = 0; i < d; ++i) ph(i) = std::polar(1.0, strength * e.values(i) / norm);
    u = u * (e.vectors * ph.asDiagonal() * e.vectors.adjoint());
  }
  return out;
}

}  // namespace qlb
