#include "qlb/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qlb/error.hpp"
#include "qlb/rng.hpp"

namespace qlb {

std::optional<VState> v_state(const InputDistribution& dist, const ProblemSpec& spec, const VStateSpec& v) {
  if (v.xs.size() != v.ys.size()) throw ContractError("v_state: xs and ys differ in length");
  CVector vec = CVector::Zero(spec.size());
  double alpha = 0.0;
  for (int f = 0; f < spec.size(); ++f) {
    bool ok = true;
    for (std::size_t i = 0; i < v.xs.size() && ok; ++i) ok = spec.value(f, v.xs[i]) == v.ys[i];
    if (!ok) continue;
    alpha += dist.weights[static_cast<std::size_t>(f)];
    vec(f) = std::sqrt(dist.weights[static_cast<std::size_t>(f)]);
  }
  if (alpha <= 0.0) return std::nullopt;
  vec /= std::sqrt(alpha);
  return VState{vec, alpha};
}

const Isometry& SpaceChain::upto(int t) const {
  if (t < 0) throw ParameterError("space chain: t must be >= 0");
  return cumulative[static_cast<std::size_t>(std::min(t, n()))];
}

const Isometry& SpaceChain::increment(int t) const {
  if (t < 0 || t > n()) throw ParameterError("space chain: increment index out of range");
  return increments[static_cast<std::size_t>(t)];
}

SpaceChain chain_from(std::vector<Isometry> cumulative) {
  SpaceChain c;
  c.cumulative = std::move(cumulative);
  for (std::size_t t = 0; t < c.cumulative.size(); ++t)
    c.increments.push_back(t == 0 ? c.cumulative[0] : c.cumulative[t].minus(c.cumulative[t - 1]));
  return c;
}

namespace {

// all sorted t-subsets of [n)
void subsets(int n, int t, std::vector<int>& cur, int start, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == t) {
    out.push_back(cur);
    return;
  }
  for (int x = start; x < n; ++x) {
    cur.push_back(x);
    subsets(n, t, cur, x + 1, out);
    cur.pop_back();
  }
}

}  // namespace

SpaceChain space_chain(const InputDistribution& dist, const ProblemSpec& spec, double tol) {
  dist.validate(spec);
  const Eigen::Index fs = spec.size();
  std::vector<Isometry> cum;
  cum.push_back(span_isometry(std::vector<CVector>{dist.purification()}, tol));
  for (int t = 1; t <= spec.n; ++t) {
    const Isometry& prev = cum.back();
    if (prev.rank() == fs) {
      cum.push_back(prev);
      continue;
    }
    std::vector<std::vector<int>> xsets;
    std::vector<int> cur;
    subsets(spec.n, t, cur, 0, xsets);
    std::vector<CVector> gens;
    for (const auto& xs : xsets) {
      // bucket Func by its values on xs; each nonempty bucket is one v-state
      std::map<std::int64_t, CVector> bucket;
      std::map<std::int64_t, double> alpha;
      for (int f = 0; f < fs; ++f) {
        std::int64_t key = 0;
        for (int i = t - 1; i >= 0; --i) key = key * spec.m + spec.value(f, xs[static_cast<std::size_t>(i)]);
        double w = dist.weights[static_cast<std::size_t>(f)];
        if (w <= 0.0) continue;
        auto it = bucket.find(key);
        if (it == bucket.end()) it = bucket.emplace(key, CVector::Zero(fs)).first;
        it->second(f) = std::sqrt(w);
        alpha[key] += w;
      }
      for (auto& [key, v] : bucket) gens.push_back(v / std::sqrt(alpha[key]));
    }
    CMatrix all(fs, prev.rank() + static_cast<Eigen::Index>(gens.size()));
    all.leftCols(prev.rank()) = prev.basis();
    for (std::size_t i = 0; i < gens.size(); ++i) all.col(prev.rank() + static_cast<Eigen::Index>(i)) = gens[i];
    cum.push_back(span_isometry(all, tol));
  }
  return chain_from(std::move(cum));
}

RVector MlaMatrix::level_values(int i) const {
  const Isometry& e = eigenspaces[static_cast<std::size_t>(i)];
  if (!values.empty()) return values[static_cast<std::size_t>(i)];
  return RVector::Constant(e.rank(), std::pow(kappa, i));
}

double MlaMatrix::max_eigenvalue() const {
  double m = 1.0;
  for (int i = 0; i <= ladder_levels(); ++i) {
    RVector v = level_values(i);
    if (v.size()) m = std::max(m, v.maxCoeff());
  }
  return m;
}

CMatrix MlaMatrix::dense() const {
  CMatrix g = CMatrix::Zero(dim(), dim());
  for (int i = 0; i <= ladder_levels(); ++i) {
    const CMatrix& b = eigenspaces[static_cast<std::size_t>(i)].basis();
    if (b.cols() == 0) continue;
    g += b * level_values(i).cast<cplx>().asDiagonal() * b.adjoint();
  }
  return 0.5 * (g + g.adjoint());
}

double MlaMatrix::eigenvalue_defect() const {
  double d = 0.0;
  for (int i = 0; i <= ladder_levels(); ++i) {
    const double ideal = std::pow(kappa, i);
    RVector v = level_values(i);
    for (Eigen::Index j = 0; j < v.size(); ++j) d = std::max(d, std::abs(v(j) - ideal) / ideal);
  }
  return d;
}

namespace {

Isometry select_by_value(const MlaMatrix& g, double lambda, bool below) {
  std::vector<CVector> parts;
  Eigen::Index total = 0;
  for (int i = 0; i <= g.ladder_levels(); ++i) {
    const CMatrix& e = g.eigenspaces[static_cast<std::size_t>(i)].basis();
    RVector v = g.level_values(i);
    for (Eigen::Index j = 0; j < v.size(); ++j) {
      bool is_below = v(j) < lambda * (1.0 - 1e-12);
      if (is_below == below) {
        parts.push_back(e.col(j));
        ++total;
      }
    }
  }
  CMatrix out(g.dim(), total);
  for (std::size_t c = 0; c < parts.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = parts[c];
  return Isometry(out, false);
}

}  // namespace

Isometry MlaMatrix::below(double lambda) const { return select_by_value(*this, lambda, true); }
Isometry MlaMatrix::at_least(double lambda) const { return select_by_value(*this, lambda, false); }

MlaMatrix MlaMatrix::two_level(const Isometry& lambda1, double kappa) {
  if (!(kappa > 1.0)) throw ParameterError("MLA matrix: kappa must be > 1");
  MlaMatrix g;
  g.kappa = kappa;
  g.eigenspaces = {lambda1.complement(), lambda1};
  return g;
}

MlaMatrix MlaMatrix::from_dense(const CMatrix& gamma, double tol) {
  HermEig e = herm_eig(gamma);
  const Eigen::Index n = e.values.size();
  if (n == 0) throw ContractError("from_dense: empty matrix");
  if (std::abs(e.values(0) - 1.0) > 1e-9 * std::max(1.0, e.values(n - 1)))
    throw ContractError("from_dense: smallest eigenvalue is not 1");
  std::vector<std::vector<Eigen::Index>> groups;
  std::vector<double> reps;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (groups.empty() || std::abs(e.values(j) - reps.back()) > tol * reps.back()) {
      groups.push_back({});
      reps.push_back(e.values(j));
    }
    groups.back().push_back(j);
  }
  MlaMatrix g;
  g.kappa = reps.size() > 1 ? reps[1] / reps[0] : 2.0;
  for (std::size_t i = 1; i < reps.size(); ++i)
    if (std::abs(reps[i] / reps[i - 1] - g.kappa) > tol * g.kappa)
      throw ContractError("from_dense: eigenvalue ratios are not a constant kappa");
  for (const auto& grp : groups) {
    CMatrix b(n, static_cast<Eigen::Index>(grp.size()));
    RVector v(static_cast<Eigen::Index>(grp.size()));
    for (std::size_t c = 0; c < grp.size(); ++c) {
      b.col(static_cast<Eigen::Index>(c)) = e.vectors.col(grp[c]);
      v(static_cast<Eigen::Index>(c)) = e.values(grp[c]);
    }
    g.eigenspaces.emplace_back(b, false);
    g.values.push_back(v);
  }
  return g;
}

Report validate_mla(const MlaMatrix& gamma, const SpaceChain& chain, const ProblemSpec& spec, double tol) {
  Report r;
  r.name = "validate_mla";
  const Eigen::Index d = gamma.dim();
  const int levels = gamma.ladder_levels();

  // (a) spectrum: orthogonal, complete, eigenvalues kappa^i
  CMatrix all(d, 0);
  {
    Eigen::Index total = 0;
    for (const auto& e : gamma.eigenspaces) total += e.rank();
    all.resize(d, total);
    Eigen::Index c = 0;
    for (const auto& e : gamma.eigenspaces) {
      all.middleCols(c, e.rank()) = e.basis();
      c += e.rank();
    }
  }
  double completeness = all.cols() == d ? (all.adjoint() * all - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff()
                                        : 1.0;
  r.add(Check::le("eigenspaces_orthonormal_complete", completeness, tol,
                  json{{"total_rank", all.cols()}, {"dim", d}}));
  r.add(Check::le("eigenvalues_are_kappa_powers", gamma.eigenvalue_defect(), tol, json{{"kappa", gamma.kappa}}));

  // (b) ||[Lambda_i, Pi_{<=t}]|| = ||Lambda_i^perp Pi Pi^dag Lambda_i||
  double comm = 0.0;
  json comm_at = nullptr;
  for (int t = 0; t <= chain.n(); ++t) {
    const Isometry& pi = chain.upto(t);
    for (int i = 0; i <= levels; ++i) {
      const Isometry& li = gamma.eigenspaces[static_cast<std::size_t>(i)];
      if (li.rank() == 0 || pi.rank() == 0 || li.rank() == d) continue;
      CMatrix k = pi.basis().adjoint() * li.basis();
      // part of Pi Lambda_i outside Lambda_i
      CMatrix pl = pi.basis() * k;
      CMatrix out = pl - li.basis() * (li.basis().adjoint() * pl);
      double v = spectral_norm(out);
      if (v > comm) {
        comm = v;
        comm_at = json{{"t", t}, {"i", i}};
      }
    }
  }
  r.add(Check::le("commutes_with_space_chain", comm, tol, comm_at));

  // (c) ladder: ||Lambda_{i'} O_{x,y} Lambda_i|| = 0 for |i' - i| > 1
  double ladder = 0.0;
  json ladder_at = nullptr;
  for (int x = 0; x < spec.n; ++x)
    for (int y = 0; y < spec.m; ++y) {
      CVector dg = phase_diag(spec, x, y);
      for (int i = 0; i <= levels; ++i)
        for (int ip = 0; ip <= levels; ++ip) {
          if (std::abs(ip - i) <= 1) continue;
          double v = sandwich_norm(gamma.eigenspaces[static_cast<std::size_t>(ip)], dg,
                                   gamma.eigenspaces[static_cast<std::size_t>(i)]);
          if (v > ladder) {
            ladder = v;
            ladder_at = json{{"i", i}, {"i_prime", ip}, {"x", x}, {"y", y}};
          }
        }
    }
  r.add(Check::le("ladder_condition", ladder, tol, ladder_at));
  return r;
}

ProgressTrace progress(const MlaMatrix& gamma, const SimTrace& trace, const SpaceChain* chain) {
  const CMatrix g = gamma.dense();
  const CMatrix& rho0 = trace.input_densities.front();
  CVector delta(rho0.rows());
  for (Eigen::Index f = 0; f < rho0.rows(); ++f) delta(f) = std::sqrt(std::max(0.0, rho0(f, f).real()));
  if ((g * delta - delta).norm() > 1e-9 * std::max(1.0, gamma.max_eigenvalue()))
    throw ContractError("progress: |delta> is not a 1-eigenvector of Gamma");
  ProgressTrace p;
  for (std::size_t t = 0; t < trace.input_densities.size(); ++t) {
    const CMatrix& rho = trace.input_densities[t];
    double w = (g * rho).trace().real();
    p.values.push_back(w);
    if (t > 0) p.step_ratios.push_back(w / p.values[t - 1]);
    if (chain) {
      const CMatrix& b = chain->upto(static_cast<int>(t)).basis();
      double adv = (g * b * (b.adjoint() * rho)).trace().real();
      p.adv_time_violation = std::max(p.adv_time_violation, std::abs(adv - w));
    }
  }
  return p;
}

StepBound mladv_step_bound(const MlaMatrix& gamma, const SpaceChain& chain, const ProblemSpec& spec, int t) {
  if (t < 0) throw ParameterError("mladv_step_bound: t must be >= 0");
  const Isometry& hi = chain.upto(t + 1);
  const Isometry& lo = chain.upto(t);
  const double k = gamma.kappa;
  StepBound best;
  bool first = true;
  for (int i = 0; i < gamma.ladder_levels(); ++i) {
    const Isometry& li = gamma.eigenspaces[static_cast<std::size_t>(i)];
    const Isometry& lj = gamma.eigenspaces[static_cast<std::size_t>(i + 1)];
    if (li.rank() == 0 || lj.rank() == 0 || hi.rank() == 0 || lo.rank() == 0) continue;
    CMatrix left = lj.basis().adjoint() * hi.basis();
    CMatrix right = lo.basis().adjoint() * li.basis();
    for (int x = 0; x < spec.n; ++x)
      for (int y = 0; y < spec.m; ++y) {
        CMatrix mid = hi.basis().adjoint() * (phase_diag(spec, x, y).asDiagonal() * lo.basis());
        double v = spectral_norm(left * mid * right);
        if (first || v > best.norm + 1e-12 * std::max(1.0, best.norm)) {
          best.norm = v;
          best.i = i;
          best.x = x;
          best.y = y;
          first = false;
        }
      }
  }
  const double a = 1.0 + (k - 1.0) / std::sqrt(k) * best.norm;
  best.value = a * a;
  return best;
}

double madv_step_bound(const CMatrix& gamma, const ProblemSpec& spec) {
  CMatrix s = mat_sqrt(gamma);
  CMatrix si = mat_inv_sqrt(gamma);
  double best = 0.0;
  for (int x = 0; x < spec.n; ++x)
    for (int y = 0; y < spec.m; ++y) {
      CVector d = phase_diag(spec, x, y);
      CMatrix op = d.conjugate().asDiagonal() * s * d.asDiagonal() * si;
      double v = spectral_norm(op);
      best = std::max(best, v * v);
    }
  return best;
}

namespace {

void gate_lambda(const MlaMatrix& gamma, double lam) {
  const double top = gamma.max_eigenvalue();
  if (!(lam > 1.0 && lam <= top * (1.0 + 1e-12)))
    throw ParameterError("lambda must lie in (1, largest eigenvalue of Gamma]");
}

double eta_of(const Isometry& bad, const ProblemSpec& spec) {
  double eta = 0.0;
  if (bad.rank() == 0) return 0.0;
  for (int z = 0; z < spec.sigma; ++z) {
    Isometry fz = f_z_projector(spec, z);
    if (fz.rank() == 0) continue;
    double v = spectral_norm(fz.basis().adjoint() * bad.basis());
    eta = std::max(eta, v * v);
  }
  return eta;
}

}  // namespace

double eta_for(const MlaMatrix& gamma, double lam, const ProblemSpec& spec) {
  gate_lambda(gamma, lam);
  return eta_of(gamma.below(lam), spec);
}

BoundParams make_bound_params(const MlaMatrix& gamma, double lam, double eps, const ProblemSpec& spec,
                              std::optional<double> eta) {
  gate_lambda(gamma, lam);
  BoundParams p;
  p.lambda = lam;
  p.eps = eps;
  p.bad_projector = gamma.below(lam);
  p.good_projector = gamma.at_least(lam);
  const double exact = eta_of(p.bad_projector, spec);
  if (eta && *eta < exact - 1e-12) throw ParameterError("eta is below max_z ||F_z Lambda_bad||^2");
  p.eta = eta ? *eta : exact;
  if (!(p.eta <= 1.0 - eps + 1e-15)) throw ParameterError("requires eta <= 1 - eps");
  return p;
}

BoundReport mladv_lower_bound(const MlaMatrix& gamma, const SpaceChain& chain, const ProblemSpec& spec, double lam,
                              double eta, double eps) {
  gate_lambda(gamma, lam);
  const double exact = eta_for(gamma, lam, spec);
  if (eta < exact - 1e-12) throw ParameterError("mladv_lower_bound: eta is below eta_for(Gamma, lambda)");
  if (!(eps > 0.0 && eps <= 1.0 - eta + 1e-15))
    throw ParameterError("mladv_lower_bound: requires eps in (0, 1 - eta]");
  const double gap = std::max(0.0, std::sqrt(1.0 - eps) - std::sqrt(eta));
  const double target = 1.0 + (lam - 1.0) * gap * gap;
  BoundReport r;
  r.bound_name = "MLADV";
  r.parameters = {{"N", spec.n},     {"M", spec.m}, {"kappa", gamma.kappa}, {"lambda", lam},
                  {"eta", eta},      {"eta_exact", exact}, {"eps", eps},   {"target", target}};
  // step(t) = mladv_step_bound(t - 1); for t - 1 >= N the chain has plateaued
  for (int t = 1; t <= chain.n() + 1; ++t) {
    StepBound s = mladv_step_bound(gamma, chain, spec, t - 1);
    r.per_step.push_back(s.value);
    r.witnesses.push_back({{"t", t}, {"i", s.i}, {"x", s.x}, {"y", s.y}, {"norm", s.norm}});
  }
  if (target <= 1.0) {
    r.T = 0;
    return r;
  }
  double prod = 1.0;
  for (std::size_t i = 0; i < r.per_step.size(); ++i) {
    prod *= r.per_step[i];
    if (prod >= target) {
      r.T = static_cast<long long>(i + 1);
      r.parameters["product"] = prod;
      return r;
    }
  }
  const double plateau = r.per_step.back();
  if (plateau <= 1.0) {
    r.unbounded = true;
    r.note = "every step bound equals 1";
    return r;
  }
  long long extra = static_cast<long long>(std::ceil((std::log(target) - std::log(prod)) / std::log(plateau)));
  extra = std::max(0LL, extra - 1);
  double p = prod * std::pow(plateau, static_cast<double>(extra));
  while (p < target) {
    p *= plateau;
    ++extra;
  }
  r.T = static_cast<long long>(r.per_step.size()) + extra;
  r.parameters["product"] = p;
  return r;
}

BoundReport madv_lower_bound(const MlaMatrix& gamma, const ProblemSpec& spec, double lam, double eta, double eps) {
  gate_lambda(gamma, lam);
  const double exact = eta_for(gamma, lam, spec);
  if (eta < exact - 1e-12) throw ParameterError("madv_lower_bound: eta is below eta_for(Gamma, lambda)");
  if (!(eps > 0.0 && eps <= 1.0 - eta + 1e-15)) throw ParameterError("madv_lower_bound: requires eps in (0, 1 - eta]");
  const double gap = std::max(0.0, std::sqrt(1.0 - eps) - std::sqrt(eta));
  const double target = 1.0 + (lam - 1.0) * gap * gap;
  const double step = madv_step_bound(gamma.dense(), spec);
  BoundReport r;
  r.bound_name = "MADV";
  r.parameters = {{"N", spec.n}, {"M", spec.m}, {"kappa", gamma.kappa}, {"lambda", lam}, {"eta", eta},
                  {"eta_exact", exact}, {"eps", eps}, {"target", target}, {"step", step}};
  r.per_step = {step};
  if (target <= 1.0) {
    r.T = 0;
    return r;
  }
  if (step <= 1.0) {
    r.unbounded = true;
    r.note = "step bound equals 1";
    return r;
  }
  long long t = std::max(0LL, static_cast<long long>(std::ceil(std::log(target) / std::log(step))) - 1);
  while (std::pow(step, static_cast<double>(t)) < target) ++t;
  r.T = t;
  return r;
}

CMatrix target_gram(const ProblemSpec& spec) {
  if (!spec.single_valued()) throw ParameterError("target_gram: target must be single-valued");
  const Eigen::Index n = spec.size();
  CMatrix g = CMatrix::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      if (spec.target[a][0] == spec.target[b][0]) g(a, b) = 1.0;
  return g;
}

CMatrix gen_feasible_gram(const ProblemSpec& spec, double eps, std::uint64_t seed) {
  if (!spec.single_valued()) throw ParameterError("gen_feasible_gram: target must be single-valued");
  if (!(eps >= 0.0 && eps <= 1.0)) throw ParameterError("gen_feasible_gram: eps must be in [0, 1]");
  Rng rng(seed);
  const int s = spec.sigma;
  CMatrix psi = CMatrix::Zero(s, spec.size());  // column f is psi_f
  for (int f = 0; f < spec.size(); ++f) {
    const int z = spec.target[f][0];
    double e = eps * rng.uniform();
    CVector junk(s);
    for (int i = 0; i < s; ++i) junk(i) = rng.cnormal();
    junk(z) = 0.0;
    if (s == 1 || junk.norm() == 0.0) e = 0.0;
    psi(z, f) = std::sqrt(1.0 - e);
    if (e > 0.0) psi.col(f) += std::sqrt(e) * junk / junk.norm();
  }
  // N_{f,f'} = <psi_{f'}|psi_f>
  CMatrix n = psi.transpose() * psi.conjugate();
  for (Eigen::Index f = 0; f < n.rows(); ++f) n(f, f) = 1.0;
  return n;
}

namespace {

CMatrix hadamard_uu(const CMatrix& a, const CVector& u) { return a.cwiseProduct(u * u.adjoint()); }

double hadamard_fid(const CMatrix& a, const CMatrix& b, const CVector& u) {
  return fidelity(hadamard_uu(a, u), hadamard_uu(b, u));
}

CVector random_unit(Eigen::Index n, Rng& rng) {
  CVector u(n);
  for (Eigen::Index i = 0; i < n; ++i) u(i) = rng.cnormal();
  return u / u.norm();
}

}  // namespace

double hadamard_fidelity_heuristic(const CMatrix& a, const CMatrix& b, int restarts, std::uint64_t seed) {
  if (a.rows() != b.rows() || a.rows() != a.cols()) throw ContractError("hadamard fidelity: shape mismatch");
  Rng rng(seed);
  const Eigen::Index n = a.rows();
  double best = 2.0;
  for (int r = 0; r < std::max(1, restarts); ++r) {
    CVector u = random_unit(n, rng);
    double cur = hadamard_fid(a, b, u);
    double step = 0.5;
    int fails = 0;
    for (int it = 0; it < 400 && step > 1e-6; ++it) {
      CVector trial = u + step * random_unit(n, rng);
      trial /= trial.norm();
      double v = hadamard_fid(a, b, trial);
      if (v < cur) {
        cur = v;
        u = trial;
        fails = 0;
      } else if (++fails >= 8) {
        step *= 0.5;
        fails = 0;
      }
    }
    best = std::min(best, cur);
  }
  return std::min(best, 1.0 + 1e-9);
}

Report output_condition_check(const MlaMatrix& gamma, const BoundParams& params, const CMatrix& feasible_gram,
                              const CMatrix& target, std::uint64_t seed, int restarts) {
  Report r;
  r.name = "output_condition";
  const Eigen::Index n = feasible_gram.rows();
  double diag = (feasible_gram.diagonal() - CVector::Ones(n)).cwiseAbs().maxCoeff();
  HermEig e = herm_eig(0.5 * (feasible_gram + feasible_gram.adjoint()));
  double neg = std::max(0.0, -e.values(0));
  r.add(Check::le("gram_psd_unit_diagonal", std::max(diag, neg), 1e-10));

  const double gap = std::max(0.0, std::sqrt(1.0 - params.eps) - std::sqrt(params.eta));
  const double bound = 1.0 + (params.lambda - 1.0) * gap * gap;
  const CMatrix g = gamma.dense();
  const double tr = (g * feasible_gram).trace().real();
  r.add(Check::le("trace_bound", std::max(0.0, bound - tr), 1e-8, json{{"trace", tr}, {"bound", bound}}));

  // the same bound holds for the unit-trace states N o uu^dag, for every unit u
  Rng rng(seed);
  double worst = 0.0;
  double min_seen = 1e300;
  for (int k = 0; k <= restarts; ++k) {
    CVector u = k == 0 ? CVector(CVector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)))) : random_unit(n, rng);
    double v = (g * hadamard_uu(feasible_gram, u)).trace().real();
    min_seen = std::min(min_seen, v);
    worst = std::max(worst, bound - v);
  }
  r.add(Check::le("normalized_trace_bound", std::max(0.0, worst), 1e-8, json{{"min_trace", min_seen}}));

  double fh = hadamard_fidelity_heuristic(feasible_gram, target, restarts, seed + 1);
  r.add(Check::le("fidelity_hypothesis_not_falsified", std::max(0.0, std::sqrt(1.0 - params.eps) - fh), 1e-9,
                  json{{"fidelity_upper_bound", fh}}));
  return r;
}

double one_query_violation(const SpaceChain& chain, const ProblemSpec& spec) {
  double worst = 0.0;
  for (int t = 0; t <= chain.n(); ++t) {
    const Isometry& lo = chain.upto(t);
    const Isometry& hi = chain.upto(t + 1);
    for (int x = 0; x < spec.n; ++x)
      for (int y = 0; y < spec.m; ++y) {
        CMatrix ov = phase_diag(spec, x, y).asDiagonal() * lo.basis();
        CMatrix out = ov - hi.basis() * (hi.basis().adjoint() * ov);
        worst = std::max(worst, spectral_norm(out));
      }
  }
  return worst;
}

double monotonicity_violation(const MlaMatrix& gamma, const SpaceChain& chain, const ProblemSpec& spec) {
  double worst = 0.0;
  for (int i = 1; i <= gamma.ladder_levels(); ++i) {
    const Isometry& li = gamma.eigenspaces[static_cast<std::size_t>(i)];
    const Isometry& lj = gamma.eigenspaces[static_cast<std::size_t>(i - 1)];
    for (int x = 0; x < spec.n; ++x)
      for (int y = 0; y < spec.m; ++y) {
        CVector dg = phase_diag(spec, x, y);
        double prev = 0.0;
        for (int t = 1; t <= chain.n() + 1; ++t) {
          const Isometry& hi = chain.upto(t);
          const Isometry& lo = chain.upto(t - 1);
          double v = 0.0;
          if (li.rank() && lj.rank() && hi.rank() && lo.rank())
            v = spectral_norm((li.basis().adjoint() * hi.basis()) *
                              (hi.basis().adjoint() * (dg.asDiagonal() * lo.basis())) *
                              (lo.basis().adjoint() * lj.basis()));
          worst = std::max(worst, prev - v);
          prev = v;
        }
      }
  }
  return worst;
}

}  // namespace qlb
