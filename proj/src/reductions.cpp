#include "qlb/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "qlb/error.hpp"

namespace qlb {

namespace {

std::vector<Database> minus_dbs(const std::vector<Database>& a, const std::vector<Database>& b, int m) {
  std::set<std::int64_t> drop;
  for (const auto& d : b) drop.insert(db_index(d, m));
  std::vector<Database> out;
  for (const auto& d : a)
    if (!drop.count(db_index(d, m))) out.push_back(d);
  return out;
}

std::vector<Database> intersect_dbs(const std::vector<Database>& a, const std::vector<Database>& b, int m) {
  std::set<std::int64_t> keep;
  for (const auto& d : b) keep.insert(db_index(d, m));
  std::vector<Database> out;
  for (const auto& d : a)
    if (keep.count(db_index(d, m))) out.push_back(d);
  return out;
}

double op_norm_diff(const CMatrix& a, const CMatrix& b) { return spectral_norm(a - b); }

// ||A B C|| = ||(A^dag A)^{1/2} B (C C^dag)^{1/2}|| for tall A and wide C
double factored_norm(const CMatrix& ga_sqrt, const CMatrix& b, const CMatrix& gc_sqrt) {
  return spectral_norm(ga_sqrt * b * gc_sqrt);
}

CMatrix gram_sqrt(const CMatrix& g) { return mat_sqrt(0.5 * (g + g.adjoint())); }

}  // namespace

CMatrix property_lambda1(const ProblemSpec& spec, const Property& p) {
  CMatrix comp = comp_isometry(spec);
  return comp_conjugate(comp, property_databases(spec, p), spec.m);
}

MlaMatrix gamma_from_property(const ProblemSpec& spec, const Property& p, double kappa) {
  if (!(kappa > 1.0)) throw ParameterError("gamma_from_property: kappa must be > 1");
  CMatrix l1 = property_lambda1(spec, p);
  HermEig e = herm_eig(0.5 * (l1 + l1.adjoint()));
  const Eigen::Index n = e.values.size();
  std::vector<Eigen::Index> ker, sup;
  for (Eigen::Index j = 0; j < n; ++j) (e.values(j) > 1e-9 ? sup : ker).push_back(j);
  auto take = [&](const std::vector<Eigen::Index>& idx, Isometry& iso, RVector& vals) {
    CMatrix b(n, static_cast<Eigen::Index>(idx.size()));
    vals.resize(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) {
      b.col(static_cast<Eigen::Index>(c)) = e.vectors.col(idx[c]);
      double mu = std::clamp(e.values(idx[c]), 0.0, 1.0);
      vals(static_cast<Eigen::Index>(c)) = 1.0 + (kappa - 1.0) * mu;
    }
    iso = Isometry(b, false);
  };
  MlaMatrix g;
  g.kappa = kappa;
  g.eigenspaces.resize(2);
  g.values.resize(2);
  take(ker, g.eigenspaces[0], g.values[0]);
  take(sup, g.eigenspaces[1], g.values[1]);
  return g;
}

Report check_equal_proj(const ProblemSpec& spec, const Property& p) {
  Report r;
  r.name = "equal_proj";
  CMatrix comp = comp_isometry(spec);
  auto dp = property_databases(spec, p);
  CMatrix l1 = comp_conjugate(comp, dp, spec.m);
  const Eigen::Index n = l1.rows();
  CMatrix l0 = CMatrix::Identity(n, n) - l1;
  SpaceChain chain = space_chain(InputDistribution::uniform(spec), spec);
  double v0 = 0.0, v1 = 0.0, vs = 0.0;
  json per_t = json::array();
  for (int t = 0; t <= spec.n; ++t) {
    auto upto = databases_upto(spec.n, spec.m, t);
    CMatrix pi = chain.upto(t).projector();
    CMatrix pi_db = comp_conjugate(comp, upto, spec.m);
    CMatrix p0 = comp_conjugate(comp, minus_dbs(upto, dp, spec.m), spec.m);
    CMatrix p1 = comp_conjugate(comp, intersect_dbs(upto, dp, spec.m), spec.m);
    double a = op_norm_diff(pi * l0, p0);
    double b = op_norm_diff(l1 * pi, p1);
    double s = op_norm_diff(pi, pi_db);
    v0 = std::max(v0, a);
    v1 = std::max(v1, b);
    vs = std::max(vs, s);
    per_t.push_back({{"t", t}, {"pi_lambda0", a}, {"lambda1_pi", b}, {"space_vs_databases", s}});
  }
  r.add(Check::le("pi_le_t_lambda0_eq_pi0t", v0, 1e-9));
  r.add(Check::le("lambda1_pi_le_t_eq_pi1t", v1, 1e-9));
  r.add(Check::le("space_chain_eq_comp_databases", vs, 1e-9));
  r.data["per_t"] = per_t;
  return r;
}

Report eta_bound_check(const ProblemSpec& spec, const Property& p, int z) {
  if (z < 0 || z >= static_cast<int>(p.tuples.size())) throw ParameterError("eta_bound_check: z outside P");
  Report r;
  r.name = "eta_bound";
  ProblemSpec ps = problem_from_property(spec.n, spec.m, p);
  CMatrix comp = comp_isometry(ps);
  CMatrix l1 = comp_conjugate(comp, property_databases(ps, p), ps.m);
  const Eigen::Index n = l1.rows();
  CMatrix l0 = CMatrix::Identity(n, n) - l1;
  CMatrix fz = f_z_projector(ps, z).projector();
  const double norm2 = std::pow(spectral_norm(fz * l0), 2);

  Property single{"single", p.arity, {p.tuples[static_cast<std::size_t>(z)]}};
  CMatrix pz = comp_conjugate(comp, property_databases(ps, single), ps.m);
  const double diff2 = std::pow(spectral_norm(fz - fz * pz), 2);

  const int k = p.arity;
  const double q = std::pow(1.0 - 1.0 / spec.m, k);
  const double chain = 1.0 - 2.0 * q * q + q * q * q;
  const double loose = 1.0 - q * q;
  const double eta = 2.0 * k / spec.m;
  r.add(Check::le("fz_lambda0_le_normdiff", norm2 - diff2, 1e-9));
  r.add(Check::le("normdiff_le_chain", diff2 - chain, 1e-9));
  r.add(Check::le("chain_le_one_minus_q2", chain - loose, 1e-12));
  r.add(Check::le("bernoulli", loose - eta, 1e-12));
  r.data = {{"norm2", norm2}, {"normdiff2", diff2}, {"chain", chain}, {"eta", eta}, {"q", q}, {"z", z}};
  return r;
}

double reduction_kappa(double eps, double eta) {
  const double g = std::sqrt(1.0 - eps) - std::sqrt(eta);
  if (!(g > 0.0)) throw ParameterError("reduction_kappa: needs sqrt(1-eps) > sqrt(eta)");
  return 1.0 + (std::exp(1.0) - 1.0) / (g * g);
}

void gate_reduction(int m, int k, double eps) {
  if (k < 1 || k > m - 1) throw ParameterError("reduction: requires k in [1, M-1]");
  const double top = 1.0 - (9.0 - 4.0 * std::sqrt(2.0)) * k / m;
  if (!(eps > 0.0 && eps < top))
    throw ParameterError("reduction: requires eps in (0, 1 - (9 - 4 sqrt 2) k/M)");
}

Report reduction_factor_check(const ProblemSpec& spec, const Property& p, double eps) {
  gate_reduction(spec.m, p.arity, eps);
  const int k = p.arity;
  const double eta = 2.0 * k / spec.m;
  const double kappa = reduction_kappa(eps, eta);
  const double gap = std::sqrt(1.0 - eps) - std::sqrt(eta);
  const double coef = (kappa - 1.0) / std::sqrt(kappa);

  Report r;
  r.name = "reduction_factor";
  BoundReport comp = comp_lower_bound(spec, p, eps, CompMode{});

  // MLADV side with the dense Lambda's: s_t = max_{x,y} ||Lambda1 Pi_{<=t} O Pi_{<=t-1} Lambda0||
  CMatrix l1 = property_lambda1(spec, p);
  const Eigen::Index n = l1.rows();
  CMatrix l0 = CMatrix::Identity(n, n) - l1;
  SpaceChain chain = space_chain(InputDistribution::uniform(spec), spec);
  std::vector<double> s;
  double dominated = 0.0;
  for (int t = 1; t <= spec.n + 1; ++t) {
    const CMatrix& vhi = chain.upto(t).basis();
    const CMatrix& vlo = chain.upto(t - 1).basis();
    CMatrix a = l1 * vhi;
    CMatrix c = vlo.adjoint() * l0;
    CMatrix sa = gram_sqrt(a.adjoint() * a);
    CMatrix sc = gram_sqrt(c * c.adjoint());
    double best = 0.0;
    for (int x = 0; x < spec.n; ++x)
      for (int y = 0; y < spec.m; ++y) {
        CVector dg = phase_diag(spec, x, y);
        best = std::max(best, factored_norm(sa, vhi.adjoint() * dg.asDiagonal() * vlo, sc));
      }
    s.push_back(best);
    dominated = std::max(dominated, best - comp.per_step[static_cast<std::size_t>(t - 1)]);
  }
  auto step_at = [&](long long t) { return s[static_cast<std::size_t>(std::min<long long>(t, spec.n + 1) - 1)]; };

  const double target = 1.0 + (kappa - 1.0) * gap * gap;
  std::optional<long long> t_mladv;
  double log_prod = 0.0;
  const bool flat = s.back() <= 0.0;
  for (long long t = 1; t <= 10'000'000; ++t) {
    log_prod += 2.0 * std::log1p(coef * step_at(t));
    if (log_prod >= std::log(target) - 1e-15) {
      t_mladv = t;
      break;
    }
    if (flat && t > spec.n) break;
  }

  r.data["T_COMP"] = comp.T ? json(*comp.T) : json("unbounded");
  r.data["T_MLADV"] = t_mladv ? json(*t_mladv) : json("unbounded");
  r.data["kappa"] = kappa;
  r.data["eta"] = eta;
  r.data["mladv_steps"] = s;
  r.data["comp_steps"] = comp.per_step;
  r.add(Check::le("pi_form_le_database_form", dominated, 1e-9));

  if (!comp.T || !t_mladv) {
    r.add(Check{"factor_six", 0.0, 0.0, true, json{{"skipped", "a bound is unbounded"}}});
    return r;
  }
  const long long T = *t_mladv;
  r.add(Check::le("factor_six", static_cast<double>(*comp.T - 6 * T), 0.0,
                  json{{"T_COMP", *comp.T}, {"six_T_MLADV", 6 * T}}));

  // replay of the chain that turns the product condition into the COMP sum
  double sum_log = 0.0, sum_s = 0.0, sum6 = 0.0;
  for (long long t = 1; t <= T; ++t) {
    sum_log += std::log1p(coef * step_at(t));
    sum_s += step_at(t);
  }
  for (long long t = 1; t <= 6 * T; ++t) sum6 += step_at(t);
  const double a0 = gap;
  const double a1 = 2.0 * gap * sum_log;
  const double a2 = 2.0 * gap * coef * sum_s;
  const double a3 = 3.0 * sum_s;
  const double b0 = std::sqrt(1.0 - eps) - std::sqrt(static_cast<double>(k) / spec.m);
  const double b1 = 2.0 * gap;
  double comp6 = 0.0;
  for (long long t = 1; t <= 6 * T; ++t)
    comp6 += comp.per_step[static_cast<std::size_t>(std::min<long long>(t, spec.n + 1) - 1)];
  r.add(Check::le("chain_log_form", a0 - a1, 1e-9));
  r.add(Check::le("chain_log1p_le_linear", a1 - a2, 1e-9));
  r.add(Check::le("chain_factor_three", a2 - a3, 1e-9, json{{"two_gap_coef", 2.0 * gap * coef}}));
  r.add(Check::le("chain_comp_target_le_two_gap", b0 - b1, 1e-12));
  r.add(Check::le("chain_two_gap_le_sum_6T", b1 - sum6, 1e-9));
  r.add(Check::le("chain_sum_6T_le_comp_sum", sum6 - comp6, 1e-9));
  r.data["chain"] = {{"gap", a0},  {"log_form", a1},  {"linear", a2},      {"three_sum", a3},
                     {"comp_target", b0}, {"two_gap", b1}, {"sum_6T", sum6}, {"comp_sum_6T", comp6}};
  return r;
}

MlaMatrix tensor_power(const MlaMatrix& base, int k) {
  if (k < 1) throw ParameterError("tensor_power: k must be >= 1");
  if (k == 1) return base;
  const double dim = std::pow(static_cast<double>(base.dim()), k);
  require_size(static_cast<std::size_t>(dim * dim), caps().max_kron_entries, "tensor_power");
  const int l = base.ladder_levels();
  MlaMatrix out;
  out.kappa = base.kappa;
  const int levels = k * l;
  std::vector<std::vector<CMatrix>> cols(static_cast<std::size_t>(levels + 1));
  std::vector<std::vector<RVector>> vals(static_cast<std::size_t>(levels + 1));
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  // idx[0] is the most significant factor
  std::function<void(int, CMatrix, RVector, int)> rec = [&](int depth, CMatrix b, RVector v, int level) {
    if (depth == k) {
      if (b.cols()) {
        cols[static_cast<std::size_t>(level)].push_back(std::move(b));
        vals[static_cast<std::size_t>(level)].push_back(std::move(v));
      }
      return;
    }
    for (int i = 0; i <= l; ++i) {
      const CMatrix& e = base.eigenspaces[static_cast<std::size_t>(i)].basis();
      if (e.cols() == 0) continue;
      RVector ev = base.level_values(i);
      CMatrix nb = depth == 0 ? e : kron(b, e);
      RVector nv(depth == 0 ? ev.size() : v.size() * ev.size());
      if (depth == 0) {
        nv = ev;
      } else {
        for (Eigen::Index a = 0; a < v.size(); ++a) nv.segment(a * ev.size(), ev.size()) = v(a) * ev;
      }
      rec(depth + 1, std::move(nb), std::move(nv), level + i);
    }
  };
  rec(0, CMatrix(), RVector(), 0);
  const Eigen::Index d = static_cast<Eigen::Index>(std::llround(dim));
  for (int j = 0; j <= levels; ++j) {
    Eigen::Index total = 0;
    for (const auto& c : cols[static_cast<std::size_t>(j)]) total += c.cols();
    CMatrix b(d, total);
    RVector v(total);
    Eigen::Index at = 0;
    for (std::size_t q = 0; q < cols[static_cast<std::size_t>(j)].size(); ++q) {
      const auto& c = cols[static_cast<std::size_t>(j)][q];
      b.middleCols(at, c.cols()) = c;
      v.segment(at, c.cols()) = vals[static_cast<std::size_t>(j)][q];
      at += c.cols();
    }
    out.eigenspaces.emplace_back(b, false);
    out.values.push_back(v);
  }
  if (base.values.empty()) out.values.clear();
  return out;
}

InputDistribution power_distribution(const InputDistribution& dist, const ProblemSpec& spec, int k) {
  if (!spec.full()) throw ParameterError("power_distribution: needs Func = Y^X");
  const std::size_t base = dist.weights.size();
  const double total = std::pow(static_cast<double>(base), k);
  require_size(static_cast<std::size_t>(total), caps().max_state_dim, "power_distribution");
  InputDistribution out;
  out.weights.assign(static_cast<std::size_t>(total), 1.0);
  for (std::size_t i = 0; i < out.weights.size(); ++i) {
    std::size_t r = i;
    for (int j = 0; j < k; ++j) {
      out.weights[i] *= dist.weights[r % base];
      r /= base;
    }
  }
  return out;
}

std::vector<Isometry> product_chain(const SpaceChain& base, int k) {
  const int n = base.n();
  std::vector<Isometry> out;
  for (int t = 0; t <= k * n; ++t) {
    std::vector<CMatrix> parts;
    std::vector<int> ts(static_cast<std::size_t>(k), 0);
    std::function<void(int, int, CMatrix)> rec = [&](int depth, int used, CMatrix b) {
      if (depth == k) {
        if (b.cols()) parts.push_back(std::move(b));
        return;
      }
      for (int s = 0; s <= n && used + s <= t; ++s) {
        const CMatrix& e = base.increment(s).basis();
        if (e.cols() == 0) continue;
        rec(depth + 1, used + s, depth == 0 ? e : kron(b, e));
      }
    };
    rec(0, 0, CMatrix());
    Eigen::Index total = 0;
    for (const auto& p : parts) total += p.cols();
    const Eigen::Index d = parts.empty() ? static_cast<Eigen::Index>(std::pow(base.upto(0).ambient(), k))
                                         : parts.front().rows();
    CMatrix b(d, total);
    Eigen::Index at = 0;
    for (const auto& p : parts) {
      b.middleCols(at, p.cols()) = p;
      at += p.cols();
    }
    out.emplace_back(b, false);
  }
  return out;
}

namespace {

// ln(e^a + e^b)
double lse(double a, double b) {
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

// ln(1 + e^a)
double softplus(double a) { return a > 0 ? a + std::log1p(std::exp(-a)) : std::log1p(std::exp(a)); }

}  // namespace

SdptScalars sdpt_scalar_checks(double lam, double eps, double eta, int k) {
  if (!(eta > 0.0 && eta <= 0.5)) throw ParameterError("sdpt: requires eta in (0, 1/2]");
  if (k < 361) throw ParameterError("sdpt: requires k >= 361");
  if (!(lam > 1.0)) throw ParameterError("sdpt: requires lambda > 1");
  if (!(eps > 0.0 && eps <= 1.0 - eta)) throw ParameterError("sdpt: requires eps in (0, 1 - eta]");
  const double kd = k;
  const double gap = std::sqrt(1.0 - eps) - std::sqrt(eta);
  const double base = 1.0 + (lam - 1.0) * gap * gap;
  const double log_a = std::log(base) - std::log(lam);

  SdptScalars s;
  s.report.name = "sdpt_scalars";
  // (i) k (10e)^{k/10} eta^{9k/10} <= eta^{2k/5}
  const double i_lhs = std::log(kd) + kd / 10.0 * (std::log(10.0) + 1.0) + 0.9 * kd * std::log(eta);
  const double i_rhs = 0.4 * kd * std::log(eta);
  s.report.add(Check::le("i_eta_power", i_lhs - i_rhs, 1e-9, json{{"log_lhs", i_lhs}, {"log_rhs", i_rhs}}));

  // (ii) c_k = [A^{k/10} + eta^{k/5}]^{2/k} < 1
  const double la = kd / 10.0 * log_a;
  const double lb = kd / 5.0 * std::log(eta);
  const double log_half = lse(la, lb);  // ln c^{k/2}
  s.log_c = 2.0 / kd * log_half;
  s.c = std::exp(s.log_c);
  s.report.add(Check{"ii_c_below_one", std::max(0.0, s.log_c), 0.0, s.log_c < 0.0, json{{"log_c", s.log_c}}});

  // (iii) 1 + (lambda'-1)(sqrt(c^k) - sqrt(eta'))^2 >= base^{k/10}
  const double log_lp = kd / 10.0 * std::log(lam);
  s.lambda_prime = std::exp(log_lp);
  s.log_eta_prime = 0.4 * kd * std::log(eta);
  const double log_lp_m1 = log_lp + std::log1p(-std::exp(-log_lp));
  const double log_diff = log_half + std::log1p(-std::exp(lb - log_half));
  const double log_lhs = softplus(log_lp_m1 + 2.0 * log_diff);
  const double log_rhs = kd / 10.0 * std::log(base);
  s.report.add(Check::le("iii_amplification", log_rhs - log_lhs, 1e-9,
                         json{{"log_lhs", log_lhs}, {"log_rhs", log_rhs}}));
  // the weaker form with the square dropped
  const double log_tail = softplus(log_lp_m1 + log_diff);
  s.report.data["tail_form"] = {{"log_lhs", log_tail}, {"log_rhs", log_rhs}, {"holds", log_tail >= log_rhs - 1e-9}};
  s.report.data["c"] = s.c;
  s.report.data["lambda_prime"] = num(s.lambda_prime);
  s.report.data["log_eta_prime"] = s.log_eta_prime;
  return s;
}

BoundReport sdpt_bound_report(const BoundReport& base, int k) {
  if (k < 361) throw ParameterError("sdpt: requires k >= 361");
  if (!base.T || base.unbounded) throw ParameterError("sdpt: base bound must be finite");
  auto get = [&](const char* key) {
    auto it = base.parameters.find(key);
    if (it == base.parameters.end()) throw ParameterError(std::string("sdpt: base report lacks ") + key);
    return it->second;
  };
  SdptScalars s = sdpt_scalar_checks(get("lambda"), get("eps"), get("eta"), k);
  BoundReport r;
  r.bound_name = "SDPT";
  r.value = static_cast<double>(k) / 10.0 * static_cast<double>(*base.T);
  r.parameters = {{"k", k},
                  {"T_base", static_cast<double>(*base.T)},
                  {"c", s.c},
                  {"log_c", s.log_c},
                  {"log_success_threshold_complement", k * s.log_c},
                  {"log_eta_prime", s.log_eta_prime}};
  r.verdicts = s.report.checks;
  r.note = "derived bound, not independently verified at scale";
  r.extra["success_threshold"] = "1 - c^k";
  r.extra["scalars"] = s.report;
  return r;
}

}  // namespace qlb
