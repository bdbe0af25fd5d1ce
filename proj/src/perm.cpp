#include "qlb/perm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "qlb/error.hpp"

namespace qlb {

ProblemSpec perm_problem(int n) {
  if (n < 2) throw ParameterError("perm: requires N >= 2");
  if (n > 6) throw SizeError("perm: requires N <= 6 (dimension N! <= 720)");
  std::vector<FuncTable> funcs;
  FuncTable p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do funcs.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  ProblemSpec s = make_problem("perm", n, n, n, funcs, [](const FuncTable& f) {
    return std::vector<int>{static_cast<int>(std::find(f.begin(), f.end(), 0) - f.begin())};
  });
  return s;
}

std::int64_t lehmer_rank(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::int64_t rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j) smaller += perm[static_cast<std::size_t>(j)] < perm[static_cast<std::size_t>(i)];
    rank = rank * (n - i) + smaller;
  }
  return rank;
}

std::optional<VState> perm_v_state(const ProblemSpec& spec, const std::vector<int>& xs, const std::vector<int>& ys) {
  return v_state(InputDistribution::uniform(spec), spec, VStateSpec{xs, ys});
}

namespace {

void subsets_of(const std::vector<int>& pool, int t, std::size_t start, std::vector<int>& cur,
                std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == t) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < pool.size(); ++i) {
    cur.push_back(pool[i]);
    subsets_of(pool, t, i + 1, cur, out);
    cur.pop_back();
  }
}

Isometry span_with(const Isometry& prev, const std::vector<CVector>& gens) {
  CMatrix all(prev.ambient(), prev.rank() + static_cast<Eigen::Index>(gens.size()));
  all.leftCols(prev.rank()) = prev.basis();
  for (std::size_t i = 0; i < gens.size(); ++i) all.col(prev.rank() + static_cast<Eigen::Index>(i)) = gens[i];
  return span_isometry(all);
}

}  // namespace

PermChains perm_chains(const ProblemSpec& spec) {
  if (spec.name != "perm") throw ParameterError("perm_chains: needs the permutation problem");
  const int n = spec.n;
  PermChains c;
  c.a = space_chain(InputDistribution::uniform(spec), spec).cumulative;
  const Eigen::Index d = spec.size();
  Isometry prev(d);
  for (int t = 1; t <= n; ++t) {
    if (prev.rank() == c.a[static_cast<std::size_t>(t)].rank()) {
      c.b.push_back(c.a[static_cast<std::size_t>(t)]);
      prev = c.b.back();
      continue;
    }
    // first slot (x1, 0); the other t-1 slots are a sorted set of further inputs
    std::vector<CVector> gens;
    for (int x1 = 0; x1 < n; ++x1) {
      std::vector<int> pool;
      for (int x = 0; x < n; ++x)
        if (x != x1) pool.push_back(x);
      std::vector<std::vector<int>> rests;
      std::vector<int> cur;
      subsets_of(pool, t - 1, 0, cur, rests);
      for (const auto& rest : rests) {
        std::map<std::int64_t, CVector> bucket;
        for (int f = 0; f < d; ++f) {
          if (spec.value(f, x1) != 0) continue;
          std::int64_t key = 0;
          for (int x : rest) key = key * n + spec.value(f, x);
          auto it = bucket.find(key);
          if (it == bucket.end()) it = bucket.emplace(key, CVector::Zero(d)).first;
          it->second(f) = 1.0;
        }
        for (auto& [key, v] : bucket) gens.push_back(v / v.norm());
      }
    }
    c.b.push_back(span_with(prev, gens));
    prev = c.b.back();
  }
  for (int t = 0; t <= n; ++t) {
    Isometry hi(d);
    Isometry lo = c.a[0];
    for (int i = 1; i <= t; ++i) {
      hi = hi.join(c.b_at(i).minus(c.a[static_cast<std::size_t>(i - 1)]));
      lo = lo.join(c.a[static_cast<std::size_t>(i)].minus(c.b_at(i)));
    }
    c.hat_high.push_back(hi);
    c.hat_low.push_back(lo);
  }
  return c;
}

std::vector<Isometry> perm_b_any_slot(const ProblemSpec& spec) {
  const int n = spec.n;
  if (n > 4) throw SizeError("perm_b_any_slot: brute force limited to N <= 4");
  std::vector<Isometry> out;
  for (int t = 1; t <= n; ++t) {
    std::set<std::vector<std::pair<int, int>>> seen;
    std::vector<CVector> gens;
    const std::int64_t total = ipow(n * n, t);
    for (std::int64_t code = 0; code < total; ++code) {
      std::vector<std::pair<int, int>> pairs;
      std::int64_t r = code;
      bool zero = false;
      for (int i = 0; i < t; ++i) {
        int cell = static_cast<int>(r % (n * n));
        r /= n * n;
        pairs.emplace_back(cell / n, cell % n);
        zero = zero || cell % n == 0;
      }
      if (!zero) continue;
      std::sort(pairs.begin(), pairs.end());
      pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
      if (!seen.insert(pairs).second) continue;
      std::vector<int> xs, ys;
      for (auto [x, y] : pairs) {
        xs.push_back(x);
        ys.push_back(y);
      }
      if (auto v = perm_v_state(spec, xs, ys)) gens.push_back(v->vec);
    }
    out.push_back(span_isometry(gens));
  }
  return out;
}

MlaMatrix perm_mla(const PermChains& chains, double kappa) {
  return MlaMatrix::two_level(chains.hat_high.back(), kappa);
}

Report check_perm_subsets(const PermChains& chains) {
  Report r;
  r.name = "perm_subsets";
  double lo = 0.0, hi = 0.0;
  for (int t = 1; t <= chains.n(); ++t) {
    lo = std::max(lo, chains.b_at(t).excess(chains.a[static_cast<std::size_t>(t - 1)]));
    hi = std::max(hi, chains.a[static_cast<std::size_t>(t)].excess(chains.b_at(t)));
  }
  r.add(Check::le("a_prev_in_b", lo, 1e-10));
  r.add(Check::le("b_in_a", hi, 1e-10));
  return r;
}

Report check_perm_proj(const PermChains& chains, double kappa) {
  Report r;
  r.name = "perm_proj";
  MlaMatrix g = perm_mla(chains, kappa);
  const CMatrix l1 = g.eigenspaces[1].projector();
  const Eigen::Index d = l1.rows();
  const CMatrix l0 = CMatrix::Identity(d, d) - l1;
  double v1 = 0.0, v0 = 0.0;
  for (int t = 0; t <= chains.n(); ++t) {
    CMatrix pi = chains.a[static_cast<std::size_t>(t)].projector();
    v1 = std::max(v1, spectral_norm(l1 * pi - chains.hat_high[static_cast<std::size_t>(t)].projector()));
    v0 = std::max(v0, spectral_norm(pi * l0 - chains.hat_low[static_cast<std::size_t>(t)].projector()));
  }
  r.add(Check::le("lambda1_pi_eq_hat_high", v1, 1e-9));
  r.add(Check::le("pi_lambda0_eq_hat_low", v0, 1e-9));
  return r;
}

StepNorm perm_step_norm(const ProblemSpec& spec, const PermChains& chains, int t) {
  if (t < 1 || t > chains.n()) throw ParameterError("perm_step_norm: requires t in [1, N]");
  StepNorm best;
  bool first = true;
  for (int x = 0; x < spec.n; ++x)
    for (int y = 0; y < spec.m; ++y) {
      double v = sandwich_norm(chains.hat_high[static_cast<std::size_t>(t)], phase_diag(spec, x, y),
                               chains.hat_low[static_cast<std::size_t>(t - 1)]);
      if (first || v > best.value + 1e-12) {
        best = {v, x, y};
        first = false;
      }
    }
  return best;
}

Report perm_eta(const ProblemSpec& spec, const PermChains& chains, int big_t) {
  const int n = spec.n;
  if (n <= 2 * big_t) throw ParameterError("perm_eta: requires N > 2T");
  const Isometry l0 = chains.hat_high.back().complement();
  if (big_t > n) throw ParameterError("perm_eta: requires T <= N");
  // T-query states live in Pi_{<=T}; Pi_{<=T} Lambda_0 = hat Pi_{0,T}
  const Isometry& reach = chains.hat_low[static_cast<std::size_t>(big_t)];
  double worst = 0.0, worst_reach = 0.0;
  long long rank_defect = 0;
  long long fact = 1;
  for (int i = 2; i < n; ++i) fact *= i;
  for (int z = 0; z < n; ++z) {
    Isometry fz = f_z_projector(spec, z);
    rank_defect = std::max<long long>(rank_defect, std::llabs(fz.rank() - fact));
    if (l0.rank()) worst = std::max(worst, spectral_norm(fz.basis().adjoint() * l0.basis()));
    if (reach.rank()) worst_reach = std::max(worst_reach, spectral_norm(fz.basis().adjoint() * reach.basis()));
  }
  const double bound = 1.0 / std::sqrt(static_cast<double>(n - 2 * big_t));
  Report r;
  r.name = "perm_eta";
  r.add(Check::le("fz_lambda0_le_cited", worst - bound, 1e-9, json{{"norm", worst}, {"bound", bound}}));
  r.add(Check::le("fz_reachable_lambda0_le_cited", worst_reach - bound, 1e-9,
                  json{{"norm", worst_reach}, {"bound", bound}}));
  r.add(Check::le("fz_rank_is_factorial", static_cast<double>(rank_defect), 0.0));
  r.data = {{"norm", worst}, {"reachable_norm", worst_reach}, {"bound", bound}, {"T", big_t}};
  return r;
}

PermBounds perm_success_bound(long long n, long long big_t) {
  if (big_t < 0) throw ParameterError("perm: requires T >= 0");
  if (n <= 4 * big_t) throw ParameterError("perm: requires N > 4T");
  const double denom = static_cast<double>(n - 4 * big_t);
  const double t = static_cast<double>(big_t);
  return {std::pow(1.0 + 2.0 * std::sqrt(2.0) * t, 2) / denom, std::pow(1.0 + 8.0 * t, 2) / denom};
}

BoundReport perm_bound_report(long long n, long long big_t) {
  PermBounds b = perm_success_bound(n, big_t);
  BoundReport r;
  r.bound_name = "PERM";
  r.value = b.cited;
  r.parameters = {{"N", static_cast<double>(n)}, {"T", static_cast<double>(big_t)}, {"cited", b.cited},
                  {"derived", b.derived}};
  r.extra["labels"] = {{"cited", b.cited}, {"derived-chain", b.derived}};
  r.verdicts.push_back(Check::le("derived_ge_cited", b.cited - b.derived, 1e-12));
  r.note = "success probability upper bounds; value is the cited one";
  return r;
}

}  // namespace qlb
