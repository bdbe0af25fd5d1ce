#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qlb/compressed.hpp"
#include "qlb/error.hpp"
#include "qlb/ladder.hpp"
#include "qlb/perm.hpp"
#include "qlb/poly.hpp"
#include "qlb/reductions.hpp"
#include "qlb/suites.hpp"

namespace fs = std::filesystem;
using namespace qlb;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Config {
  std::string command;
  std::optional<std::string> method, problem, suite, mode, out, dir;
  std::optional<int> n, m, k, t;
  std::optional<double> eps, kappa, lambda, eta, tol;
  std::optional<std::uint64_t> seed;
  std::optional<long long> max_kron_entries, max_state_dim;
  bool no_timestamp = false;
};

template <class T>
void fill(std::optional<T>& slot, const json& j, const char* key) {
  if (!slot && j.contains(key) && !j[key].is_null()) slot = j[key].get<T>();
}

// flags win over the config file
void merge_file(Config& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("config: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParameterError("config: " + path + " is not valid JSON");
  }
  if (!j.is_object()) throw ParameterError("config: top level must be an object");
  fill(c.method, j, "method");
  fill(c.problem, j, "problem");
  fill(c.suite, j, "suite");
  fill(c.mode, j, "mode");
  fill(c.out, j, "out");
  fill(c.dir, j, "dir");
  fill(c.n, j, "n");
  fill(c.m, j, "m");
  fill(c.k, j, "k");
  fill(c.t, j, "t");
  fill(c.eps, j, "eps");
  fill(c.kappa, j, "kappa");
  fill(c.lambda, j, "lambda");
  fill(c.eta, j, "eta");
  fill(c.tol, j, "tol");
  fill(c.seed, j, "seed");
  fill(c.max_kron_entries, j, "max_kron_entries");
  fill(c.max_state_dim, j, "max_state_dim");
  if (j.contains("no_timestamp") && j["no_timestamp"].is_boolean()) c.no_timestamp = c.no_timestamp || j["no_timestamp"].get<bool>();
}

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json echo(const Config& c) {
  return {{"command", c.command}, {"method", opt(c.method)}, {"problem", opt(c.problem)}, {"suite", opt(c.suite)},
          {"mode", opt(c.mode)},  {"n", opt(c.n)},           {"m", opt(c.m)},             {"k", opt(c.k)},
          {"t", opt(c.t)},        {"eps", opt(c.eps)},       {"kappa", opt(c.kappa)},     {"lambda", opt(c.lambda)},
          {"eta", opt(c.eta)},    {"tol", opt(c.tol)},       {"seed", c.seed.value_or(0)}};
}

template <class T>
T need(const std::optional<T>& v, const char* flag) {
  if (!v) throw ParameterError(std::string("missing required --") + flag);
  return *v;
}

Property property_for(const std::string& name, int n, int m) {
  if (name == "collision") return collision_property(n, m);
  if (name == "preimage") return preimage_property(n, m);
  throw ParameterError("unknown problem '" + name + "' (expected collision or preimage)");
}

int property_arity(const std::string& name) {
  if (name == "collision") return 2;
  if (name == "preimage") return 1;
  throw ParameterError("unknown problem '" + name + "' (expected collision or preimage)");
}

BoundReport bound_comp(const Config& c) {
  const std::string prob = c.problem.value_or("collision");
  const int arity = property_arity(prob);
  const int k = c.k.value_or(arity);
  if (k != arity) throw ParameterError("comp: --k must equal the property arity (" + std::to_string(arity) + ")");
  const int m = need(c.m, "m");
  const double eps = need(c.eps, "eps");
  std::string mode = c.mode.value_or("");
  if (mode.empty()) {
    // numeric when the instance is small enough to materialize
    const bool small = c.n && *c.n >= 1 && std::pow(m + 1.0, *c.n) <= 4096;
    mode = small ? "numeric" : "analytic";
  }
  if (mode == "analytic") {
    if (prob != "collision") throw ParameterError("comp: analytic mode is only available for collision");
    BoundReport r = comp_lower_bound(c.n.value_or(0), m, k, eps, CompMode{true, collision_step_formula(m)});
    if (!c.n) r.parameters.erase("N");
    return r;
  }
  if (mode != "numeric") throw ParameterError("comp: --mode must be analytic or numeric");
  const int n = need(c.n, "n");
  return comp_lower_bound(full_problem(n, m), property_for(prob, n, m), eps, CompMode{});
}

struct LadderSetup {
  ProblemSpec spec;
  MlaMatrix gamma;
  SpaceChain chain;
  double lambda, eta, eps;
};

LadderSetup ladder_setup(const Config& c) {
  const std::string prob = c.problem.value_or("collision");
  const double eps = need(c.eps, "eps");
  if (prob == "parity") {
    const int n = need(c.n, "n");
    if (n < 1 || n > 4) throw ParameterError("parity: requires n in [1, 4]");
    ProblemSpec spec = boolean_problem(BooleanFunction::parity(n));
    MlaMatrix g = parity_ladder_gamma(n, c.kappa.value_or(4.0));
    SpaceChain chain = space_chain(InputDistribution::uniform(spec), spec);
    const double lam = c.lambda.value_or(g.max_eigenvalue());
    const double eta = c.eta.value_or(eta_for(g, lam, spec));
    return {spec, g, chain, lam, eta, eps};
  }
  const int n = need(c.n, "n"), m = need(c.m, "m");
  Property p = property_for(prob, n, m);
  ProblemSpec spec = problem_from_property(n, m, p);
  // default kappa follows the property reduction when its eta = 2k/M leaves room
  const double eta_red = 2.0 * p.arity / m;
  const double kappa = c.kappa.value_or(eta_red < 1.0 - eps ? reduction_kappa(eps, eta_red) : 4.0);
  MlaMatrix g = gamma_from_property(spec, p, kappa);
  SpaceChain chain = space_chain(InputDistribution::uniform(spec), spec);
  const double lam = c.lambda.value_or(g.max_eigenvalue());
  const double eta = c.eta.value_or(eta_for(g, lam, spec));
  return {spec, g, chain, lam, eta, eps};
}

BoundReport bound_report(const Config& c) {
  const std::string method = need(c.method, "method");
  if (method == "comp") return bound_comp(c);
  if (method == "mladv" || method == "madv" || method == "sdpt") {
    Config base = c;
    if (method == "sdpt") base.k.reset();
    LadderSetup s = ladder_setup(base);
    if (method == "madv") return madv_lower_bound(s.gamma, s.spec, s.lambda, s.eta, s.eps);
    BoundReport b = mladv_lower_bound(s.gamma, s.chain, s.spec, s.lambda, s.eta, s.eps);
    if (method == "mladv") return b;
    return sdpt_bound_report(b, need(c.k, "k"));
  }
  if (method == "poly") {
    const int n = need(c.n, "n");
    BooleanFunction f = BooleanFunction::parse(c.problem.value_or("parity"), n);
    return poly_reduction_bound(f, need(c.eps, "eps"));
  }
  if (method == "perm") return perm_bound_report(need(c.n, "n"), c.t.value_or(0));
  throw ParameterError("unknown method '" + method + "' (expected comp, mladv, madv, sdpt, poly or perm)");
}

SuiteOptions suite_options(const Config& c) {
  SuiteOptions o;
  o.n = c.n;
  o.m = c.m;
  o.k = c.k;
  o.t = c.t;
  o.eps = c.eps;
  o.eta = c.eta;
  o.lambda = c.lambda;
  o.kappa = c.kappa;
  o.seed = c.seed.value_or(0);
  return o;
}

// applies --tol as an override of every check tolerance
void apply_tol(Report& r, const std::optional<double>& tol) {
  if (!tol) return;
  for (auto& ch : r.checks) {
    ch.tol = *tol;
    ch.pass = ch.max_violation <= *tol;
  }
}

json envelope(const Config& c, json result) {
  json j = {{"command", c.command}, {"version", kVersion}, {"config", echo(c)}, {"seed", c.seed.value_or(0)}};
  if (!c.no_timestamp) {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    j["timestamp"] = buf;
  }
  j["result"] = std::move(result);
  return j;
}

void emit(const Config& c, const std::string& text) {
  if (c.out) {
    std::ofstream f(*c.out);
    if (!f) throw ParameterError("cannot write --out " + *c.out);
    f << text;
  } else {
    std::cout << text;
  }
}

std::string csv_field(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 1e15) return std::to_string(static_cast<long long>(d));
  }
  return v.dump();
}

int cmd_report(const Config& c) {
  const std::string dir = need(c.dir, "dir");
  std::ostringstream out;
  out << "method,problem,N,M,k,eps,T,value,file\n";
  int rows = 0;
  std::vector<fs::path> files;
  if (fs::is_directory(dir))
    for (const auto& e : fs::directory_iterator(dir))
      if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    std::string why;
    try {
      std::ifstream in(p);
      json j;
      in >> j;
      if (j.value("command", "") != "bound") {
        why = "not a bound report";
      } else {
        const json& r = j.at("result");
        const json& cfg = j.at("config");
        const json& par = r.value("parameters", json::object());
        auto pick = [&](const char* key) {
          if (par.contains(key)) return par[key];
          return cfg.value(key, json(nullptr));
        };
        out << csv_field(r.value("bound_name", json(nullptr))) << ',' << csv_field(cfg.value("problem", json(nullptr)))
            << ',' << csv_field(pick("N")) << ',' << csv_field(pick("M")) << ',' << csv_field(pick("k")) << ','
            << csv_field(pick("eps")) << ',' << csv_field(r.value("T", json(nullptr))) << ','
            << csv_field(r.value("value", json(nullptr))) << ',' << p.filename().string() << '\n';
        ++rows;
      }
    } catch (const std::exception& e) {
      why = std::string("unreadable: ") + e.what();
    }
    if (!why.empty()) std::cerr << "skip " << p.string() << ": " << why << '\n';
  }
  emit(c, out.str());
  if (rows == 0) {
    std::cerr << "report: no usable bound reports in " << dir << '\n';
    return 1;
  }
  return 0;
}

int run(Config& c) {
  if (c.max_kron_entries) caps().max_kron_entries = static_cast<std::size_t>(*c.max_kron_entries);
  if (c.max_state_dim) caps().max_state_dim = static_cast<std::size_t>(*c.max_state_dim);
  if (c.command == "bound") {
    BoundReport b = bound_report(c);
    emit(c, envelope(c, b).dump(2) + "\n");
    bool ok = std::all_of(b.verdicts.begin(), b.verdicts.end(), [](const Check& v) { return v.pass; });
    return ok ? 0 : 1;
  }
  if (c.command == "verify") {
    Report r = run_suite(c.suite.value_or("all"), suite_options(c));
    apply_tol(r, c.tol);
    emit(c, envelope(c, r).dump(2) + "\n");
    for (const auto& ch : r.checks)
      if (!ch.pass) std::cerr << "FAIL " << ch.name << " violation " << ch.max_violation << " tol " << ch.tol << '\n';
    return r.pass() ? 0 : 1;
  }
  if (c.command == "reduce") {
    const int n = need(c.n, "n"), m = need(c.m, "m");
    const std::string prob = c.problem.value_or("collision");
    Report r = reduction_factor_check(full_problem(n, m), property_for(prob, n, m), c.eps.value_or(0.1));
    apply_tol(r, c.tol);
    emit(c, envelope(c, r).dump(2) + "\n");
    return r.pass() ? 0 : 1;
  }
  if (c.command == "report") return cmd_report(c);
  throw ParameterError("unknown command");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical workbench for quantum query lower bounds"};
  app.require_subcommand(1);
  Config c;
  std::optional<std::string> config_path;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--method", c.method, "comp | mladv | madv | sdpt | poly | perm");
    s->add_option("--problem", c.problem, "collision | preimage | parity | boolean function spec");
    s->add_option("--n", c.n);
    s->add_option("--m", c.m);
    s->add_option("--k", c.k);
    s->add_option("--t", c.t);
    s->add_option("--eps", c.eps);
    s->add_option("--kappa", c.kappa);
    s->add_option("--lambda", c.lambda);
    s->add_option("--eta", c.eta);
    s->add_option("--tol", c.tol, "override every check tolerance");
    s->add_option("--seed", c.seed);
    s->add_option("--suite", c.suite, "space | ladder | reduction | sdpt | poly | perm | all");
    s->add_option("--mode", c.mode, "comp only: analytic | numeric");
    s->add_option("--out", c.out, "output file (default stdout)");
    s->add_option("--config", config_path, "JSON config; flags win");
    s->add_flag("--no-timestamp", c.no_timestamp);
  };
  for (const char* name : {"bound", "verify", "reduce", "report"}) {
    CLI::App* s = app.add_subcommand(name);
    add_common(s);
    if (std::string(name) == "report") s->add_option("dir", c.dir, "directory of JSON reports");
    s->callback([&c, name] { c.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    if (config_path) merge_file(c, *config_path);
    return run(c);
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return 2;
  } catch (const SizeError& e) {
    std::cerr << "size error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
