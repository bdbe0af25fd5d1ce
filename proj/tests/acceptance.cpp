// One PASS/FAIL line per acceptance criterion; failing checks go to stderr.
// usage: qlb_acceptance [--only N] [--json FILE] [--seed S]

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "qlb/suites.hpp"

using namespace qlb;

namespace {

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Report()> run;
};

std::string dump_all(std::uint64_t seed) {
  // every verify suite at reduced sizes, serialized in order
  json out = json::array();
  const std::vector<std::pair<std::string, SuiteOptions>> runs = {
      {"space", {}},
      {"ladder", [] { SuiteOptions o; o.n = 2; o.m = 2; o.samples = 5; return o; }()},
      {"reduction", [] { SuiteOptions o; o.n = 2; o.m = 3; o.k = 2; return o; }()},
      {"sdpt", {}},
      {"poly", [] { SuiteOptions o; o.n = 2; return o; }()},
      {"perm", [] { SuiteOptions o; o.n = 4; return o; }()},
  };
  for (auto [name, o] : runs) {
    o.seed = seed;
    out.push_back(run_suite(name, o));
  }
  return out.dump();
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  std::string json_path;
  std::uint64_t seed = 20240611;
  for (int i = 1; i + 1 < argc; i += 2) {
    std::string a = argv[i];
    if (a == "--only") only = std::atoi(argv[i + 1]);
    else if (a == "--json") json_path = argv[i + 1];
    else if (a == "--seed") seed = std::strtoull(argv[i + 1], nullptr, 10);
  }

  const std::vector<Criterion> crit = {
      {1, "holder bound vs spectral norm", 5, [&] { return holder_suite(500, 12, seed); }},
      {2, "reachable space equals database space", 10,
       [] {
         Report r = space_suite(3, 2);
         r.merge(space_suite(2, 3), "N2_M3.");
         return r;
       }},
      {3, "one-query relation and monotonicity", 30,
       [] {
         Report r = one_query_suite(3, 2);
         r.merge(one_query_suite(2, 3), "N2_M3.");
         return r;
       }},
      {4, "collision per-step bound", 120, [] { return collision_step_suite(4, {2, 3, 4}, 4); }},
      {5, "collision closed form", 1, [] { return closed_form_suite({16, 64, 1024}, {0.1, 0.5, 0.9}); }},
      {6, "progress measure soundness", 300, [&] { return progress_suite(3, 2, 50, seed); }},
      {7, "property reduction pack", 300, [] { return reduction_pack(3, 4, 3, 4, 0.1); }},
      {8, "tensor power closure", 120, [] { return tensor_suite({2, 3}); }},
      {9, "strong direct product scalars", 1,
       [] { return sdpt_suite({361, 400, 1000}, {0.5, 0.25}, {2.0, 10.0}, 0.5, 0.125); }},
      {10, "polynomial suite", 120, [&] { return poly_suite(3, 200, seed); }},
      {11, "permutation suite", 300, [&] { return perm_suite({3, 4, 5, 6}, seed); }},
      {12, "output condition", 60, [&] { return output_condition_suite(100, seed); }},
      {13, "determinism", 1e9,
       [&] {
         Report r;
         r.name = "determinism";
         const std::string a = dump_all(seed), b = dump_all(seed);
         r.add(Check{"byte_identical_suite_json", a == b ? 0.0 : 1.0, 0.0, a == b, json{{"bytes", a.size()}}});
         return r;
       }},
  };

  json summary = json::array();
  int failed = 0;
  for (const auto& c : crit) {
    if (only && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Report r;
    std::string error;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.limit_s;
    const bool ok = error.empty() && r.pass() && in_time;
    if (!ok) ++failed;
    int bad = 0;
    for (const auto& ch : r.checks) bad += !ch.pass;
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << "  [" << r.checks.size() - bad
              << "/" << r.checks.size() << " checks, " << secs << " s" << (c.limit_s < 1e8 ? " of " + std::to_string(static_cast<int>(c.limit_s)) + " s" : "")
              << (in_time ? "" : ", over time") << (error.empty() ? "" : ", error: " + error) << "]" << std::endl;
    for (const auto& ch : r.checks)
      if (!ch.pass)
        std::cerr << "    criterion " << c.id << " failed check " << ch.name << ": violation " << ch.max_violation
                  << " > tol " << ch.tol << (ch.detail.is_null() ? "" : " " + ch.detail.dump()) << '\n';
    summary.push_back({{"criterion", c.id}, {"name", c.name}, {"pass", ok}, {"seconds", secs}, {"error", error}, {"report", r}});
  }
  if (!json_path.empty()) std::ofstream(json_path) << summary.dump(2) << '\n';
  return failed ? 1 : 0;
}
