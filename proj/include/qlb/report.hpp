#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace qlb {

using json = nlohmann::json;

struct Check {
  std::string name;
  double max_violation = 0.0;
  double tol = 0.0;
  bool pass = false;
  json detail;  // optional free-form data

  static Check le(std::string name, double violation, double tol, json detail = nullptr) {
    return {std::move(name), violation, tol, violation <= tol, std::move(detail)};
  }
};

struct Report {
  std::string name;
  std::vector<Check> checks;
  json data = json::object();

  bool pass() const;
  double max_violation() const;
  void add(Check c) { checks.push_back(std::move(c)); }
  void merge(const Report& other, const std::string& prefix = "");
};

struct BoundReport {
  std::string bound_name;  // COMP | MLADV | MADV | SDPT | POLY | PERM
  std::optional<long long> T;
  std::optional<double> value;
  bool unbounded = false;
  std::vector<double> per_step;
  std::map<std::string, double> parameters;
  json witnesses = json::array();
  std::vector<Check> verdicts;
  std::string note;
  json extra = json::object();
};

// non-finite doubles become strings so the JSON stays valid
json num(double v);

void to_json(json& j, const Check& c);
void to_json(json& j, const Report& r);
void to_json(json& j, const BoundReport& r);

}  // namespace qlb
