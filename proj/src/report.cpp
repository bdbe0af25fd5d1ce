#include "qlb/report.hpp"

#include <algorithm>
#include <cmath>

namespace qlb {

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

double Report::max_violation() const {
  double m = 0.0;
  for (const auto& c : checks) m = std::max(m, c.max_violation);
  return m;
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (Check c : other.checks) {
    if (!prefix.empty()) c.name = prefix + c.name;
    checks.push_back(std::move(c));
  }
  if (!other.data.empty()) data[prefix.empty() ? other.name : prefix + other.name] = other.data;
}

json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

void to_json(json& j, const Check& c) {
  j = json{{"name", c.name}, {"max_violation", num(c.max_violation)}, {"tol", num(c.tol)}, {"pass", c.pass}};
  if (!c.detail.is_null()) j["detail"] = c.detail;
}

void to_json(json& j, const Report& r) {
  j = json{{"name", r.name}, {"pass", r.pass()}, {"checks", r.checks}};
  if (!r.data.empty()) j["data"] = r.data;
}

void to_json(json& j, const BoundReport& r) {
  j = json::object();
  j["bound_name"] = r.bound_name;
  j["T"] = r.T ? json(*r.T) : json(nullptr);
  if (r.value) j["value"] = num(*r.value);
  j["unbounded"] = r.unbounded;
  json steps = json::array();
  for (double s : r.per_step) steps.push_back(num(s));
  j["per_step"] = steps;
  json params = json::object();
  for (const auto& [k, v] : r.parameters) params[k] = num(v);
  j["parameters"] = params;
  j["witnesses"] = r.witnesses;
  j["verdicts"] = r.verdicts;
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.extra.empty()) j["extra"] = r.extra;
}

}  // namespace qlb
