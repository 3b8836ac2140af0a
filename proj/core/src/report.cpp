#include "rtc/report.hpp"

#include "rtc/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace rtc {

namespace {

nlohmann::ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

LawResult law_from_comparison(std::string id, std::string anchor, const Comparison& c, double tolerance) {
  LawResult r;
  r.id = std::move(id);
  r.anchor = std::move(anchor);
  r.passed = c.equal;
  r.exact = c.exact;
  r.tolerance = c.exact ? 0.0 : tolerance;
  r.max_error = c.max_error;
  r.points = c.points;
  if (!c.equal) r.witness = c.worst_point;
  r.detail = c.detail;
  return r;
}

LawResult law_from_flag(std::string id, std::string anchor, bool passed, std::string detail) {
  LawResult r;
  r.id = std::move(id);
  r.anchor = std::move(anchor);
  r.passed = passed;
  r.exact = true;
  r.points = 1;
  r.detail = std::move(detail);
  return r;
}

bool CheckReport::passed() const { return failures() == 0; }

std::size_t CheckReport::failures() const {
  return static_cast<std::size_t>(std::count_if(laws.begin(), laws.end(), [](const LawResult& l) { return !l.passed; }));
}

void CheckReport::finalize() {
  std::sort(laws.begin(), laws.end(), [](const LawResult& a, const LawResult& b) { return a.id < b.id; });
  auto dup = std::adjacent_find(laws.begin(), laws.end(), [](const LawResult& a, const LawResult& b) { return a.id == b.id; });
  if (dup != laws.end()) throw InvariantViolation("unique-law-ids", "law id '" + dup->id + "' repeats");
}

std::string CheckReport::to_json() const {
  nlohmann::ordered_json out;
  out["schema"] = kReportSchema;
  out["suite"] = suite;
  out["seed"] = seed;
  out["passed"] = passed();
  out["total"] = laws.size();
  out["failures"] = failures();
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& l : laws) {
    nlohmann::ordered_json e;
    e["id"] = l.id;
    e["anchor"] = l.anchor;
    e["status"] = l.passed ? "pass" : "fail";
    e["exact"] = l.exact;
    e["tolerance"] = l.tolerance;
    e["max_error"] = number(l.max_error);
    e["points"] = l.points;
    nlohmann::ordered_json w = nlohmann::ordered_json::array();
    for (double v : l.witness) w.push_back(number(v));
    e["witness"] = w;
    e["seed"] = seed;
    if (!l.detail.empty()) e["detail"] = l.detail;
    list.push_back(std::move(e));
  }
  out["laws"] = std::move(list);
  return out.dump(2) + "\n";
}

std::string CheckReport::to_text() const {
  std::string out;
  char buf[96];
  for (const auto& l : laws) {
    std::snprintf(buf, sizeof buf, " (max error %.3g, %zu points%s)", l.max_error, l.points, l.exact ? ", exact" : "");
    out += (l.passed ? "PASS " : "FAIL ") + l.id + buf + "\n";
    if (!l.passed && !l.detail.empty()) out += "     " + l.detail + "\n";
  }
  std::snprintf(buf, sizeof buf, "%zu laws, %zu failed, seed %llu\n", laws.size(), failures(),
                static_cast<unsigned long long>(seed));
  out += suite + ": " + buf;
  return out;
}

}  // namespace rtc
