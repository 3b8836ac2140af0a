#pragma once

#include "rtc/compare.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rtc {

inline constexpr int kReportSchema = 1;

struct LawResult {
  std::string id;
  /// Descriptive name of the statement the law checks.
  std::string anchor;
  bool passed = false;
  bool exact = false;
  double tolerance = 0.0;
  double max_error = 0.0;
  std::size_t points = 0;
  std::vector<double> witness;
  std::string detail;
};

LawResult law_from_comparison(std::string id, std::string anchor, const Comparison& c, double tolerance);
LawResult law_from_flag(std::string id, std::string anchor, bool passed, std::string detail = {});

struct CheckReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<LawResult> laws;

  bool passed() const;
  std::size_t failures() const;
  /// Sorts laws by id; ids must be unique.
  void finalize();
  /// Deterministic JSON: schema 1, laws sorted by id, no timing data.
  std::string to_json() const;
  /// One line per law: PASS/FAIL id (max error, points).
  std::string to_text() const;
};

}  // namespace rtc
