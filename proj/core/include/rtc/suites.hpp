#pragma once

#include "rtc/report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rtc {

struct SuiteOptions {
  std::uint64_t seed = 42;
  /// Replaces the per-law default tolerance of every sampled law.
  std::optional<double> tol;
};

/// smooth, forward, reverse, bundles, manifold, algebra, all.
const std::vector<std::string>& suite_names();

/// Throws DomainError for an unknown suite name.
CheckReport run_suite(const std::string& name, const SuiteOptions& options = {});

}  // namespace rtc
