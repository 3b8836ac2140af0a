#pragma once

#include "rtc/smooth_map.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace rtc {

/// Draws one point of the requested dimension.
using Sampler = std::function<std::vector<double>(std::mt19937_64&)>;

/// Uniform sampler on the box [lo, hi]^n.
Sampler box_sampler(std::size_t n, double lo = -2.0, double hi = 2.0);

std::vector<std::vector<double>> sample_points(std::size_t n, std::size_t count, std::uint64_t seed, double lo = -2.0,
                                               double hi = 2.0);

/// |a - b| scaled by max(1, |a|, |b|); infinite when either side is not finite.
double mixed_error(double a, double b);

struct CompareOptions {
  std::size_t samples = 64;
  double tol = 1e-9;
  std::uint64_t seed = 42;
  /// Try canonical polynomial equality before sampling.
  bool try_exact = true;
  /// Defaults to the box [-2,2]^n.
  Sampler sampler;
};

struct Comparison {
  bool equal = false;
  /// Decided by canonical polynomial identity rather than by sampling.
  bool exact = false;
  double max_error = 0.0;
  std::size_t points = 0;
  std::vector<double> worst_point;
  std::string detail;
};

/// Compares two maps with the same signature at sampled points with the mixed
/// tolerance. When both sides are polynomial the verdict is the exact
/// comparison of canonical forms instead, with a sampled witness on failure.
Comparison compare_maps(const SmoothMap& a, const SmoothMap& b, const CompareOptions& options = {});

/// Sampled comparison of two point functions with the same output size.
Comparison compare_functions(const std::function<std::vector<double>(const std::vector<double>&)>& a,
                             const std::function<std::vector<double>(const std::vector<double>&)>& b,
                             const CompareOptions& options);

}  // namespace rtc
