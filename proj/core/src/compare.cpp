#include "rtc/compare.hpp"

#include "rtc/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rtc {

Sampler box_sampler(std::size_t n, double lo, double hi) {
  return [n, lo, hi](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> x(n);
    for (auto& v : x) v = dist(rng);
    return x;
  };
}

std::vector<std::vector<double>> sample_points(std::size_t n, std::size_t count, std::uint64_t seed, double lo,
                                               double hi) {
  std::mt19937_64 rng(seed);
  auto sampler = box_sampler(n, lo, hi);
  std::vector<std::vector<double>> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(sampler(rng));
  return out;
}

double mixed_error(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) return std::numeric_limits<double>::infinity();
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

Comparison compare_functions(const std::function<std::vector<double>(const std::vector<double>&)>& a,
                             const std::function<std::vector<double>(const std::vector<double>&)>& b,
                             const CompareOptions& options) {
  Comparison result;
  std::mt19937_64 rng(options.seed);
  for (std::size_t k = 0; k < options.samples; ++k) {
    std::vector<double> x = options.sampler(rng);
    auto va = a(x);
    auto vb = b(x);
    double err = 0.0;
    if (va.size() != vb.size()) {
      err = std::numeric_limits<double>::infinity();
    } else {
      for (std::size_t j = 0; j < va.size(); ++j) err = std::max(err, mixed_error(va[j], vb[j]));
    }
    ++result.points;
    if (result.worst_point.empty() || err > result.max_error) {
      result.max_error = err;
      result.worst_point = x;
    }
  }
  result.equal = result.max_error <= options.tol;
  return result;
}

Comparison compare_maps(const SmoothMap& a, const SmoothMap& b, const CompareOptions& options) {
  Comparison result;
  if (a.dom_dim() != b.dom_dim() || a.cod_dim() != b.cod_dim()) {
    result.detail = "signature mismatch: " + std::to_string(a.dom_dim()) + "->" + std::to_string(a.cod_dim()) +
                    " vs " + std::to_string(b.dom_dim()) + "->" + std::to_string(b.cod_dim());
    result.max_error = std::numeric_limits<double>::infinity();
    return result;
  }
  bool both_polynomial = a.is_polynomial() && b.is_polynomial();
  bool canonical_equal = false;
  if (options.try_exact) {
    Canonicalizer canon;
    canonical_equal = canon.canonical(a) == canon.canonical(b);
  }
  CompareOptions opts = options;
  if (!opts.sampler) opts.sampler = box_sampler(a.dom_dim());
  auto eval_a = [&](const std::vector<double>& x) { return a.eval(x); };
  auto eval_b = [&](const std::vector<double>& x) { return b.eval(x); };
  result = compare_functions(eval_a, eval_b, opts);
  if (options.try_exact && both_polynomial) {
    result.equal = canonical_equal;
    result.exact = true;
    result.detail = canonical_equal ? "canonical polynomials agree" : "canonical polynomials differ";
    if (canonical_equal) {
      result.max_error = 0.0;
      result.worst_point.clear();
    }
  } else if (canonical_equal && result.equal) {
    result.detail = "canonical forms agree";
  }
  return result;
}

}  // namespace rtc
