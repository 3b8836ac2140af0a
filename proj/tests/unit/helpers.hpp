#pragma once

#include "rtc/canonical.hpp"
#include "rtc/map_dsl.hpp"
#include "rtc/smooth_map.hpp"

#include <doctest.h>

#include <vector>

namespace rtc::test {

inline std::vector<double> at(const std::string& map, const std::vector<double>& x) { return parse_map(map).eval(x); }

inline void check_close(const std::vector<double>& a, const std::vector<double>& b, double tol = 1e-12) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(tol));
}

inline bool same(const SmoothMap& a, const std::string& b) { return canonically_equal(a, parse_map(b)); }

}  // namespace rtc::test
