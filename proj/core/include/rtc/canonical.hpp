#pragma once

#include "rtc/expr.hpp"
#include "rtc/polynomial.hpp"
#include "rtc/smooth_map.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace rtc {

/// Rewrites expressions into canonical multivariate polynomials over Q.
///
/// Non-polynomial subterms (sin, cos, exp, inv) become fresh atom variables
/// keyed by their kind and the canonical form of their argument, so two
/// expressions that agree after expanding the ring operations map to the same
/// polynomial. Atoms share one table per canonicalizer; compare values only
/// when they came from the same instance.
class Canonicalizer {
 public:
  static constexpr std::uint32_t kAtomBase = 1u << 24;

  Polynomial canonical(const Expr& e);
  std::vector<Polynomial> canonical(const SmoothMap& f);

  std::size_t atom_count() const { return atoms_.size(); }

 private:
  std::map<std::string, std::uint32_t> atoms_;
};

/// True when both maps have identical canonical polynomials component-wise.
bool canonically_equal(const SmoothMap& a, const SmoothMap& b);

/// Converts a polynomial map (no transcendental nodes) to polynomials.
/// Throws DomainError when a non-polynomial node is present.
std::vector<Polynomial> to_polynomials(const SmoothMap& f);

/// Builds expressions from polynomials in the variables x0..x{n-1}.
Expr to_expr(const Polynomial& p);

}  // namespace rtc
