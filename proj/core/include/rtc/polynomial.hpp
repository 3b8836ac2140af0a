#pragma once

#include "rtc/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rtc {

/// Sparse monomial: (variable, exponent) pairs sorted by variable, exponents > 0.
using Monomial = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

/// Multivariate polynomial with exact rational coefficients in canonical sorted
/// form; zero coefficients are never stored, so equality is structural.
class Polynomial {
 public:
  Polynomial() = default;
  static Polynomial constant(const Rational& c);
  static Polynomial variable(std::uint32_t var);
  static Polynomial monomial(Monomial m, const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  Rational coefficient(const Monomial& m) const;

  /// One past the largest variable index occurring (0 for constants).
  std::uint32_t variable_bound() const;
  std::uint32_t degree() const;
  /// Degree in a single variable.
  std::uint32_t degree_in(std::uint32_t var) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  Polynomial pow(unsigned k) const;

  /// Replaces variable i by images[i]; variables past the end of `images` stay.
  Polynomial substitute(std::span<const Polynomial> images) const;
  Polynomial derivative(std::uint32_t var) const;
  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

  /// Renders as `3*x0^2*x1 + 1/2`; `name` maps a variable index to its spelling.
  std::string to_string(const std::function<std::string(std::uint32_t)>& name = {}) const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

/// Parses sums of products of rational literals and `x<k>` powers:
/// `3*x0^2*x1 + 1/2 - x1`. Whitespace is ignored.
Polynomial parse_polynomial(std::string_view text);

}  // namespace rtc
