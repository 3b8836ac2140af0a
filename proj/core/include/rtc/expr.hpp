#pragma once

#include "rtc/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rtc {

enum class ExprKind : std::uint8_t {
  Variable,
  Constant,
  Sum,
  Product,
  Negation,
  Sin,
  Cos,
  Exp,
  Reciprocal,
};

/// Immutable node of an expression DAG. Children are shared, so a subexpression
/// produced once by differentiation or substitution is stored once.
class Expr {
 public:
  static Expr variable(std::size_t index);
  static Expr constant(Rational value);
  static Expr constant(long value) { return constant(Rational(value)); }

  // Raw constructors: no simplification, the node is stored exactly as given.
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr negation(Expr arg);
  static Expr sin(Expr arg);
  static Expr cos(Expr arg);
  static Expr exp(Expr arg);
  /// 1/arg. Only used where the argument is bounded away from zero (chart transitions).
  static Expr reciprocal(Expr arg);

  ExprKind kind() const;
  std::size_t index() const;      // Variable only
  const Rational& value() const;  // Constant only
  std::span<const Expr> children() const;
  const Expr& arg() const;  // unary kinds

  bool is_constant() const { return kind() == ExprKind::Constant; }
  bool is_zero() const;
  bool is_one() const;

  /// Identity of the underlying node; stable for the lifetime of any handle.
  const void* id() const { return node_.get(); }

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Arithmetic with local folding of constants, zeros and ones. Used by every
// symbolic construction so derivative trees stay small.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr add_all(std::span<const Expr> terms);
Expr mul_all(std::span<const Expr> factors);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr exp(const Expr& a);
Expr reciprocal(const Expr& a);

/// Total structural order (kind, payload, then children lexicographically).
int compare(const Expr& a, const Expr& b);
inline bool operator==(const Expr& a, const Expr& b) { return compare(a, b) == 0; }
inline bool operator<(const Expr& a, const Expr& b) { return compare(a, b) < 0; }

/// Flattens nested sums and products, rewrites negation as a -1 factor, sorts
/// children, folds rational constants and drops zero summands and unit factors.
Expr normalize(const Expr& e);

/// Exact symbolic partial derivative with respect to variable `var`.
Expr differentiate(const Expr& e, std::size_t var);

/// Replaces variable i by replacements[i]. Indices past the end are an error.
Expr substitute(const Expr& e, std::span<const Expr> replacements);
/// Substitutes into several expressions at once, sharing common subterms.
std::vector<Expr> substitute_all(std::span<const Expr> es, std::span<const Expr> replacements);

double evaluate(const Expr& e, std::span<const double> point);

/// Exact value at a rational point. Empty when a transcendental node is reached
/// or a reciprocal of zero is requested.
std::optional<Rational> evaluate_exact(const Expr& e, std::span<const Rational> point);

/// True when no sin/cos/exp/reciprocal node occurs.
bool is_polynomial(const Expr& e);

/// One past the largest variable index (0 for closed expressions).
std::size_t variable_bound(const Expr& e);

std::size_t node_count(const Expr& e);

/// Hash of the structure (not the node identity); equal for structurally equal DAGs.
std::uint64_t structural_hash(const Expr& e);

/// S-expression text in the map DSL grammar.
std::string to_string(const Expr& e);

/// Convenience: variables offset .. offset+count-1.
std::vector<Expr> variables(std::size_t offset, std::size_t count);
std::vector<Expr> zeros(std::size_t count);

}  // namespace rtc
