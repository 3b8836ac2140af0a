#pragma once

#include "rtc/expr.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rtc {

/// A smooth map R^n -> R^m given by m expressions in the variables x0..x{n-1}.
///
/// Construction validates variable indices and compiles a flat evaluation tape
/// in which shared subexpressions appear once. Values are immutable and can be
/// shared between threads.
class SmoothMap {
 public:
  /// The empty map R^0 -> R^0.
  SmoothMap() : SmoothMap(0, {}) {}
  SmoothMap(std::size_t dom_dim, std::vector<Expr> components);

  static SmoothMap identity(std::size_t n);
  /// Constant zero map R^n -> R^m.
  static SmoothMap zero(std::size_t n, std::size_t m);
  /// Selects coordinates `offset .. offset+count-1` from R^n.
  static SmoothMap projection(std::size_t n, std::size_t offset, std::size_t count);

  std::size_t dom_dim() const { return dom_dim_; }
  std::size_t cod_dim() const { return components_.size(); }
  const std::vector<Expr>& components() const { return components_; }
  const Expr& component(std::size_t j) const { return components_.at(j); }

  std::vector<double> eval(std::span<const double> x) const;
  /// Writes cod_dim values into `out`; `scratch` is resized as needed.
  void eval_into(std::span<const double> x, std::span<double> out, std::vector<double>& scratch) const;
  /// Exact evaluation; empty when a transcendental node is reached.
  std::optional<std::vector<Rational>> eval_exact(std::span<const Rational> x) const;

  bool is_polynomial() const;
  std::size_t node_count() const;

 private:
  struct Tape;
  std::size_t dom_dim_;
  std::vector<Expr> components_;
  std::shared_ptr<const Tape> tape_;
};

/// Diagrammatic composite: first F, then G. Requires cod(F) = dom(G).
SmoothMap compose_maps(const SmoothMap& f, const SmoothMap& g);

/// Exact symbolic partial derivative of every component with respect to x_i.
SmoothMap partial_derivative(const SmoothMap& f, std::size_t i);

/// <F, G>: the pairing of two maps with the same domain.
SmoothMap pair_maps(const SmoothMap& f, const SmoothMap& g);
SmoothMap pair_maps(std::span<const SmoothMap> maps);

/// F x G acting on disjoint coordinate blocks.
SmoothMap product_maps(const SmoothMap& f, const SmoothMap& g);

/// Reindexes F into a larger domain: variable i becomes variable offset+i.
SmoothMap shift_domain(const SmoothMap& f, std::size_t new_dom, std::size_t offset);

/// Map that reorders coordinates: output j is input perm[j].
SmoothMap coordinate_map(std::size_t n, std::span<const std::size_t> perm);

/// Symbolic Jacobian entries: result[j][i] = d f_j / d x_i.
std::vector<std::vector<Expr>> jacobian_exprs(const SmoothMap& f);

SmoothMap normalize(const SmoothMap& f);

/// Short content fingerprint built from structural hashes of the components.
std::string fingerprint(const SmoothMap& f);

/// Structural equality after normalization.
bool structurally_equal(const SmoothMap& a, const SmoothMap& b);

}  // namespace rtc
