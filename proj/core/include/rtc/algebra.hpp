#pragma once

#include "rtc/polynomial.hpp"
#include "rtc/rational_matrix.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rtc {

/// Q[x0..x{n-1}] modulo an optional monic polynomial m(x0) and, for each
/// nilpotent group of variables, every product of total degree >= 2 in that group.
///
/// Polynomial rings have neither; Q[x]/(m) has only the modulus; the dual
/// numbers A[e] add e as a new one-variable group.
class Algebra {
 public:
  using Group = std::vector<std::uint32_t>;

  Algebra(std::size_t generators, std::optional<Polynomial> modulus = std::nullopt, std::vector<Group> groups = {});

  static Algebra polynomial(std::size_t n) { return Algebra(n); }
  /// Q[x0]/(m) for monic m in x0 of positive degree.
  static Algebra quotient(const Polynomial& monic);

  std::size_t generators() const { return generators_; }
  const std::optional<Polynomial>& modulus() const { return modulus_; }
  const std::vector<Group>& groups() const { return groups_; }
  bool is_polynomial_ring() const { return !modulus_ && groups_.empty(); }
  /// Q-dimension when finite: Q[x]/(m) only.
  std::optional<std::size_t> rank() const;

  /// Normal form: truncate nilpotent groups, then reduce x0 modulo m.
  Polynomial reduce(const Polynomial& p) const;

  /// Adds `count` variables as one nilpotent group.
  Algebra adjoin_group(std::size_t count) const;

  std::string to_string() const;
  friend bool operator==(const Algebra& a, const Algebra& b);

 private:
  std::size_t generators_;
  std::optional<Polynomial> modulus_;
  std::vector<Group> groups_;
};

/// Determined by the images of the source generators, kept in target normal form.
class AlgebraMorphism {
 public:
  /// Checks images against the target and well-definedness on the source
  /// relations; throws InvariantViolation("well-defined") when a relation does
  /// not map to zero.
  AlgebraMorphism(Algebra source, Algebra target, std::vector<Polynomial> images);

  static AlgebraMorphism identity(const Algebra& a);

  const Algebra& source() const { return source_; }
  const Algebra& target() const { return target_; }
  const std::vector<Polynomial>& images() const { return images_; }

  Polynomial apply(const Polynomial& p) const;
  std::string to_string() const;
  friend bool operator==(const AlgebraMorphism& a, const AlgebraMorphism& b);

 private:
  AlgebraMorphism(Algebra source, Algebra target, std::vector<Polynomial> images, bool);
  friend AlgebraMorphism compose(const AlgebraMorphism& f, const AlgebraMorphism& g);
  Algebra source_;
  Algebra target_;
  std::vector<Polynomial> images_;
};

/// Diagrammatic: first f, then g (substitution).
AlgebraMorphism compose(const AlgebraMorphism& f, const AlgebraMorphism& g);

/// A tangent structure on commutative algebras, presented through algebra maps.
///
/// `contravariant` models describe a tangent structure on the opposite
/// category: every structure map is stored in algebra direction, so laws read
/// in the tangent category compose in reverse. `seq` hides this.
class AlgebraTangent {
 public:
  virtual ~AlgebraTangent() = default;
  virtual std::string name() const = 0;
  virtual bool contravariant() const = 0;

  virtual Algebra tangent(const Algebra& a) const = 0;
  /// Fibre power T_k: k tangent directions over one base.
  virtual Algebra tangent_power(const Algebra& a, std::size_t k) const = 0;
  virtual AlgebraMorphism tangent(const AlgebraMorphism& f) const = 0;
  virtual AlgebraMorphism tangent_power(const AlgebraMorphism& f, std::size_t k) const = 0;

  virtual AlgebraMorphism p(const Algebra& a) const = 0;
  virtual AlgebraMorphism z(const Algebra& a) const = 0;
  virtual AlgebraMorphism s(const Algebra& a) const = 0;
  virtual AlgebraMorphism lift(const Algebra& a) const = 0;
  virtual AlgebraMorphism flip(const Algebra& a) const = 0;
  /// <1, pz> : T -> T_2.
  virtual AlgebraMorphism unit_pair(const Algebra& a) const = 0;
  /// Exchange of the two directions of T_2.
  virtual AlgebraMorphism swap(const Algebra& a) const = 0;
  /// s x 1 and 1 x s : T_3 -> T_2.
  virtual AlgebraMorphism sum_left(const Algebra& a) const = 0;
  virtual AlgebraMorphism sum_right(const Algebra& a) const = 0;

  AlgebraMorphism tangent2(const AlgebraMorphism& f) const { return tangent(tangent(f)); }
  Algebra tangent2(const Algebra& a) const { return tangent(tangent(a)); }
  /// Composite in the tangent category: first f, then g.
  AlgebraMorphism seq(const AlgebraMorphism& f, const AlgebraMorphism& g) const;
  /// Source and target of f as a morphism of the tangent category.
  const Algebra& category_source(const AlgebraMorphism& f) const;
  const Algebra& category_target(const AlgebraMorphism& f) const;
};

/// T(A) = A[e], T(f)(a + b e) = f(a) + f(b) e. The new variable is the last one.
class DualNumbers final : public AlgebraTangent {
 public:
  std::string name() const override { return "dual-numbers"; }
  bool contravariant() const override { return false; }
  Algebra tangent(const Algebra& a) const override;
  Algebra tangent_power(const Algebra& a, std::size_t k) const override;
  AlgebraMorphism tangent(const AlgebraMorphism& f) const override;
  AlgebraMorphism tangent_power(const AlgebraMorphism& f, std::size_t k) const override;
  AlgebraMorphism p(const Algebra& a) const override;
  AlgebraMorphism z(const Algebra& a) const override;
  AlgebraMorphism s(const Algebra& a) const override;
  AlgebraMorphism lift(const Algebra& a) const override;
  AlgebraMorphism flip(const Algebra& a) const override;
  AlgebraMorphism unit_pair(const Algebra& a) const override;
  AlgebraMorphism swap(const Algebra& a) const override;
  AlgebraMorphism sum_left(const Algebra& a) const override;
  AlgebraMorphism sum_right(const Algebra& a) const override;
  using AlgebraTangent::tangent;
};

/// T(A) = Q[x, dx] on polynomial rings, T(f)(dx_i) = d(f(x_i)); contravariant.
/// T_k(A) = Q[x, d1x, .., dkx]. Non-polynomial inputs raise DomainError.
class Kahler final : public AlgebraTangent {
 public:
  std::string name() const override { return "kahler"; }
  bool contravariant() const override { return true; }
  Algebra tangent(const Algebra& a) const override;
  Algebra tangent_power(const Algebra& a, std::size_t k) const override;
  AlgebraMorphism tangent(const AlgebraMorphism& f) const override;
  AlgebraMorphism tangent_power(const AlgebraMorphism& f, std::size_t k) const override;
  AlgebraMorphism p(const Algebra& a) const override;
  AlgebraMorphism z(const Algebra& a) const override;
  AlgebraMorphism s(const Algebra& a) const override;
  AlgebraMorphism lift(const Algebra& a) const override;
  AlgebraMorphism flip(const Algebra& a) const override;
  AlgebraMorphism unit_pair(const Algebra& a) const override;
  AlgebraMorphism swap(const Algebra& a) const override;
  AlgebraMorphism sum_left(const Algebra& a) const override;
  AlgebraMorphism sum_right(const Algebra& a) const override;
  using AlgebraTangent::tangent;
};

AlgebraMorphism dualnum_tangent(const AlgebraMorphism& f);
AlgebraMorphism kahler_tangent(const AlgebraMorphism& f);

/// d(p) = sum_i dp/dx_i dx_i with dx_i = x_{n+i}.
Polynomial total_differential(const Polynomial& p, std::size_t n);

/// T*(f) : Q[y, dB] -> Q[y, dA] for f : Q[x_0..x_{n-1}] -> Q[y_0..y_{m-1}]:
/// y_j -> y_j, dB_j -> sum_i d f(x_i)/d y_j * dA_i, with dB_j = y_{m+j} and dA_i = y_{m+i}.
AlgebraMorphism derivations_reverse_tangent(const AlgebraMorphism& f);

/// A^r -> A^s over A = Q[x]/(m), as an s x r matrix of algebra elements.
struct FreeModuleMorphism {
  Algebra algebra;
  std::size_t source_rank = 0;
  std::size_t target_rank = 0;
  std::vector<std::vector<Polynomial>> entries;  // [target][source]

  static FreeModuleMorphism identity(const Algebra& a, std::size_t rank);
  /// Multiplication by a on A^rank.
  static FreeModuleMorphism scalar(const Algebra& a, std::size_t rank, const Polynomial& element);
  std::vector<Polynomial> apply(const std::vector<Polynomial>& v) const;
};

/// First g, then h.
FreeModuleMorphism compose(const FreeModuleMorphism& g, const FreeModuleMorphism& h);

/// Q-matrix in the basis x^t e_j (index j * rank(A) + t). Throws DomainError
/// for infinite-dimensional algebras.
RationalMatrix to_rational_matrix(const FreeModuleMorphism& g);

/// g*(phi) = phi(g(-)): the transpose of the Q-matrix, in the dual basis.
RationalMatrix module_dual_involution(const FreeModuleMorphism& g);

/// Element of Q[x]/(m) from its coefficient vector and back.
std::vector<Rational> coefficients(const Algebra& a, const Polynomial& p);

/// `poly: 3*x0^2*x1 + 1/2` (the prefix is optional).
Polynomial parse_poly_text(std::string_view text);
/// `alghom: x0 -> x1^2; x1 -> x0` gives the images of x0, x1, ... in order.
std::vector<Polynomial> parse_alghom_text(std::string_view text);

}  // namespace rtc
