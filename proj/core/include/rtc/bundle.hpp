#pragma once

#include "rtc/compare.hpp"
#include "rtc/reverse.hpp"
#include "rtc/smooth_map.hpp"

#include <mutex>
#include <set>
#include <string>
#include <vector>

namespace rtc {

/// A differential bundle q : E -> A over Euclidean spaces.
///
/// Every bundle of the Euclidean model is globally trivial, but bundles built
/// by tangent and pullback constructions keep their own coordinates. `split`
/// and `unsplit` record the coordinate isomorphism E = A (+) X with base block
/// first, and `join` assembles a point of E_2 = E x_A E from two points of E,
/// taking the base from the first.
struct DifferentialBundle {
  std::string name;
  std::size_t base_dim = 0;
  std::size_t fibre_dim = 0;
  std::size_t pair_dim = 0;
  SmoothMap q;        // E -> A
  SmoothMap sigma;    // E_2 -> E
  SmoothMap zeta;     // A -> E
  SmoothMap lift;     // E -> T(E)
  SmoothMap join;     // E x E -> E_2
  SmoothMap first;    // E_2 -> E
  SmoothMap second;   // E_2 -> E
  SmoothMap split;    // E -> A (+) X
  SmoothMap unsplit;  // A (+) X -> E

  std::size_t total_dim() const { return base_dim + fibre_dim; }
  /// Content key: identical for bundles with identical structure maps.
  std::string key() const;
  /// Fibre coordinates of a point of E, as a map E -> X.
  SmoothMap fibre_part() const;
};

/// A x R^x with q = pi0, sigma = 1 x (+), zeta = <1, 0>, lift = <pi0, 0, 0, pi1>.
DifferentialBundle trivial_bundle(std::size_t base_dim, std::size_t fibre_dim);

/// The tangent bundle p : T(R^n) -> R^n with (s, z, l) as its structure.
DifferentialBundle tangent_bundle(std::size_t n);

/// T(q) : T(E) -> T(A) with sum T(sigma), zero T(zeta) and lift T(lambda) c.
DifferentialBundle tangent_of_bundle(const DifferentialBundle& e);

struct LawCheck {
  std::string name;
  Comparison result;
};

struct BundleReport {
  std::vector<LawCheck> checks;
  bool passed() const;
  /// First failing check, or nullptr.
  const LawCheck* first_failure() const;
};

/// Additive-bundle laws, lift laws and agreement with the trivial presentation.
BundleReport verify_bundle_axioms(const DifferentialBundle& e, const CompareOptions& options = {});

/// (f, g) with g q' = q f and lambda T(g) = g lambda'.
struct LinearBundleMorphism {
  DifferentialBundle source;
  DifferentialBundle target;
  SmoothMap f;  // base map A -> A'
  SmoothMap g;  // total map E -> E'
};

BundleReport verify_morphism(const LinearBundleMorphism& m, const CompareOptions& options = {});

/// (T(f), T(g)) between the tangent bundles of source and target.
LinearBundleMorphism tangent_of_morphism(const LinearBundleMorphism& m);

struct PullbackResult {
  DifferentialBundle bundle;           // f*E over X with coordinates (x, fibre)
  LinearBundleMorphism cartesian;      // (f, pi1) : f*E -> E
};

/// Pulls E back along f : X -> A.
PullbackResult pullback_bundle(const DifferentialBundle& e, const SmoothMap& f);

/// Given (u f, k) : F -> E, returns the unique (u, k') : F -> f*E through the
/// Cartesian morphism of `pb`.
LinearBundleMorphism factor_through_pullback(const PullbackResult& pb, const DifferentialBundle& source,
                                             const SmoothMap& u, const SmoothMap& k);

/// Mutually inverse identity-coordinate isomorphisms E <-> 1*E.
struct PullbackIdentityIso {
  LinearBundleMorphism to;
  LinearBundleMorphism from;
};
PullbackIdentityIso pullback_identity_iso(const DifferentialBundle& e);

/// A lens-shaped map of the dual fibration from E over A to E' over A':
/// a forward base map f : A -> A' and a backward fibre map
/// g : A x_{A'} E' -> E, with the pullback written in coordinates (a, fibre').
struct DualFibrationMap {
  DifferentialBundle source;
  DifferentialBundle target;
  SmoothMap f;
  SmoothMap g;
};

BundleReport verify_dual_map(const DualFibrationMap& m, const CompareOptions& options = {});

/// (1_A, pi1).
DualFibrationMap dual_identity(const DifferentialBundle& e);

/// (f h, <1_A, (f x 1) k> g).
DualFibrationMap dual_compose(const DualFibrationMap& m1, const DualFibrationMap& m2);

/// Compares base and fibre maps.
Comparison compare_dual_maps(const DualFibrationMap& a, const DualFibrationMap& b, const CompareOptions& options = {});

/// T*(F) as a dual map between tangent bundles: (F, (x, z) -> (x, R[F](x, z))).
DualFibrationMap reverse_tangent_dual(const SmoothMap& f);

/// Tangent of a dual map: (T(f), T(g)) with the pullback coordinates regrouped.
DualFibrationMap tangent_of_dual(const DualFibrationMap& m);

/// A collection of bundles closed under tangent and pullback constructions.
///
/// Registration is append-only and keyed by content, so concurrent
/// registration of the same bundle is idempotent.
class SystemOfBundles {
 public:
  /// Tangent bundles are members implicitly.
  bool contains(const DifferentialBundle& e) const;
  bool contains_key(const std::string& key) const;
  void add(const DifferentialBundle& e);
  void add_key(const std::string& key);
  std::size_t size() const;

  DifferentialBundle tangent_of_bundle(const DifferentialBundle& e);
  PullbackResult pullback_bundle(const DifferentialBundle& e, const SmoothMap& f);

 private:
  mutable std::mutex mutex_;
  std::set<std::string> keys_;
};

/// E* for E in the system. In the Euclidean model E* = E with iota = 1.
/// Throws InvariantViolation("bundle-in-system") otherwise.
DifferentialBundle involution_star(const SystemOfBundles& system, const DifferentialBundle& e);

/// (f, g)* = (f, g*) with g* the fibrewise transpose.
DualFibrationMap involution_star(const SystemOfBundles& system, const LinearBundleMorphism& m);

/// Dual maps are sent back to linear morphisms by the same fibrewise transpose.
LinearBundleMorphism involution_star(const SystemOfBundles& system, const DualFibrationMap& m);

/// iota : E -> E** as a linear morphism; the identity in this model.
LinearBundleMorphism double_dual_unit(const DifferentialBundle& e);

/// Fibre-linear iso T(E)* -> T(E*) induced by differentiating the pairing:
/// (alpha, beta) dual to (v, dv) goes to (xi, dxi) = (beta, alpha).
LinearBundleMorphism tangent_star_iso(const DifferentialBundle& e);

/// Fibre matrix of the backward map of a dual map, entries over A.
std::vector<std::vector<Expr>> dual_fibre_matrix(const DualFibrationMap& m);

/// For a dual map whose fibre matrix is constant and invertible, returns the
/// inverse fibre map E -> A x_{A'} E' as a linear morphism over 1_A.
/// Throws DomainError when the matrix depends on the base point or is singular.
struct CartesianInverse {
  SmoothMap inverse;  // total(E) -> (a, fibre')
  Comparison left;    // g ; inverse = 1
  Comparison right;   // inverse ; g = 1
};
CartesianInverse cartesian_dual_inverse(const DualFibrationMap& m, const CompareOptions& options = {});

/// c*_A : T(T*A) -> T*(TA) built from the star of c_A, plus its triangle check.
struct FlipStar {
  std::size_t n = 0;
  LinearBundleMorphism flip;   // c_A as a TA-linear morphism
  DualFibrationMap star;       // its image under the involution
  SmoothMap map;               // (x, xi, dx, dxi) -> (x, dx, alpha, beta)
  SmoothMap inverse;
  Comparison triangle;         // c* ; p*_{TA} = T(p*_A)
  Comparison round_trip;       // c* ; (c*)^-1 = 1
};
FlipStar canonical_flip_star(std::size_t n, const CompareOptions& options = {});

/// Naturality square of c* for F : R^n -> R^m.
Comparison flip_star_naturality(const SmoothMap& f, const CompareOptions& options = {});

}  // namespace rtc
