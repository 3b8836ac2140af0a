#pragma once

#include "rtc/bundle.hpp"
#include "rtc/manifold.hpp"

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rtc {

/// Local trivialization: a region of one chart over which the fibre is R^k.
struct Trivialization {
  std::string id;
  std::string chart;
  Box box;
  std::vector<Guard> guards;
};

/// v_to = G(x) v_from on `overlap`, with G given row-major as a map R^n -> R^{k*k}
/// in the coordinates of the source chart.
struct FibreTransition {
  std::string from;
  std::string to;
  SmoothMap matrix;
  Box overlap;
};

/// A vector bundle over a chart-presented manifold, glued by transition matrices.
///
/// Bundles are either given by a table of fibre transitions whose
/// trivializations are the charts, or are pullbacks of a table bundle along a
/// manifold map, with one trivialization per local representative. The dual
/// flag replaces every transition G by (G^T)^{-1}.
class CocycleBundle {
 public:
  CocycleBundle(std::string name, AtlasPtr base, std::size_t fibre_dim, std::vector<FibreTransition> transitions);

  const std::string& name() const { return name_; }
  const Atlas& base() const { return *base_; }
  const AtlasPtr& base_ptr() const { return base_; }
  std::size_t fibre_dim() const { return fibre_dim_; }
  bool is_dual() const { return dual_; }
  bool is_pullback() const { return static_cast<bool>(pulled_); }
  const std::vector<Trivialization>& trivializations() const { return trivs_; }
  const std::vector<FibreTransition>& table() const { return table_; }
  std::string key() const;

  bool in_trivialization(const Trivialization& t, std::span<const double> x) const;
  const Trivialization& trivialization(const std::string& id) const;

  /// G with v_to = G v_from at x, given in the chart of `from`; empty when x is
  /// not in both trivializations or no transition entry covers it.
  std::optional<Eigen::MatrixXd> transition(const Trivialization& from, const Trivialization& to,
                                            std::span<const double> x) const;

  CocycleBundle star() const;
  /// Replaces the matrix of table entry `index`.
  CocycleBundle with_transition_matrix(std::size_t index, SmoothMap matrix) const;

  /// f*E with transitions G(f(x)). Requires a table bundle on f's target.
  friend CocycleBundle pullback_cocycle(const CocycleBundle& e, const ManifoldMap& f);

 private:
  struct Pulled {
    std::shared_ptr<const CocycleBundle> base_bundle;
    std::shared_ptr<const ManifoldMap> map;
  };
  CocycleBundle() = default;
  std::optional<Eigen::MatrixXd> raw_transition(const Trivialization& from, const Trivialization& to,
                                                std::span<const double> x) const;

  std::string name_;
  AtlasPtr base_;
  std::size_t fibre_dim_ = 0;
  bool dual_ = false;
  std::vector<Trivialization> trivs_;
  std::vector<FibreTransition> table_;
  std::shared_ptr<const Pulled> pulled_;
};

CocycleBundle pullback_cocycle(const CocycleBundle& e, const ManifoldMap& f);

/// Transitions are the Jacobians of the atlas transitions.
CocycleBundle tangent_cocycle(const AtlasPtr& atlas);

/// The Moebius line bundle over the circle atlas.
CocycleBundle moebius_bundle(const AtlasPtr& circle);

/// Sampled invertibility, cocycle conditions and fibre linearity; failures
/// carry the witness point in the chart of the first trivialization named in
/// the detail.
BundleReport verify_bundle_axioms(const CocycleBundle& e, std::size_t samples = 32, std::uint64_t seed = 42,
                                  double tol = 1e-9);

/// Max |G1 - G2| over sampled points of every trivialization pair.
Comparison compare_transitions(const CocycleBundle& a, const CocycleBundle& b, std::size_t samples = 32,
                               std::uint64_t seed = 42);

void register_bundle(SystemOfBundles& system, const CocycleBundle& e);
/// E* for E registered in the system (tangent cocycles are members implicitly).
/// Throws InvariantViolation("bundle-in-system") otherwise.
CocycleBundle involution_star(const SystemOfBundles& system, const CocycleBundle& e);

}  // namespace rtc
