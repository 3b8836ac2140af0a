#pragma once

#include "rtc/atlas.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rtc {

/// Local representative of a manifold map, valid at x (source chart coordinates)
/// when x lies in `box` and the source chart, every guard holds and the image
/// lies in the target chart.
struct LocalRep {
  std::string source_chart;
  std::string target_chart;
  SmoothMap map;
  Box box;
  std::vector<Guard> guards;
  SmoothMap jacobian;  // row-major, filled by ManifoldMap
};

class ManifoldMap {
 public:
  ManifoldMap(std::string name, AtlasPtr source, AtlasPtr target, std::vector<LocalRep> reps);

  const std::string& name() const { return name_; }
  const Atlas& source() const { return *source_; }
  const Atlas& target() const { return *target_; }
  const AtlasPtr& source_ptr() const { return source_; }
  const AtlasPtr& target_ptr() const { return target_; }
  const std::vector<LocalRep>& reps() const { return reps_; }

  bool valid_at(const LocalRep& rep, std::span<const double> x) const;
  /// Every representative usable at p, with p moved into that representative's chart.
  std::vector<std::pair<const LocalRep*, ManifoldPoint>> reps_at(const ManifoldPoint& p) const;
  /// First entry of reps_at, preferring p's own chart. Throws DomainError if none.
  std::pair<const LocalRep*, ManifoldPoint> locate(const ManifoldPoint& p) const;

  ManifoldPoint apply(const ManifoldPoint& p) const;

 private:
  std::string name_;
  AtlasPtr source_;
  AtlasPtr target_;
  std::vector<LocalRep> reps_;
};

/// Diagrammatic composite: first f, then g.
ManifoldMap compose_manifold_maps(const ManifoldMap& f, const ManifoldMap& g);

ManifoldMap identity_manifold_map(const AtlasPtr& atlas);

/// Representatives of f extended by target transitions, so that every chart
/// reachable from a representative's image gets its own representative.
std::vector<LocalRep> extended_reps(const ManifoldMap& f);

/// T(f)(x, v) = (f(x), J v). The result is based in the representative's target chart.
TangentVec manifold_tangent_map(const ManifoldMap& f, const TangentVec& v);

/// T*(f)(x, phi) = (x, J^T phi) for phi based at f(x). The result is based in x's chart.
/// Throws DomainError when phi is not based at f(x).
Covector cotangent_map(const ManifoldMap& f, const ManifoldPoint& x, const Covector& phi, double base_tol = 1e-9);

double pairing(std::span<const double> phi, std::span<const double> v);

/// One chart-local piece of a covector field. `section` is x -> (x, omega(x)).
struct CovectorPatch {
  std::string chart;
  Box box;
  std::vector<Guard> guards;
  SmoothMap section;
  SmoothMap omega;
};

class CovectorField {
 public:
  CovectorField(AtlasPtr atlas, std::vector<CovectorPatch> patches);
  /// One patch per listed chart from component maps omega_i : R^n -> R^n.
  static CovectorField from_components(AtlasPtr atlas, const std::vector<std::pair<std::string, SmoothMap>>& components);

  const Atlas& atlas() const { return *atlas_; }
  const AtlasPtr& atlas_ptr() const { return atlas_; }
  const std::vector<CovectorPatch>& patches() const { return patches_; }

  bool patch_valid_at(const CovectorPatch& patch, std::span<const double> x) const;
  /// omega(p), based in p's chart. Throws DomainError outside every patch.
  Covector at(const ManifoldPoint& p) const;

 private:
  AtlasPtr atlas_;
  std::vector<CovectorPatch> patches_;
};

/// f*omega with patches <1, f omega> T*(f) on each representative.
CovectorField covector_pullback(const CovectorField& omega, const ManifoldMap& f);

/// The first block of every patch section is the identity, checked structurally.
bool section_law_holds(const CovectorField& omega);

struct FieldCheck {
  bool passed = true;
  double max_error = 0.0;
  std::size_t points = 0;
  std::optional<ManifoldPoint> witness;
};

/// Patches valid at the same point agree after (J^T)^{-1} transport.
FieldCheck check_overlap_compatibility(const CovectorField& omega, std::size_t samples = 64, std::uint64_t seed = 42,
                                       double tol = 1e-9);

struct EtaleReport {
  bool etale = true;
  double min_abs_det = 0.0;
  std::size_t points = 0;
  std::optional<ManifoldPoint> worst;
  std::string detail;
};

/// Sampled semi-decision: every sampled local Jacobian has |det| > det_floor.
EtaleReport is_etale(const ManifoldMap& f, std::size_t samples = 64, std::uint64_t seed = 42, double det_floor = 1e-8);

/// Covector transport (J^{-1})^T along an etale map, checked once at construction.
class EtaleCotangent {
 public:
  /// Throws DomainError carrying the is_etale report when f is not etale.
  explicit EtaleCotangent(ManifoldMap f, std::size_t samples = 64, std::uint64_t seed = 42, double det_floor = 1e-8);

  const EtaleReport& report() const { return report_; }
  /// phi at x goes to a covector at f(x), based in the representative's target chart.
  Covector operator()(const Covector& phi) const;

 private:
  ManifoldMap f_;
  EtaleReport report_;
  double det_floor_;
};

Covector etale_cotangent_functor(const ManifoldMap& f, const Covector& phi);

/// Max mixed error between two covectors after moving b into a's chart.
double covector_distance(const Atlas& atlas, const Covector& a, const Covector& b);
double point_distance(const Atlas& atlas, const ManifoldPoint& a, const ManifoldPoint& b);

/// Uniform sample from the valid region of one representative; empty after too many rejections.
std::optional<ManifoldPoint> sample_in_rep(const ManifoldMap& f, const LocalRep& rep, std::mt19937_64& rng);
/// Uniform sample from a chart of the atlas chosen in turn.
ManifoldPoint sample_point(const Atlas& atlas, std::mt19937_64& rng, double clamp = 3.0);

}  // namespace rtc
