#pragma once

#include "rtc/smooth_map.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace rtc {

/// Open box prod (lo_i, hi_i); bounds may be infinite. Membership is strict.
struct Box {
  std::vector<std::pair<double, double>> bounds;

  static Box unbounded(std::size_t n);
  std::size_t dim() const { return bounds.size(); }
  bool contains(std::span<const double> x) const;
  Box intersect(const Box& other) const;
  /// Uniform point; infinite sides are clamped to [-clamp, clamp].
  std::vector<double> sample(std::mt19937_64& rng, double clamp = 3.0) const;
};

/// Extra membership condition: map(x) must lie in box.
struct Guard {
  SmoothMap map;
  Box box;
  bool holds(std::span<const double> x) const;
};

bool guards_hold(const std::vector<Guard>& guards, std::span<const double> x);

struct Chart {
  std::string id;
  Box box;
};

/// Coordinate change from one chart to another, valid on `overlap`
/// intersected with the source chart box, provided the image lies in the
/// target chart box. Several entries may exist for one ordered pair.
struct Transition {
  std::string from;
  std::string to;
  SmoothMap map;
  Box overlap;
  SmoothMap jacobian;  // row-major n*n, derived from map
};

struct ManifoldPoint {
  std::string chart;
  std::vector<double> coords;
};

struct TangentVec {
  ManifoldPoint base;
  std::vector<double> components;
};

struct Covector {
  ManifoldPoint base;
  std::vector<double> components;
};

class Atlas {
 public:
  struct TransitionSpec {
    std::string from;
    std::string to;
    SmoothMap map;
    Box overlap;
  };

  Atlas(std::string name, std::size_t dim, std::vector<Chart> charts, std::vector<TransitionSpec> transitions);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Chart>& charts() const { return charts_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  const Chart& chart(const std::string& id) const;
  bool has_chart(const std::string& id) const;

  bool contains(const ManifoldPoint& p) const;
  /// First transition entry from -> to valid at x (coordinates in `from`).
  const Transition* find_transition(const std::string& from, const std::string& to, std::span<const double> x) const;
  /// Charts other than p.chart into which p can be moved, in atlas order.
  std::vector<std::string> charts_containing(const ManifoldPoint& p) const;

 private:
  std::string name_;
  std::size_t dim_;
  std::vector<Chart> charts_;
  std::vector<Transition> transitions_;
};

using AtlasPtr = std::shared_ptr<const Atlas>;

/// Moves a point, tangent vector or covector into `target`. Tangent vectors
/// transform by J, covectors by (J^T)^{-1}. Identity when target is current.
/// Throws DomainError when the point is outside every valid overlap.
ManifoldPoint change_chart(const Atlas& atlas, const ManifoldPoint& p, const std::string& target);
TangentVec change_chart(const Atlas& atlas, const TangentVec& v, const std::string& target);
Covector change_chart(const Atlas& atlas, const Covector& w, const std::string& target);

/// Sampled atlas invariants: invertible transition Jacobians (|det| > det_floor)
/// and the cocycle condition on pairs and triples of overlapping charts.
struct AtlasCheck {
  std::string name;
  bool passed = true;
  double worst = 0.0;  // largest error, or smallest |det| for invertibility
  std::size_t points = 0;
  std::optional<ManifoldPoint> witness;
  std::string detail;
};

std::vector<AtlasCheck> check_atlas(const Atlas& atlas, std::size_t samples = 64, std::uint64_t seed = 42,
                                    double tol = 1e-9, double det_floor = 1e-8);

/// Throws InvariantViolation naming the first failing atlas check.
void validate_atlas(const Atlas& atlas);

Eigen::MatrixXd eval_matrix(const SmoothMap& m, std::span<const double> x, std::size_t rows, std::size_t cols);

}  // namespace rtc
