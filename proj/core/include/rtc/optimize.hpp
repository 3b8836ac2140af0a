#pragma once

#include "rtc/manifold.hpp"

#include <functional>

namespace rtc {

/// Per-chart symmetric positive definite matrices, row-major maps R^n -> R^{n*n}.
class MetricField {
 public:
  MetricField(AtlasPtr atlas, std::vector<std::pair<std::string, SmoothMap>> components);
  /// The identity matrix in every chart.
  static MetricField euclidean(AtlasPtr atlas);

  const Atlas& atlas() const { return *atlas_; }
  bool has_chart(const std::string& chart) const;
  /// Throws DomainError when p's chart has no component.
  Eigen::MatrixXd at(const ManifoldPoint& p) const;

 private:
  AtlasPtr atlas_;
  std::vector<std::pair<std::string, SmoothMap>> components_;
};

/// Sampled symmetry and positive definiteness; the witness is the first bad point.
FieldCheck check_metric(const MetricField& g, std::size_t samples = 64, std::uint64_t seed = 42);

struct StepOptions {
  double step = 0.1;
  int max_halvings = 30;
};

struct StepResult {
  ManifoldPoint point;
  double value_before = 0.0;
  double value_after = 0.0;
  double step_used = 0.0;
  int halvings = 0;
  bool moved = false;
};

/// Value of a real-valued manifold map.
double objective_value(const ManifoldMap& h, const ManifoldPoint& x);

/// One step x - step * g^{-1} dh, taken in the first chart (current chart first)
/// that contains the full step, with the step halved until h does not increase.
/// Returns x unchanged when dh = 0. Throws DomainError on step underflow or
/// when every candidate leaves the atlas.
StepResult riemannian_gradient_step(const ManifoldMap& h, const MetricField& g, const ManifoldPoint& x,
                                    const StepOptions& options = {});

struct DescentResult {
  ManifoldPoint final_point;
  std::vector<double> values;  // at the start and after each accepted step
  std::size_t iterations = 0;
  bool monotone = true;
};

/// Repeats riemannian_gradient_step until `stop` holds, the point stops moving
/// or max_iters steps were taken.
DescentResult riemannian_descent(const ManifoldMap& h, const MetricField& g, const ManifoldPoint& start,
                                 std::size_t max_iters, const StepOptions& options = {},
                                 const std::function<bool(const ManifoldPoint&)>& stop = {});

}  // namespace rtc
