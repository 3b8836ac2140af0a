#pragma once

#include "rtc/smooth_map.hpp"

#include <Eigen/Dense>

#include <span>

namespace rtc {

/// D[F](x, y)_j = sum_i (d f_j / d x_i)(x) * y_i, as a map R^{2n} -> R^m.
SmoothMap d_combinator(const SmoothMap& f);

/// T(F)(x, v) = (F(x), D[F](x, v)), R^{2n} -> R^{2m}.
SmoothMap tangent_functor_map(const SmoothMap& f);

/// T^2(F) = T(T(F)) on coordinates (x, v, w, u), R^{4n} -> R^{4m}.
SmoothMap tangent2_map(const SmoothMap& f);

/// T_2(F)(x, v, w) = (F(x), D[F](x, v), D[F](x, w)) on the fibre product of two
/// tangent bundles, R^{3n} -> R^{3m}.
SmoothMap tangent_pullback_map(const SmoothMap& f);

/// Structure transformations of the tangent bundle of R^n.
struct TangentStructureMaps {
  std::size_t n = 0;
  SmoothMap p;     // 2n -> n    (x, v) -> x
  SmoothMap s;     // 3n -> 2n   (x, v, w) -> (x, v + w)
  SmoothMap z;     // n  -> 2n   x -> (x, 0)
  SmoothMap lift;  // 2n -> 4n   (x, v) -> (x, 0, 0, v)
  SmoothMap flip;  // 4n -> 4n   (x, v, w, u) -> (x, w, v, u)
};

TangentStructureMaps tangent_structure_transformations(std::size_t n);

/// Jacobian entries as a single map R^n -> R^{m*n}, row-major.
SmoothMap jacobian_map(const SmoothMap& f);

/// Numeric Jacobian at x (m x n).
Eigen::MatrixXd jacobian(const SmoothMap& f, std::span<const double> x);

/// Central difference (F(x + h e_i) - F(x - h e_i)) / 2h.
std::vector<double> central_difference(const SmoothMap& f, std::span<const double> x, std::size_t i,
                                       double h = 1e-6);

}  // namespace rtc
