#pragma once

#include "rtc/smooth_map.hpp"

#include <cstdint>
#include <vector>

namespace rtc {

/// R[F](x, z)_i = sum_j (d f_j / d x_i)(x) * z_j, as a map R^{n+m} -> R^n.
SmoothMap r_combinator(const SmoothMap& f);

/// T*(F)(x, z) = (x, R[F](x, z)), R^{n+m} -> R^{2n}.
SmoothMap reverse_tangent_map(const SmoothMap& f);

struct LinearityCheck {
  bool linear = false;
  bool exact = false;
  double max_error = 0.0;
  std::size_t points = 0;
  /// Point (context, linear) of largest discrepancy; empty when exact.
  std::vector<double> witness;
};

inline constexpr std::uint64_t kLinearitySeed = 0x5eed1u;

/// Tests <pi0, 0, 0, pi1> ; D[g] = g for g : R^{c+a} -> R^b, where the first
/// `context_dim` coordinates are the context.
LinearityCheck is_linear_in_second(const SmoothMap& g, std::size_t context_dim, std::size_t samples = 100,
                                   double tol = 1e-9, std::uint64_t seed = kLinearitySeed);

/// A map R^{c+a} -> R^b that is linear in its last a coordinates.
class LinearInSecond {
 public:
  /// Validates linearity and throws NotLinear with the witness point otherwise.
  LinearInSecond(SmoothMap carrier, std::size_t context_dim);
  /// Skips validation; for maps linear by construction.
  static LinearInSecond trusted(SmoothMap carrier, std::size_t context_dim);

  const SmoothMap& carrier() const { return carrier_; }
  std::size_t context_dim() const { return context_dim_; }
  std::size_t linear_dim() const { return carrier_.dom_dim() - context_dim_; }
  std::size_t cod_dim() const { return carrier_.cod_dim(); }

  /// Entries M(c)[k][j] = d g_k / d a_j at a = 0.
  std::vector<std::vector<Expr>> matrix() const;

 private:
  LinearInSecond(SmoothMap carrier, std::size_t context_dim, bool);
  SmoothMap carrier_;
  std::size_t context_dim_;
};

/// g-dagger(c, w) = M(c)^T w.
LinearInSecond linear_dagger(const LinearInSecond& g);

/// Fibrewise composite over a shared context: (c, a) -> h(c, g(c, a)).
LinearInSecond fibre_compose(const LinearInSecond& g, const LinearInSecond& h);

/// R[F] rebuilt as the dagger of D[F] in its linear argument.
SmoothMap crdc_from_involution(const SmoothMap& f);

}  // namespace rtc
