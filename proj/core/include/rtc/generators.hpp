#pragma once

#include "rtc/algebra.hpp"
#include "rtc/smooth_map.hpp"

#include <string>
#include <utility>
#include <vector>

namespace rtc {

/// Bumped whenever a generator is added, removed or changed.
inline constexpr int kGeneratorSuiteVersion = 1;

struct GeneratorMap {
  std::string id;
  SmoothMap map;
};

/// Identity, projections, polynomials of degree <= 3 and sin/cos/exp
/// compositions over R^1..R^3, in a fixed order.
const std::vector<GeneratorMap>& generator_suite();

/// Index pairs (i, j) with cod(i) = dom(j), in lexicographic order.
std::vector<std::pair<std::size_t, std::size_t>> composable_pairs(const std::vector<GeneratorMap>& suite);

struct GeneratorAlgebra {
  std::string id;
  Algebra algebra;
};

/// Q[x], Q[x,y], Q[x]/(x^2), Q[x]/(x^3 - 1).
std::vector<GeneratorAlgebra> generator_algebras();

struct GeneratorMorphism {
  std::string id;
  AlgebraMorphism map;
};

/// Morphisms between the generator algebras, including composable chains.
std::vector<GeneratorMorphism> generator_morphisms();

/// Fixed pseudo-random polynomials in n variables of degree <= max_degree with
/// small rational coefficients.
std::vector<Polynomial> random_polynomials(std::size_t count, std::size_t n, unsigned max_degree, std::uint64_t seed);

}  // namespace rtc
