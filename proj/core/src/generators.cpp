#include "rtc/generators.hpp"

#include "rtc/map_dsl.hpp"

#include <random>

namespace rtc {

const std::vector<GeneratorMap>& generator_suite() {
  static const std::vector<GeneratorMap> suite = [] {
    std::vector<std::pair<const char*, const char*>> text{
        {"id1", "(map 1 1 x0)"},
        {"id2", "(map 2 2 x0 x1)"},
        {"proj2", "(map 2 1 x0)"},
        {"proj3", "(map 3 2 x1 x2)"},
        {"square", "(map 1 1 (* x0 x0))"},
        {"cubic", "(map 1 1 (+ (* x0 x0 x0) (* -2 x0) 1))"},
        {"mul-add", "(map 2 2 (* x0 x1) (+ x0 x1))"},
        {"curve", "(map 1 2 (* x0 x0) (+ (* 3 x0) -1/2))"},
        {"poly3", "(map 3 1 (+ (* x0 x1 x2) (* x0 x0) (* -1/3 x2)))"},
        {"quad2-3", "(map 2 3 (* x0 x0) (* x0 x1) (+ x1 (* x1 x1 x1)))"},
        {"sin", "(map 1 1 (sin x0))"},
        {"exp", "(map 1 1 (exp x0))"},
        {"sin-cos-exp", "(map 2 2 (* (sin x0) (cos x1)) (exp (* x0 x1)))"},
        {"polar", "(map 2 2 (* x0 (cos x1)) (* x0 (sin x1)))"},
        {"trig3", "(map 3 3 (exp x0) (cos (+ x1 x2)) (* x0 (sin x2)))"},
        {"mixed", "(map 2 3 (sin (* x0 x1)) (+ x0 (* x1 x1)) (exp (neg x0)))"},
        {"damped", "(map 3 1 (* (exp (neg (* x0 x0))) (cos (+ x1 (* 2 x2)))))"},
    };
    std::vector<GeneratorMap> out;
    for (const auto& [id, src] : text) out.push_back(GeneratorMap{id, parse_map(src)});
    return out;
  }();
  return suite;
}

std::vector<std::pair<std::size_t, std::size_t>> composable_pairs(const std::vector<GeneratorMap>& suite) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    for (std::size_t j = 0; j < suite.size(); ++j) {
      if (suite[i].map.cod_dim() == suite[j].map.dom_dim()) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<GeneratorAlgebra> generator_algebras() {
  return {
      {"Q[x]", Algebra::polynomial(1)},
      {"Q[x,y]", Algebra::polynomial(2)},
      {"Q[x]/(x^2)", Algebra::quotient(parse_polynomial("x0^2"))},
      {"Q[x]/(x^3-1)", Algebra::quotient(parse_polynomial("x0^3 - 1"))},
  };
}

std::vector<GeneratorMorphism> generator_morphisms() {
  Algebra x = Algebra::polynomial(1);
  Algebra xy = Algebra::polynomial(2);
  Algebra nil = Algebra::quotient(parse_polynomial("x0^2"));
  Algebra roots = Algebra::quotient(parse_polynomial("x0^3 - 1"));
  auto hom = [](const char* id, const Algebra& a, const Algebra& b, const char* text) {
    return GeneratorMorphism{id, AlgebraMorphism(a, b, parse_alghom_text(text))};
  };
  return {
      hom("x:square", x, x, "x0 -> x0^2"),
      hom("x:shift", x, x, "x0 -> x0 + 1"),
      hom("x:cubic", x, x, "x0 -> x0^3 - 2*x0 + 1/2"),
      hom("x->xy", x, xy, "x0 -> x0*x1 + x1^2"),
      hom("xy->x", xy, x, "x0 -> x0^2; x1 -> 3*x0 - 1"),
      hom("xy:twist", xy, xy, "x0 -> x1; x1 -> x0 + x1^2"),
      hom("xy:poly", xy, xy, "x0 -> x0*x1; x1 -> x0 - 2*x1^3"),
      hom("x->nil", x, nil, "x0 -> x0 + 1"),
      hom("nil:id-ish", nil, nil, "x0 -> x0 + x0^2"),
      hom("nil:scale", nil, nil, "x0 -> 2*x0"),
      hom("x->roots", x, roots, "x0 -> x0^2 + x0"),
      hom("roots:frobenius", roots, roots, "x0 -> x0^2"),
      hom("roots:id", roots, roots, "x0 -> x0"),
  };
}

std::vector<Polynomial> random_polynomials(std::size_t count, std::size_t n, unsigned max_degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<int> denom(1, 3);
  std::uniform_int_distribution<unsigned> exponent(0, max_degree);
  std::uniform_int_distribution<int> terms(1, 4);
  std::vector<Polynomial> out;
  for (std::size_t k = 0; k < count; ++k) {
    Polynomial p;
    int t = terms(rng);
    for (int i = 0; i < t; ++i) {
      Monomial m;
      unsigned budget = max_degree;
      for (std::size_t v = 0; v < n; ++v) {
        unsigned e = std::min(exponent(rng), budget);
        budget -= e;
        if (e > 0) m.emplace_back(static_cast<std::uint32_t>(v), e);
      }
      int c = coeff(rng);
      int d = denom(rng);
      Rational r(c, d);
      r.canonicalize();
      p += Polynomial::monomial(m, r);
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace rtc
