#include "rtc/algebra.hpp"
#include "rtc/errors.hpp"
#include "rtc/generators.hpp"

#include <doctest.h>

using namespace rtc;

namespace {

Polynomial P(const char* text) { return parse_polynomial(text); }

}  // namespace

TEST_CASE("total differential") {
  CHECK(total_differential(P("1"), 1).is_zero());
  // x0 = x, x1 = y, x2 = dx, x3 = dy
  CHECK(total_differential(P("x0*x1"), 2) == P("x0*x3 + x1*x2"));
  CHECK(total_differential(P("x0^3 + 2*x0"), 1) == P("(3*x0^2 + 2)*x1"));
  CHECK_THROWS_AS(total_differential(P("x1"), 1), DimensionMismatch);
}

TEST_CASE("Leibniz and additivity on random pairs") {
  auto polys = random_polynomials(100, 2, 3, 7);
  for (std::size_t k = 0; k < 50; ++k) {
    const Polynomial& p = polys[2 * k];
    const Polynomial& q = polys[2 * k + 1];
    Polynomial dp = total_differential(p, 2);
    Polynomial dq = total_differential(q, 2);
    CHECK(total_differential(p * q, 2) == p * dq + q * dp);
    CHECK(total_differential(p + q, 2) == dp + dq);
  }
}

TEST_CASE("Kahler tangent") {
  Algebra x = Algebra::polynomial(1);
  AlgebraMorphism id = AlgebraMorphism::identity(x);
  CHECK(kahler_tangent(id) == AlgebraMorphism::identity(Kahler{}.tangent(x)));

  AlgebraMorphism sq(x, x, {P("x0^2")});
  CHECK(kahler_tangent(sq).apply(P("x1")) == P("2*x0*x1"));

  AlgebraMorphism shift(x, x, {P("x0 + 1")});
  AlgebraMorphism both = compose(sq, shift);
  CHECK(kahler_tangent(both) == compose(kahler_tangent(sq), kahler_tangent(shift)));
  CHECK(kahler_tangent(both).apply(P("x1")) == P("2*(x0 + 1)*x1"));
  CHECK_THROWS_AS(Kahler{}.tangent(Algebra::quotient(P("x0^2"))), DomainError);
}

TEST_CASE("dual numbers tangent") {
  Algebra nil = Algebra::quotient(P("x0^2"));
  CHECK(dualnum_tangent(AlgebraMorphism::identity(nil)) == AlgebraMorphism::identity(DualNumbers{}.tangent(nil)));

  AlgebraMorphism f(nil, nil, {P("x0 + x0^2")});
  AlgebraMorphism tf = dualnum_tangent(f);
  // a + b eps with a = 1 + x, b = 3x and eps = x1
  Polynomial element = P("1 + x0 + 3*x0*x1");
  Polynomial expected = nil.reduce(f.apply(P("1 + x0"))) + nil.reduce(f.apply(P("3*x0"))) * P("x1");
  CHECK(tf.target().reduce(tf.apply(element)) == tf.target().reduce(expected));
}

TEST_CASE("dual numbers structure laws") {
  DualNumbers t;
  for (const auto& g : generator_algebras()) {
    const Algebra& a = g.algebra;
    CHECK_MESSAGE(t.seq(t.z(a), t.p(a)) == AlgebraMorphism::identity(a), g.id);
    CHECK_MESSAGE(t.seq(t.flip(a), t.flip(a)) == AlgebraMorphism::identity(t.tangent2(a)), g.id);
  }
}

TEST_CASE("dual numbers functoriality on the suite") {
  auto morphisms = generator_morphisms();
  for (const auto& f : morphisms) {
    for (const auto& g : morphisms) {
      if (!(f.map.target() == g.map.source())) continue;
      CHECK(dualnum_tangent(compose(f.map, g.map)) ==
            compose(dualnum_tangent(f.map), dualnum_tangent(g.map)));
    }
  }
}

TEST_CASE("derivations reverse tangent") {
  Algebra x = Algebra::polynomial(1);
  AlgebraMorphism rid = derivations_reverse_tangent(AlgebraMorphism::identity(x));
  CHECK(rid.apply(P("x1")) == P("x1"));
  AlgebraMorphism sq(x, x, {P("x0^2")});
  CHECK(derivations_reverse_tangent(sq).apply(P("x1")) == P("2*x0*x1"));
  CHECK(derivations_reverse_tangent(sq).apply(P("x0")) == P("x0"));
}

TEST_CASE("module dual involution") {
  Algebra nil = Algebra::quotient(P("x0^2"));
  FreeModuleMorphism id = FreeModuleMorphism::identity(nil, 1);
  CHECK(module_dual_involution(id) == RationalMatrix::identity(2));

  FreeModuleMorphism mx = FreeModuleMorphism::scalar(nil, 1, P("x0"));
  RationalMatrix m = to_rational_matrix(mx);
  RationalMatrix d = module_dual_involution(mx);
  CHECK(d == m.transpose());
  // basis (1, x): x sends 1 to x and x to 0
  CHECK(m(1, 0) == 1);
  CHECK(m(0, 0) == 0);
  CHECK(m(0, 1) == 0);
  CHECK(m(1, 1) == 0);
  CHECK(d.transpose() == m);

  CHECK_THROWS_AS(module_dual_involution(FreeModuleMorphism::identity(Algebra::polynomial(1), 1)), DomainError);
}

TEST_CASE("module dual is contravariant") {
  Algebra a = Algebra::quotient(P("x0^3 - 1"));
  FreeModuleMorphism g{a, 2, 2, {{P("x0"), P("1")}, {P("0"), P("x0^2 + 2")}}};
  FreeModuleMorphism h{a, 2, 2, {{P("1/2"), P("x0")}, {P("x0"), P("3")}}};
  CHECK(module_dual_involution(compose(g, h)) == module_dual_involution(g) * module_dual_involution(h));
}

TEST_CASE("parsing algebra text") {
  CHECK(parse_poly_text("poly:x0^2 + 1") == P("x0^2 + 1"));
  auto images = parse_alghom_text("alghom: x0 -> x0^2; x1 -> 3*x0 - 1");
  REQUIRE(images.size() == 2);
  CHECK(images[1] == P("3*x0 - 1"));
  CHECK_THROWS_AS(parse_alghom_text("x0 = x0"), ParseError);
}
