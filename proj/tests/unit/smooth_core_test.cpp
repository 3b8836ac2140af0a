#include "helpers.hpp"

#include "rtc/compare.hpp"
#include "rtc/errors.hpp"
#include "rtc/generators.hpp"

#include <cmath>

using namespace rtc;
using rtc::test::check_close;
using rtc::test::same;

TEST_CASE("parse_map reads the grammar") {
  SmoothMap f = parse_map("(map 2 1 (+ (* x0 x1) 1))");
  CHECK(f.dom_dim() == 2);
  CHECK(f.cod_dim() == 1);
  CHECK(f.eval(std::vector{2.0, 3.0}) == std::vector{7.0});

  SmoothMap s = parse_map("(map 1 1 (sin x0))");
  CHECK_FALSE(s.is_polynomial());
  CHECK(s.eval(std::vector{0.0})[0] == 0.0);
}

TEST_CASE("parse_map rejects out of range variables and bad headers") {
  CHECK_THROWS_AS(parse_map("(map 1 1 x1)"), UnboundVariable);
  CHECK_THROWS_AS(parse_map("(map 2 1 x0 x1)"), DimensionMismatch);
  CHECK_THROWS_AS(parse_map("(map 1 1 (+ x0"), ParseError);
  try {
    parse_map("(map 1 1\n  (foo x0))");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("print_map round-trips") {
  for (const auto& g : generator_suite()) {
    SmoothMap back = parse_map(print_map(g.map));
    CHECK_MESSAGE(structurally_equal(normalize(back), normalize(g.map)), g.id);
  }
}

TEST_CASE("eval examples") {
  check_close(rtc::test::at("(map 2 2 (* x0 x1) (+ x0 x1))", {2, 3}), {6, 5});
  check_close(SmoothMap::identity(2).eval(std::vector{0.25, -7.0}), {0.25, -7.0});
  auto exact = parse_map("(map 2 1 (* 1/3 x0 x1))").eval_exact(std::vector<Rational>{Rational(3), Rational(5)});
  REQUIRE(exact);
  CHECK((*exact)[0] == Rational(5));
}

TEST_CASE("compose_maps is diagrammatic and unital") {
  SmoothMap sq = parse_map("(map 1 1 (* x0 x0))");
  SmoothMap sn = parse_map("(map 1 1 (sin x0))");
  CHECK(same(compose_maps(sq, sn), "(map 1 1 (sin (* x0 x0)))"));
  for (const auto& g : generator_suite()) {
    CHECK(compare_maps(compose_maps(SmoothMap::identity(g.map.dom_dim()), g.map), g.map).equal);
    CHECK(compare_maps(compose_maps(g.map, SmoothMap::identity(g.map.cod_dim())), g.map).equal);
  }
  CHECK_THROWS_AS(compose_maps(sq, SmoothMap::identity(2)), DimensionMismatch);
}

TEST_CASE("partial derivatives") {
  CHECK(same(partial_derivative(parse_map("(map 2 1 (* x0 x1))"), 0), "(map 2 1 x1)"));
  CHECK(same(partial_derivative(parse_map("(map 1 1 (sin x0))"), 0), "(map 1 1 (cos x0))"));
  CHECK(same(partial_derivative(parse_map("(map 2 1 x0)"), 1), "(map 2 1 0)"));
  SmoothMap r = partial_derivative(parse_map("(map 1 1 (inv (+ 1 (* x0 x0))))"), 0);
  double x = 0.7;
  CHECK(r.eval(std::vector{x})[0] == doctest::Approx(-2 * x / std::pow(1 + x * x, 2)).epsilon(1e-14));
}

TEST_CASE("mixed partials commute") {
  SmoothMap f = parse_map("(map 2 1 (* (exp (* x0 x1)) (sin x0)))");
  SmoothMap a = partial_derivative(partial_derivative(f, 0), 1);
  SmoothMap b = partial_derivative(partial_derivative(f, 1), 0);
  CHECK(compare_maps(a, b).equal);
}

TEST_CASE("canonical forms decide polynomial equality") {
  CHECK(canonically_equal(parse_map("(map 2 1 (* (+ x0 x1) (+ x0 x1)))"),
                          parse_map("(map 2 1 (+ (* x0 x0) (* 2 x0 x1) (* x1 x1)))")));
  CHECK_FALSE(canonically_equal(parse_map("(map 1 1 (* x0 x0))"), parse_map("(map 1 1 (* x0 x0 x0))")));
  Comparison c = compare_maps(parse_map("(map 1 1 (* 2 x0))"), parse_map("(map 1 1 (+ x0 x0))"));
  CHECK(c.equal);
  CHECK(c.exact);
  CHECK(c.max_error == 0.0);
}

TEST_CASE("compare_maps reports a witness on disagreement") {
  Comparison c = compare_maps(parse_map("(map 1 1 (sin x0))"), parse_map("(map 1 1 x0)"));
  CHECK_FALSE(c.equal);
  CHECK(c.worst_point.size() == 1);
  CHECK(c.points == 64);
}

TEST_CASE("generator suite size") {
  CHECK(generator_suite().size() >= 12);
  CHECK(composable_pairs(generator_suite()).size() > generator_suite().size());
}
