#include "helpers.hpp"

#include "rtc/compare.hpp"
#include "rtc/errors.hpp"
#include "rtc/forward.hpp"
#include "rtc/generators.hpp"
#include "rtc/reverse.hpp"

using namespace rtc;
using rtc::test::check_close;
using rtc::test::same;

TEST_CASE("R examples") {
  SmoothMap f = parse_map("(map 2 2 (* x0 x1) (+ x0 x1))");
  check_close(r_combinator(f).eval(std::vector{2.0, 3.0, 1.0, 1.0}), {4, 3});
  CHECK(same(r_combinator(SmoothMap::identity(2)), "(map 4 2 x2 x3)"));
  CHECK(same(r_combinator(parse_map("(map 2 1 5)")), "(map 3 2 0 0)"));
}

TEST_CASE("reverse tangent map keeps the base point") {
  SmoothMap f = parse_map("(map 2 2 (* x0 x1) (+ x0 x1))");
  check_close(reverse_tangent_map(f).eval(std::vector{2.0, 3.0, 1.0, 1.0}), {2, 3, 4, 3});
  CHECK(same(reverse_tangent_map(SmoothMap::identity(1)), "(map 2 2 x0 x1)"));
}

TEST_CASE("adjoint identity on the suite") {
  for (const auto& g : generator_suite()) {
    std::size_t n = g.map.dom_dim();
    std::size_t m = g.map.cod_dim();
    SmoothMap d = d_combinator(g.map);
    SmoothMap r = r_combinator(g.map);
    for (const auto& p : sample_points(n + n + m, 25, 3)) {
      std::vector<double> xv(p.begin(), p.begin() + 2 * n);
      std::vector<double> xw(p.begin(), p.begin() + n);
      xw.insert(xw.end(), p.begin() + 2 * n, p.end());
      auto dv = d.eval(xv);
      auto rw = r.eval(xw);
      double lhs = 0, rhs = 0;
      for (std::size_t j = 0; j < m; ++j) lhs += dv[j] * xw[n + j];
      for (std::size_t i = 0; i < n; ++i) rhs += xv[n + i] * rw[i];
      CHECK_MESSAGE(mixed_error(lhs, rhs) < 1e-10, g.id);
    }
  }
}

TEST_CASE("is_linear_in_second examples") {
  CHECK(is_linear_in_second(parse_map("(map 2 1 (* x0 x1))"), 1).linear);
  CHECK(is_linear_in_second(parse_map("(map 2 1 (* (sin x0) x1))"), 1).linear);
  LinearityCheck sq = is_linear_in_second(parse_map("(map 2 1 (* x1 x1))"), 1);
  CHECK_FALSE(sq.linear);
  CHECK(sq.witness.size() == 2);
  CHECK_THROWS_AS(LinearInSecond(parse_map("(map 2 1 (* x1 x1))"), 1), NotLinear);
}

TEST_CASE("linear dagger examples") {
  LinearInSecond id(parse_map("(map 2 1 x1)"), 1);
  CHECK(same(linear_dagger(id).carrier(), "(map 2 1 x1)"));

  LinearInSecond g(parse_map("(map 3 1 (+ (* x0 x1) x2))"), 1);
  LinearInSecond gd = linear_dagger(g);
  CHECK(gd.linear_dim() == 1);
  CHECK(gd.cod_dim() == 2);
  CHECK(same(gd.carrier(), "(map 2 2 (* x0 x1) x1)"));
  CHECK(same(linear_dagger(gd).carrier(), "(map 3 1 (+ (* x0 x1) x2))"));
}

TEST_CASE("dagger reverses fibre composition") {
  LinearInSecond g(parse_map("(map 3 2 (* x0 x1) (+ x1 (* (sin x0) x2)))"), 1);
  LinearInSecond h(parse_map("(map 3 1 (+ (* 2 x1) (* x0 x2)))"), 1);
  LinearInSecond lhs = linear_dagger(fibre_compose(g, h));
  LinearInSecond rhs = fibre_compose(linear_dagger(h), linear_dagger(g));
  CHECK(compare_maps(lhs.carrier(), rhs.carrier()).equal);
}

TEST_CASE("R from the involution agrees with the direct transpose") {
  CHECK(same(crdc_from_involution(SmoothMap::identity(2)), "(map 4 2 x2 x3)"));
  for (const auto& g : generator_suite()) {
    CHECK_MESSAGE(compare_maps(crdc_from_involution(g.map), r_combinator(g.map)).equal, g.id);
  }
}

TEST_CASE("reverse chain rule") {
  SmoothMap f = parse_map("(map 2 2 (* x0 x1) (+ x0 x1))");
  SmoothMap g = parse_map("(map 2 1 (* (sin x0) (exp x1)))");
  SmoothMap lhs = r_combinator(compose_maps(f, g));
  // R[FG](x, z) = R[F](x, R[G](F(x), z))
  SmoothMap inner = compose_maps(pair_maps(compose_maps(SmoothMap::projection(3, 0, 2), f),
                                           SmoothMap::projection(3, 2, 1)),
                                 r_combinator(g));
  SmoothMap rhs = compose_maps(pair_maps(SmoothMap::projection(3, 0, 2), inner), r_combinator(f));
  CHECK(compare_maps(lhs, rhs).equal);
}
