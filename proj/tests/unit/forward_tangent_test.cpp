#include "helpers.hpp"

#include "rtc/compare.hpp"
#include "rtc/forward.hpp"
#include "rtc/generators.hpp"

using namespace rtc;
using rtc::test::check_close;
using rtc::test::same;

TEST_CASE("D of the product map") {
  SmoothMap f = parse_map("(map 2 2 (* x0 x1) (+ x0 x1))");
  CHECK(same(d_combinator(f), "(map 4 2 (+ (* x1 x2) (* x0 x3)) (+ x2 x3))"));
  CHECK(same(d_combinator(SmoothMap::identity(3)), "(map 6 3 x3 x4 x5)"));
  CHECK(same(d_combinator(parse_map("(map 2 1 7)")), "(map 4 1 0)"));
}

TEST_CASE("D is linear in the direction") {
  for (const auto& g : generator_suite()) {
    SmoothMap d = d_combinator(g.map);
    std::size_t n = g.map.dom_dim();
    auto pts = sample_points(3 * n, 20, 9);
    for (const auto& p : pts) {
      std::vector<double> x(p.begin(), p.begin() + n);
      std::vector<double> v(p.begin() + n, p.begin() + 2 * n);
      std::vector<double> w(p.begin() + 2 * n, p.end());
      auto eval = [&](const std::vector<double>& dir) {
        std::vector<double> in = x;
        in.insert(in.end(), dir.begin(), dir.end());
        return d.eval(in);
      };
      std::vector<double> comb(n);
      for (std::size_t i = 0; i < n; ++i) comb[i] = 2.5 * v[i] - w[i];
      auto lhs = eval(comb);
      auto dv = eval(v);
      auto dw = eval(w);
      for (std::size_t j = 0; j < lhs.size(); ++j) {
        CHECK(mixed_error(lhs[j], 2.5 * dv[j] - dw[j]) < 1e-9);
      }
    }
  }
}

TEST_CASE("tangent functor examples") {
  CHECK(same(tangent_functor_map(SmoothMap::identity(2)), "(map 4 4 x0 x1 x2 x3)"));
  check_close(tangent_functor_map(parse_map("(map 2 1 (* x0 x1))")).eval(std::vector{2.0, 3.0, 1.0, 0.0}), {6, 3});
  SmoothMap f = parse_map("(map 1 1 (* x0 x0))");
  SmoothMap g = parse_map("(map 1 1 (sin x0))");
  Comparison c = compare_maps(tangent_functor_map(compose_maps(f, g)),
                              compose_maps(tangent_functor_map(f), tangent_functor_map(g)), {.samples = 50});
  CHECK(c.equal);
  CHECK(c.max_error < 1e-9);
}

TEST_CASE("structure maps in dimension one") {
  TangentStructureMaps t = tangent_structure_transformations(1);
  CHECK(same(t.p, "(map 2 1 x0)"));
  CHECK(same(t.z, "(map 1 2 x0 0)"));
  CHECK(same(t.s, "(map 3 2 x0 (+ x1 x2))"));
  CHECK(same(t.lift, "(map 2 4 x0 0 0 x1)"));
  CHECK(same(t.flip, "(map 4 4 x0 x2 x1 x3)"));
}

TEST_CASE("flip is an involution and fixes the lift") {
  for (std::size_t n : {1u, 2u, 3u}) {
    TangentStructureMaps t = tangent_structure_transformations(n);
    CHECK(canonically_equal(compose_maps(t.flip, t.flip), SmoothMap::identity(4 * n)));
    CHECK(canonically_equal(compose_maps(t.lift, t.flip), t.lift));
    CHECK(canonically_equal(compose_maps(t.z, t.p), SmoothMap::identity(n)));
  }
}

TEST_CASE("naturality of p against T(F) on the suite") {
  for (const auto& g : generator_suite()) {
    TangentStructureMaps src = tangent_structure_transformations(g.map.dom_dim());
    TangentStructureMaps dst = tangent_structure_transformations(g.map.cod_dim());
    Comparison c = compare_maps(compose_maps(tangent_functor_map(g.map), dst.p), compose_maps(src.p, g.map));
    CHECK_MESSAGE(c.equal, g.id);
  }
}

TEST_CASE("jacobian agrees with central differences") {
  SmoothMap f = parse_map("(map 2 2 (* (sin x0) (cos x1)) (exp (* x0 x1)))");
  std::vector<double> x{0.3, -0.4};
  auto j = jacobian(f, x);
  for (std::size_t i = 0; i < 2; ++i) {
    auto cd = central_difference(f, x, i);
    for (std::size_t r = 0; r < 2; ++r) CHECK(j(r, i) == doctest::Approx(cd[r]).epsilon(1e-6));
  }
}
