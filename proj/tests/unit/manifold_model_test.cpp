#include "helpers.hpp"

#include "rtc/errors.hpp"
#include "rtc/manifold.hpp"
#include "rtc/optimize.hpp"
#include "rtc/standard_manifolds.hpp"

#include <cmath>

using namespace rtc;
using rtc::test::check_close;

TEST_CASE("standard atlases validate") {
  for (const AtlasPtr& a : {circle_atlas(), sphere_atlas(), torus_atlas(), euclidean_atlas(3)}) {
    for (const auto& c : check_atlas(*a)) CHECK_MESSAGE(c.passed, a->name() << " " << c.name);
    CHECK_NOTHROW(validate_atlas(*a));
  }
  CHECK(torus_atlas()->charts().size() == 4);
}

TEST_CASE("a collapsing transition is rejected") {
  Box unit{{{0.0, 1.0}}};
  Atlas bad("bad", 1, {Chart{"A", unit}, Chart{"B", unit}},
            {Atlas::TransitionSpec{"A", "B", parse_map("(map 1 1 1/2)"), unit}});
  try {
    validate_atlas(bad);
    FAIL("expected an invariant violation");
  } catch (const InvariantViolation& e) {
    CHECK(e.invariant() == "cocycle:invertible-transition");
  }
}

TEST_CASE("change_chart on the circle") {
  AtlasPtr circle = circle_atlas();
  ManifoldPoint p{"A", {0.75}};
  ManifoldPoint q = change_chart(*circle, p, "B");
  CHECK(q.chart == "B");
  CHECK(q.coords[0] == doctest::Approx(-0.25));
  ManifoldPoint back = change_chart(*circle, q, "A");
  CHECK(std::abs(back.coords[0] - 0.75) < 1e-12);
  CHECK(change_chart(*circle, p, "A").coords == p.coords);

  Covector w{p, {1.5}};
  Covector w2 = change_chart(*circle, change_chart(*circle, w, "B"), "A");
  CHECK(std::abs(w2.components[0] - 1.5) < 1e-12);
  CHECK_THROWS(change_chart(*circle, ManifoldPoint{"A", {0.5}}, "B"));
}

TEST_CASE("covectors on the sphere change by the inverse transpose") {
  AtlasPtr sphere = sphere_atlas();
  ManifoldPoint p{"north", {0.8, -0.6}};
  TangentVec v{p, {0.3, 1.1}};
  Covector w{p, {-2.0, 0.5}};
  TangentVec v2 = change_chart(*sphere, v, "south");
  Covector w2 = change_chart(*sphere, w, "south");
  CHECK(pairing(w2.components, v2.components) == doctest::Approx(pairing(w.components, v.components)).epsilon(1e-12));
}

TEST_CASE("double cover doubles tangents and covectors") {
  AtlasPtr circle = circle_atlas();
  ManifoldMap f = circle_double_cover(circle);
  TangentVec v = manifold_tangent_map(f, TangentVec{{"A", {0.1}}, {1.0}});
  CHECK(v.components[0] == doctest::Approx(2.0));
  ManifoldPoint x{"A", {0.1}};
  ManifoldPoint fx = f.apply(x);
  Covector phi = cotangent_map(f, x, Covector{fx, {1.0}});
  CHECK(phi.components[0] == doctest::Approx(2.0));

  ManifoldMap id = identity_manifold_map(circle);
  TangentVec u{{"B", {-0.3}}, {0.7}};
  CHECK(manifold_tangent_map(id, u).components == u.components);
}

TEST_CASE("cotangent map rejects a covector at the wrong base") {
  AtlasPtr circle = circle_atlas();
  ManifoldMap f = circle_double_cover(circle);
  CHECK_THROWS_AS(cotangent_map(f, ManifoldPoint{"A", {0.1}}, Covector{{"A", {0.9}}, {1.0}}), DomainError);
}

TEST_CASE("dtheta pulls back to 2 dtheta") {
  AtlasPtr circle = circle_atlas();
  CovectorField pulled = covector_pullback(dtheta_field(circle), circle_double_cover(circle));
  CHECK(section_law_holds(pulled));
  CHECK(check_overlap_compatibility(pulled).passed);
  for (double t : {0.05, 0.3, 0.6, 0.95}) {
    Covector c = pulled.at(ManifoldPoint{"A", {t}});
    CHECK(std::abs(c.components[0] - 2.0) < 1e-12);
  }
  CovectorField same = covector_pullback(dtheta_field(circle), identity_manifold_map(circle));
  CHECK(std::abs(same.at(ManifoldPoint{"B", {0.2}}).components[0] - 1.0) < 1e-12);
}

TEST_CASE("etale examples") {
  AtlasPtr circle = circle_atlas();
  EtaleReport cover = is_etale(circle_double_cover(circle));
  CHECK(cover.etale);
  CHECK(cover.min_abs_det == doctest::Approx(2.0));
  CHECK_FALSE(is_etale(constant_map(euclidean_atlas(2))).etale);
  CHECK(is_etale(box_inclusion(2)).etale);
  CHECK(is_etale(sphere_antipodal(sphere_atlas())).etale);
}

TEST_CASE("etale cotangent functor") {
  AtlasPtr circle = circle_atlas();
  ManifoldMap cover = circle_double_cover(circle);
  Covector phi{{"A", {0.2}}, {3.0}};
  Covector out = etale_cotangent_functor(cover, phi);
  CHECK(out.base.coords[0] == doctest::Approx(0.4));
  CHECK(out.components[0] == doctest::Approx(1.5));
  Covector same = etale_cotangent_functor(identity_manifold_map(circle), phi);
  CHECK(covector_distance(*circle, same, phi) < 1e-12);
  CHECK_THROWS(EtaleCotangent(constant_map(euclidean_atlas(1))));
}

TEST_CASE("gradient descent on the sphere reaches the south pole") {
  SphereDescentDemo demo = sphere_descent_demo();
  CHECK(demo.distance < 1e-6);
  CHECK(demo.descent.iterations <= 500);
  CHECK(demo.descent.monotone);
}

TEST_CASE("a critical point is fixed by a gradient step") {
  AtlasPtr sphere = sphere_atlas();
  ManifoldMap h = sphere_height(sphere, euclidean_atlas(1));
  StepResult r = riemannian_gradient_step(h, MetricField::euclidean(sphere), ManifoldPoint{"south", {0.0, 0.0}});
  CHECK_FALSE(r.moved);
  check_close(r.point.coords, {0.0, 0.0});
}
