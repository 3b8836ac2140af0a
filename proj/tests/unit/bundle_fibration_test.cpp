#include "helpers.hpp"

#include "rtc/bundle.hpp"
#include "rtc/cocycle.hpp"
#include "rtc/errors.hpp"
#include "rtc/reverse.hpp"
#include "rtc/standard_manifolds.hpp"

using namespace rtc;

TEST_CASE("trivial and tangent bundles satisfy the axioms") {
  BundleReport r = verify_bundle_axioms(trivial_bundle(2, 3));
  CHECK(r.passed());
  for (const auto& c : r.checks) CHECK_MESSAGE(c.result.exact, c.name);
  CHECK(verify_bundle_axioms(tangent_bundle(2)).passed());
}

TEST_CASE("tangent of a trivial bundle") {
  DifferentialBundle t = tangent_of_bundle(trivial_bundle(2, 1));
  CHECK(t.base_dim == 4);
  CHECK(t.fibre_dim == 2);
  CHECK(verify_bundle_axioms(t).passed());
}

TEST_CASE("pullbacks") {
  DifferentialBundle e = trivial_bundle(2, 2);
  SmoothMap f = parse_map("(map 3 2 (* x0 x1) (sin x2))");
  PullbackResult pb = pullback_bundle(e, f);
  CHECK(pb.bundle.base_dim == 3);
  CHECK(pb.bundle.fibre_dim == 2);
  CHECK(verify_bundle_axioms(pb.bundle).passed());
  CHECK(verify_morphism(pb.cartesian).passed());

  PullbackIdentityIso iso = pullback_identity_iso(e);
  CHECK(verify_morphism(iso.to).passed());
  CHECK(verify_morphism(iso.from).passed());
  CHECK_THROWS_AS(pullback_bundle(e, parse_map("(map 1 1 x0)")), DimensionMismatch);
}

TEST_CASE("dual identity is a unit for dual composition") {
  DualFibrationMap m = reverse_tangent_dual(parse_map("(map 2 2 (* x0 x1) (+ x0 x1))"));
  CHECK(compare_dual_maps(dual_compose(dual_identity(m.source), m), m).equal);
  CHECK(compare_dual_maps(dual_compose(m, dual_identity(m.target)), m).equal);
}

TEST_CASE("dual composition of reverse tangent maps is the reverse chain rule") {
  SmoothMap f = parse_map("(map 2 2 (* x0 x1) (+ x0 x1))");
  SmoothMap g = parse_map("(map 2 1 (+ (* x0 x0) x1))");
  DualFibrationMap composite = dual_compose(reverse_tangent_dual(f), reverse_tangent_dual(g));
  Comparison c = compare_dual_maps(composite, reverse_tangent_dual(compose_maps(f, g)));
  CHECK(c.equal);
  CHECK(c.exact);
}

TEST_CASE("involution on trivial bundles") {
  SystemOfBundles system;
  DifferentialBundle e = trivial_bundle(1, 2);
  system.add(e);
  DifferentialBundle star = involution_star(system, e);
  CHECK(star.key() == e.key());
  CHECK_THROWS_AS(involution_star(system, trivial_bundle(3, 1)), InvariantViolation);
}

TEST_CASE("fibrewise transpose of a morphism") {
  SystemOfBundles system;
  DifferentialBundle e = trivial_bundle(1, 2);
  system.add(e);
  LinearBundleMorphism m{e, e, SmoothMap::identity(1), parse_map("(map 3 3 x0 (+ x1 (* 2 x2)) (* x0 x2))")};
  DualFibrationMap star = involution_star(system, m);
  auto mat = dual_fibre_matrix(star);
  REQUIRE(mat.size() == 2);
  SmoothMap entries(1, {mat[0][0], mat[0][1], mat[1][0], mat[1][1]});
  CHECK(rtc::test::same(entries, "(map 1 4 1 0 2 x0)"));
  LinearBundleMorphism back = involution_star(system, star);
  CHECK(canonically_equal(back.g, m.g));
}

TEST_CASE("the flip star triangle") {
  for (std::size_t n : {1u, 2u}) {
    FlipStar fs = canonical_flip_star(n);
    CHECK(fs.triangle.equal);
    CHECK(fs.triangle.exact);
    CHECK(fs.round_trip.equal);
  }
  CHECK(flip_star_naturality(parse_map("(map 2 1 (* (sin x0) x1))")).equal);
}

TEST_CASE("Cartesian maps have inverse fibre maps") {
  PullbackResult pb = pullback_bundle(trivial_bundle(1, 2), parse_map("(map 2 1 (* x0 x1))"));
  DualFibrationMap m{pb.bundle, trivial_bundle(1, 2), pb.cartesian.f, SmoothMap::identity(4)};
  CartesianInverse inv = cartesian_dual_inverse(m);
  CHECK(inv.left.equal);
  CHECK(inv.right.equal);
}

TEST_CASE("cocycle bundles on the circle") {
  AtlasPtr circle = circle_atlas();
  CocycleBundle mobius = moebius_bundle(circle);
  CHECK(verify_bundle_axioms(mobius).passed());
  CocycleBundle star = mobius.star();
  CHECK(star.is_dual());
  CHECK(compare_transitions(star.star(), mobius).equal);

  CocycleBundle broken = mobius.with_transition_matrix(0, parse_map("(map 1 1 3)"));
  BundleReport r = verify_bundle_axioms(broken);
  REQUIRE_FALSE(r.passed());
  CHECK(r.first_failure()->result.worst_point.size() == 1);

  CocycleBundle pulled = pullback_cocycle(mobius, circle_double_cover(circle));
  CHECK(verify_bundle_axioms(pulled).passed());
}
