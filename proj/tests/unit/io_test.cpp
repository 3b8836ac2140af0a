#include "rtc/errors.hpp"
#include "rtc/io.hpp"
#include "rtc/map_dsl.hpp"

#include <doctest.h>

#include <string>

using namespace rtc;

namespace {

std::filesystem::path data(const std::string& rel) { return std::filesystem::path(RTC_DATA_DIR) / rel; }

}  // namespace

TEST_CASE("valid atlases load") {
  AtlasPtr circle = load_atlas(data("atlases/circle.json"));
  CHECK(circle->name() == "circle");
  CHECK(circle->dim() == 1);
  CHECK(circle->charts().size() == 2);
  CHECK(load_atlas(data("atlases/torus.json"))->transitions().size() == 32);
  CHECK(load_atlas(data("atlases/R2.json"))->chart("R").box.bounds[0].second == std::numeric_limits<double>::infinity());
}

TEST_CASE("a non-invertible transition names the cocycle check") {
  try {
    load_atlas(data("invalid/collapsed_circle.json"));
    FAIL("expected an invariant violation");
  } catch (const InvariantViolation& e) {
    CHECK(e.invariant() == "cocycle:invertible-transition");
    CHECK(std::string(e.what()).find("collapsed_circle.json") != std::string::npos);
  }
}

TEST_CASE("wrong arity headers are dimension mismatches") {
  CHECK_THROWS_AS(load_map_file(data("invalid/bad_arity.map")), DimensionMismatch);
  CHECK_THROWS_AS(load_manifold_map(data("invalid/bad_arity_map.json")), DimensionMismatch);
}

TEST_CASE("malformed JSON reports a position") {
  try {
    load_atlas(data("invalid/malformed.json"));
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("missing files are I/O errors") { CHECK_THROWS_AS(load_atlas(data("nope.json")), IoError); }

TEST_CASE("manifold maps, fields, metrics and bundles load") {
  ManifoldMap cover = load_manifold_map(data("maps/double_cover.json"));
  CHECK(cover.name() == "double-cover");
  CHECK(cover.reps().size() == 6);
  CovectorField dtheta = load_covector_field(data("fields/dtheta.json"));
  CHECK(dtheta.patches().size() == 2);
  MetricField g = load_metric(data("fields/sphere_euclidean_metric.json"));
  CHECK(g.has_chart("north"));
  CocycleBundle mobius = load_cocycle_bundle(data("bundles/mobius.json"));
  CHECK(mobius.fibre_dim() == 1);
}

TEST_CASE("incompatible covector components are rejected") {
  try {
    load_covector_field(data("invalid/bad_field.json"));
    FAIL("expected an invariant violation");
  } catch (const InvariantViolation& e) {
    CHECK(e.invariant() == "overlap-compatibility");
  }
}
