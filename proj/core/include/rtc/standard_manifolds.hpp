#pragma once

#include "rtc/manifold.hpp"
#include "rtc/optimize.hpp"

namespace rtc {

/// R^n with the single unbounded chart "R".
AtlasPtr euclidean_atlas(std::size_t n);

/// The circle in turns (angle / 2pi): chart A = (0,1), chart B = (-1/2,1/2).
AtlasPtr circle_atlas();

/// S^2 by stereographic charts on (-2,2)^2: "north" projects from the south
/// pole, "south" is w = u/|u|^2.
AtlasPtr sphere_atlas();

/// Charts are products of charts, named "<a>x<b>"; transitions are products of
/// transitions, with the identity on a factor whose chart does not change.
AtlasPtr product_atlas(const std::string& name, const Atlas& a, const Atlas& b);

/// circle x circle, four charts.
AtlasPtr torus_atlas();

/// theta -> 2 theta.
ManifoldMap circle_double_cover(const AtlasPtr& circle);

/// theta -> theta + 1/8 turn.
ManifoldMap circle_rotation(const AtlasPtr& circle);
/// theta -> theta + turns for 0 < turns < 1, one representative per chart pair and wrap.
ManifoldMap circle_rotation_by(const AtlasPtr& circle, const Rational& turns);

/// The 1-form d theta (component 1 in both charts).
CovectorField dtheta_field(const AtlasPtr& circle);

/// Height z on S^2 as a map to R.
ManifoldMap sphere_height(const AtlasPtr& sphere, const AtlasPtr& line);

/// S^2 -> R^3, the inverse stereographic projections.
ManifoldMap sphere_embedding(const AtlasPtr& sphere, const AtlasPtr& space);

/// x -> -x, exchanging the two charts.
ManifoldMap sphere_antipodal(const AtlasPtr& sphere);

/// x -> 0 on R^n.
ManifoldMap constant_map(const AtlasPtr& euclidean);

/// Inclusion of the open unit box into R^n.
ManifoldMap box_inclusion(std::size_t n);

struct SphereDescentDemo {
  ManifoldPoint start;
  DescentResult descent;
  double distance = 0.0;  // to the south pole at the end
};

/// Height descent on S^2 with the chart-wise identity metric, starting 0.1 rad
/// from the north pole and stopping within `target` of the south pole.
SphereDescentDemo sphere_descent_demo(double step = 0.1, std::size_t max_iters = 500, double target = 1e-6);

/// Chord distance in R^3 between a sphere point and (0,0,-1).
double distance_to_south_pole(const ManifoldPoint& p);

}  // namespace rtc
