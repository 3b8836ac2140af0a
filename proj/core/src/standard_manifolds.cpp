#include "rtc/standard_manifolds.hpp"

#include "rtc/errors.hpp"
#include "rtc/map_dsl.hpp"

#include <cmath>

namespace rtc {

namespace {

Box box(std::initializer_list<std::pair<double, double>> bounds) { return Box{std::vector(bounds)}; }

constexpr const char* kSqNorm = "(+ (* x0 x0) (* x1 x1))";

std::string sphere_text(const std::string& pattern) {
  std::string out;
  for (char c : pattern) {
    if (c == 'R') {
      out += kSqNorm;
    } else {
      out += c;
    }
  }
  return out;
}

}  // namespace

AtlasPtr euclidean_atlas(std::size_t n) {
  return std::make_shared<const Atlas>("R" + std::to_string(n), n, std::vector<Chart>{Chart{"R", Box::unbounded(n)}},
                                       std::vector<Atlas::TransitionSpec>{});
}

AtlasPtr circle_atlas() {
  std::vector<Chart> charts{{"A", box({{0.0, 1.0}})}, {"B", box({{-0.5, 0.5}})}};
  std::vector<Atlas::TransitionSpec> ts{
      {"A", "B", parse_map("(map 1 1 x0)"), box({{0.0, 0.5}})},
      {"A", "B", parse_map("(map 1 1 (+ x0 -1))"), box({{0.5, 1.0}})},
      {"B", "A", parse_map("(map 1 1 x0)"), box({{0.0, 0.5}})},
      {"B", "A", parse_map("(map 1 1 (+ x0 1))"), box({{-0.5, 0.0}})},
  };
  return std::make_shared<const Atlas>("circle", 1, std::move(charts), std::move(ts));
}

AtlasPtr sphere_atlas() {
  std::vector<Chart> charts{{"north", box({{-2, 2}, {-2, 2}})}, {"south", box({{-2, 2}, {-2, 2}})}};
  SmoothMap inversion = parse_map(sphere_text("(map 2 2 (* x0 (inv R)) (* x1 (inv R)))"));
  std::vector<Box> strips{box({{0.25, 2}, {-2, 2}}), box({{-2, -0.25}, {-2, 2}}), box({{-2, 2}, {0.25, 2}}),
                          box({{-2, 2}, {-2, -0.25}})};
  std::vector<Atlas::TransitionSpec> ts;
  for (const auto& s : strips) ts.push_back({"north", "south", inversion, s});
  for (const auto& s : strips) ts.push_back({"south", "north", inversion, s});
  return std::make_shared<const Atlas>("sphere", 2, std::move(charts), std::move(ts));
}

AtlasPtr product_atlas(const std::string& name, const Atlas& a, const Atlas& b) {
  std::size_t n = a.dim() + b.dim();
  auto concat = [](const Box& x, const Box& y) {
    Box out = x;
    out.bounds.insert(out.bounds.end(), y.bounds.begin(), y.bounds.end());
    return out;
  };
  auto entries = [](const Atlas& atlas, const std::string& from, const std::string& to) {
    std::vector<std::pair<SmoothMap, Box>> out;
    if (from == to) {
      out.emplace_back(SmoothMap::identity(atlas.dim()), Box::unbounded(atlas.dim()));
      return out;
    }
    for (const auto& t : atlas.transitions()) {
      if (t.from == from && t.to == to) out.emplace_back(t.map, t.overlap);
    }
    return out;
  };
  std::vector<Chart> charts;
  for (const auto& ca : a.charts()) {
    for (const auto& cb : b.charts()) charts.push_back(Chart{ca.id + "x" + cb.id, concat(ca.box, cb.box)});
  }
  std::vector<Atlas::TransitionSpec> ts;
  for (const auto& fa : a.charts()) {
    for (const auto& fb : b.charts()) {
      for (const auto& ta : a.charts()) {
        for (const auto& tb : b.charts()) {
          if (fa.id == ta.id && fb.id == tb.id) continue;
          for (const auto& [ma, oa] : entries(a, fa.id, ta.id)) {
            for (const auto& [mb, ob] : entries(b, fb.id, tb.id)) {
              ts.push_back({fa.id + "x" + fb.id, ta.id + "x" + tb.id, product_maps(ma, mb), concat(oa, ob)});
            }
          }
        }
      }
    }
  }
  return std::make_shared<const Atlas>(name, n, std::move(charts), std::move(ts));
}

AtlasPtr torus_atlas() {
  AtlasPtr c = circle_atlas();
  return product_atlas("torus", *c, *c);
}

ManifoldMap circle_double_cover(const AtlasPtr& circle) {
  auto rep = [](const char* from, const char* to, const char* text, double lo, double hi) {
    return LocalRep{from, to, parse_map(text), box({{lo, hi}}), {}, {}};
  };
  std::vector<LocalRep> reps{
      rep("A", "A", "(map 1 1 (* 2 x0))", 0.0, 0.5),
      rep("A", "A", "(map 1 1 (+ (* 2 x0) -1))", 0.5, 1.0),
      rep("A", "B", "(map 1 1 (+ (* 2 x0) -1))", 0.25, 0.75),
      rep("B", "B", "(map 1 1 (* 2 x0))", -0.25, 0.25),
      rep("B", "A", "(map 1 1 (* 2 x0))", 0.0, 0.5),
      rep("B", "A", "(map 1 1 (+ (* 2 x0) 1))", -0.5, 0.0),
  };
  return ManifoldMap("double-cover", circle, circle, std::move(reps));
}

ManifoldMap circle_rotation(const AtlasPtr& circle) {
  auto rep = [](const char* chart, const char* text, double lo, double hi) {
    return LocalRep{chart, chart, parse_map(text), box({{lo, hi}}), {}, {}};
  };
  std::vector<LocalRep> reps{
      rep("A", "(map 1 1 (+ x0 1/8))", 0.0, 0.875),
      rep("A", "(map 1 1 (+ x0 -7/8))", 0.875, 1.0),
      rep("B", "(map 1 1 (+ x0 1/8))", -0.5, 0.375),
      rep("B", "(map 1 1 (+ x0 -7/8))", 0.375, 0.5),
  };
  return ManifoldMap("rotation", circle, circle, std::move(reps));
}

ManifoldMap circle_rotation_by(const AtlasPtr& circle, const Rational& turns) {
  if (!(turns > 0 && turns < 1)) throw DomainError("circle_rotation_by: turns must lie in (0, 1)");
  std::vector<LocalRep> reps;
  for (const auto& src : circle->charts()) {
    for (const auto& dst : circle->charts()) {
      for (long wrap : {-1L, 0L, 1L}) {
        Rational shift = turns + Rational(wrap);
        SmoothMap m(1, {Expr::variable(0) + Expr::constant(shift)});
        reps.push_back(LocalRep{src.id, dst.id, std::move(m), src.box, {}, {}});
      }
    }
  }
  return ManifoldMap("rotation", circle, circle, std::move(reps));
}

CovectorField dtheta_field(const AtlasPtr& circle) {
  SmoothMap one = parse_map("(map 1 1 1)");
  return CovectorField::from_components(circle, {{"A", one}, {"B", one}});
}

ManifoldMap sphere_height(const AtlasPtr& sphere, const AtlasPtr& line) {
  Box all = Box::unbounded(2);
  std::vector<LocalRep> reps{
      {"north", "R", parse_map(sphere_text("(map 2 1 (* (+ 1 (neg R)) (inv (+ 1 R))))")), all, {}, {}},
      {"south", "R", parse_map(sphere_text("(map 2 1 (* (+ R -1) (inv (+ 1 R))))")), all, {}, {}},
  };
  return ManifoldMap("height", sphere, line, std::move(reps));
}

ManifoldMap sphere_embedding(const AtlasPtr& sphere, const AtlasPtr& space) {
  Box all = Box::unbounded(2);
  std::vector<LocalRep> reps{
      {"north", "R",
       parse_map(sphere_text("(map 2 3 (* 2 x0 (inv (+ 1 R))) (* 2 x1 (inv (+ 1 R))) (* (+ 1 (neg R)) (inv (+ 1 R))))")),
       all, {}, {}},
      {"south", "R",
       parse_map(sphere_text("(map 2 3 (* 2 x0 (inv (+ 1 R))) (* 2 x1 (inv (+ 1 R))) (* (+ R -1) (inv (+ 1 R))))")),
       all, {}, {}},
  };
  return ManifoldMap("embedding", sphere, space, std::move(reps));
}

ManifoldMap sphere_antipodal(const AtlasPtr& sphere) {
  Box all = Box::unbounded(2);
  SmoothMap neg = parse_map("(map 2 2 (neg x0) (neg x1))");
  return ManifoldMap("antipodal", sphere, sphere,
                     {LocalRep{"north", "south", neg, all, {}, {}}, LocalRep{"south", "north", neg, all, {}, {}}});
}

ManifoldMap constant_map(const AtlasPtr& euclidean) {
  std::size_t n = euclidean->dim();
  return ManifoldMap("constant", euclidean, euclidean,
                     {LocalRep{"R", "R", SmoothMap::zero(n, n), Box::unbounded(n), {}, {}}});
}

ManifoldMap box_inclusion(std::size_t n) {
  Box unit{std::vector<std::pair<double, double>>(n, {0.0, 1.0})};
  auto source = std::make_shared<const Atlas>("unit-box" + std::to_string(n), n, std::vector<Chart>{Chart{"U", unit}},
                                              std::vector<Atlas::TransitionSpec>{});
  return ManifoldMap("inclusion", source, euclidean_atlas(n),
                     {LocalRep{"U", "R", SmoothMap::identity(n), Box::unbounded(n), {}, {}}});
}

double distance_to_south_pole(const ManifoldPoint& p) {
  if (p.coords.size() != 2) throw DimensionMismatch("sphere points have two coordinates");
  double r = p.coords[0] * p.coords[0] + p.coords[1] * p.coords[1];
  double x = 2 * p.coords[0] / (1 + r);
  double y = 2 * p.coords[1] / (1 + r);
  double z = p.chart == "north" ? (1 - r) / (1 + r) : (r - 1) / (1 + r);
  return std::sqrt(x * x + y * y + (z + 1) * (z + 1));
}

SphereDescentDemo sphere_descent_demo(double step, std::size_t max_iters, double target) {
  AtlasPtr sphere = sphere_atlas();
  ManifoldMap h = sphere_height(sphere, euclidean_atlas(1));
  MetricField g = MetricField::euclidean(sphere);
  // north chart radius tan(theta / 2) puts the start theta = 0.1 from the pole
  ManifoldPoint start{"north", {std::tan(0.05), 0.0}};
  StepOptions options;
  options.step = step;
  SphereDescentDemo demo{start, riemannian_descent(h, g, start, max_iters, options,
                                                   [&](const ManifoldPoint& p) { return distance_to_south_pole(p) < target; }),
                         0.0};
  demo.distance = distance_to_south_pole(demo.descent.final_point);
  return demo;
}

}  // namespace rtc
