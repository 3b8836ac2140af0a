#include "rtc/suites.hpp"

#include "rtc/algebra.hpp"
#include "rtc/bundle.hpp"
#include "rtc/cocycle.hpp"
#include "rtc/errors.hpp"
#include "rtc/forward.hpp"
#include "rtc/generators.hpp"
#include "rtc/map_dsl.hpp"
#include "rtc/reverse.hpp"
#include "rtc/standard_manifolds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

namespace rtc {

namespace {

std::string format_error(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

class Builder {
 public:
  Builder(const std::string& suite, const SuiteOptions& options) : options_(options) {
    report_.suite = suite;
    report_.seed = options.seed;
  }

  std::uint64_t seed() const { return options_.seed; }
  double tol(double fallback) const { return options_.tol.value_or(fallback); }

  CompareOptions compare(double fallback, std::size_t samples = 64) const {
    CompareOptions c;
    c.samples = samples;
    c.tol = tol(fallback);
    c.seed = options_.seed;
    return c;
  }

  void add(const std::string& id, const std::string& anchor, double tolerance, const Comparison& c,
           const std::string& label) {
    LawResult& r = law(id, anchor, tolerance);
    r.points += c.points;
    r.exact = r.exact && c.exact;
    if (!(c.max_error <= r.max_error)) r.max_error = c.max_error;
    if (!c.equal && r.passed) {
      r.passed = false;
      r.witness = c.worst_point;
      r.detail = label + (c.detail.empty() ? "" : ": " + c.detail);
    }
  }

  /// Sampled scalar error against a tolerance.
  void measure(const std::string& id, const std::string& anchor, double tolerance, double error,
               const std::vector<double>& point, const std::string& label) {
    Comparison c;
    c.equal = error <= tolerance;
    c.exact = false;
    c.max_error = error;
    c.points = 1;
    c.worst_point = point;
    if (!c.equal) c.detail = "error " + format_error(error);
    add(id, anchor, tolerance, c, label);
  }

  void flag(const std::string& id, const std::string& anchor, bool ok, const std::string& label,
            const std::string& detail = {}) {
    Comparison c;
    c.equal = ok;
    c.exact = true;
    c.points = 1;
    c.detail = detail;
    add(id, anchor, 0.0, c, label);
  }

  /// Runs body; an exception fails `id` with the message.
  void guard(const std::string& id, const std::string& anchor, const std::string& label,
             const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      flag(id, anchor, false, label, e.what());
    }
  }

  CheckReport finish() {
    for (auto& [id, r] : laws_) {
      if (r.exact) r.tolerance = 0.0;
      report_.laws.push_back(std::move(r));
    }
    laws_.clear();
    report_.finalize();
    return std::move(report_);
  }

 private:
  LawResult& law(const std::string& id, const std::string& anchor, double tolerance) {
    auto [it, inserted] = laws_.try_emplace(id);
    if (inserted) {
      it->second.id = id;
      it->second.anchor = anchor;
      it->second.passed = true;
      it->second.exact = true;
      it->second.tolerance = tolerance;
    }
    return it->second;
  }

  SuiteOptions options_;
  CheckReport report_;
  std::map<std::string, LawResult> laws_;
};

std::vector<double> concat(std::initializer_list<std::span<const double>> parts) {
  std::vector<double> out;
  for (auto p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

double max_mixed(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = mixed_error(a[i], b[i]);
    if (!(d <= e)) e = d;
  }
  return e;
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo = -2.0, double hi = 2.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

struct NamedMap {
  std::string id;
  SmoothMap map;
};

/// The generator suite followed by every composable pairwise composite.
std::vector<NamedMap> suite_with_composites() {
  const auto& suite = generator_suite();
  std::vector<NamedMap> out;
  for (const auto& g : suite) out.push_back({g.id, g.map});
  for (auto [i, j] : composable_pairs(suite)) {
    out.push_back({suite[i].id + ";" + suite[j].id, compose_maps(suite[i].map, suite[j].map)});
  }
  return out;
}

SmoothMap proj(std::size_t n, std::size_t offset, std::size_t count) { return SmoothMap::projection(n, offset, count); }

// ---------------------------------------------------------------------------

void smooth_suite(Builder& b) {
  const auto& suite = generator_suite();
  const double tol = 1e-12;
  CompareOptions opts = b.compare(tol, 100);

  for (const auto& g : suite) {
    std::size_t n = g.map.dom_dim();
    std::size_t m = g.map.cod_dim();
    b.add("smooth:unit-left", "identity is a left unit for composition", tol,
          compare_maps(compose_maps(SmoothMap::identity(n), g.map), g.map, opts), g.id);
    b.add("smooth:unit-right", "identity is a right unit for composition", tol,
          compare_maps(compose_maps(g.map, SmoothMap::identity(m)), g.map, opts), g.id);
    b.flag("smooth:dsl-round-trip", "printed maps parse back to the same map",
           structurally_equal(parse_map(print_map(g.map)), g.map), g.id);
  }

  for (auto [i, j] : composable_pairs(suite)) {
    for (std::size_t k = 0; k < suite.size(); ++k) {
      if (suite[j].map.cod_dim() != suite[k].map.dom_dim()) continue;
      const auto& f = suite[i].map;
      const auto& g = suite[j].map;
      const auto& h = suite[k].map;
      // triple composites of exp overflow on the default box
      CompareOptions small = opts;
      small.sampler = box_sampler(f.dom_dim(), -1.0, 1.0);
      b.add("smooth:compose-assoc", "composition is associative", tol,
            compare_maps(compose_maps(compose_maps(f, g), h), compose_maps(f, compose_maps(g, h)), small),
            suite[i].id + ";" + suite[j].id + ";" + suite[k].id);
    }
  }

  const double fd_tol = 1e-6;
  for (const auto& g : suite) {
    std::size_t n = g.map.dom_dim();
    auto points = sample_points(n, 20, b.seed());
    for (std::size_t i = 0; i < n; ++i) {
      SmoothMap d = partial_derivative(g.map, i);
      for (const auto& x : points) {
        b.measure("smooth:partials-central-difference", "partial derivatives agree with central differences",
                  b.tol(fd_tol), max_mixed(d.eval(x), central_difference(g.map, x, i)), x,
                  g.id + " d/dx" + std::to_string(i));
      }
      for (std::size_t j = i + 1; j < n; ++j) {
        b.add("smooth:clairaut", "mixed partials commute", tol,
              compare_maps(partial_derivative(d, j), partial_derivative(partial_derivative(g.map, j), i), opts),
              g.id + " x" + std::to_string(i) + ",x" + std::to_string(j));
      }
    }
  }

  SmoothMap mul_add = parse_map("(map 2 2 (* x0 x1) (+ x0 x1))");
  std::vector<double> at{2.0, 3.0};
  b.flag("smooth:example-eval", "evaluation of (x0 x1, x0 + x1) at (2, 3)",
         mul_add.eval(at) == std::vector<double>{6.0, 5.0}, "mul-add");
}

// ---------------------------------------------------------------------------

void forward_suite(Builder& b) {
  const auto& suite = generator_suite();
  const double tol = 1e-9;
  CompareOptions opts = b.compare(tol, 64);

  for (auto [i, j] : composable_pairs(suite)) {
    const auto& f = suite[i].map;
    const auto& g = suite[j].map;
    b.add("forward:functoriality", "T(F G) = T(F) T(G)", tol,
          compare_maps(tangent_functor_map(compose_maps(f, g)),
                       compose_maps(tangent_functor_map(f), tangent_functor_map(g)), opts),
          suite[i].id + ";" + suite[j].id);
  }
  for (const auto& g : suite) {
    std::size_t n = g.map.dom_dim();
    b.add("forward:functoriality-identity", "T(1) = 1", tol,
          compare_maps(tangent_functor_map(SmoothMap::identity(n)), SmoothMap::identity(2 * n), opts),
          "R^" + std::to_string(n));
  }

  for (const auto& [id, f] : suite_with_composites()) {
    auto sn = tangent_structure_transformations(f.dom_dim());
    auto sm = tangent_structure_transformations(f.cod_dim());
    SmoothMap tf = tangent_functor_map(f);
    SmoothMap t2f = tangent2_map(f);
    b.add("forward:natural-p", "projection is natural", tol,
          compare_maps(compose_maps(tf, sm.p), compose_maps(sn.p, f), opts), id);
    b.add("forward:natural-z", "zero is natural", tol, compare_maps(compose_maps(sn.z, tf), compose_maps(f, sm.z), opts),
          id);
    b.add("forward:natural-s", "sum is natural", tol,
          compare_maps(compose_maps(tangent_pullback_map(f), sm.s), compose_maps(sn.s, tf), opts), id);
    b.add("forward:natural-lift", "vertical lift is natural", tol,
          compare_maps(compose_maps(sn.lift, t2f), compose_maps(tf, sm.lift), opts), id);
    b.add("forward:natural-flip", "canonical flip is natural", tol,
          compare_maps(compose_maps(sn.flip, t2f), compose_maps(t2f, sm.flip), opts), id);
  }

  for (std::size_t n = 1; n <= 3; ++n) {
    auto s = tangent_structure_transformations(n);
    std::string label = "R^" + std::to_string(n);
    b.add("forward:lift-flip", "lift followed by flip is the lift", tol,
          compare_maps(compose_maps(s.lift, s.flip), s.lift, opts), label);
    b.add("forward:flip-involution", "flip is an involution", tol,
          compare_maps(compose_maps(s.flip, s.flip), SmoothMap::identity(4 * n), opts), label);
    b.add("forward:zero-section", "zero is a section of the projection", tol,
          compare_maps(compose_maps(s.z, s.p), SmoothMap::identity(n), opts), label);
    for (const auto& check : verify_bundle_axioms(tangent_bundle(n), opts).checks) {
      b.add("forward:bundle:" + check.name, "tangent bundle is an additive differential bundle", tol, check.result,
            "T(" + label + ")");
    }
  }
  for (std::size_t n = 1; n <= 2; ++n) {
    for (const auto& check : verify_bundle_axioms(tangent_of_bundle(tangent_bundle(n)), opts).checks) {
      b.add("forward:bundle:" + check.name, "tangent bundle is an additive differential bundle", tol, check.result,
            "T(T(R^" + std::to_string(n) + "))");
    }
  }

  SmoothMap product = parse_map("(map 2 1 (* x0 x1))");
  std::vector<double> at{2.0, 3.0, 1.0, 0.0};
  b.flag("forward:example-tangent", "T(x0 x1) at (2, 3) along (1, 0)",
         tangent_functor_map(product).eval(at) == std::vector<double>{6.0, 3.0}, "product");
}

// ---------------------------------------------------------------------------

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void reverse_suite(Builder& b) {
  const auto& suite = generator_suite();
  const double adjoint_tol = 1e-10;
  const double chain_tol = 1e-9;
  const double crdc_tol = 1e-10;

  for (const auto& [id, f] : suite_with_composites()) {
    std::size_t n = f.dom_dim();
    std::size_t m = f.cod_dim();
    SmoothMap d = d_combinator(f);
    SmoothMap r = r_combinator(f);
    CompareOptions opts = b.compare(adjoint_tol, 64);
    opts.sampler = box_sampler(2 * n + m);
    auto lhs = [&](const std::vector<double>& p) {
      std::span<const double> all(p);
      auto dv = d.eval(all.subspan(0, 2 * n));
      return std::vector<double>{dot(dv, all.subspan(2 * n, m))};
    };
    auto rhs = [&](const std::vector<double>& p) {
      std::span<const double> all(p);
      auto rw = r.eval(concat({all.subspan(0, n), all.subspan(2 * n, m)}));
      return std::vector<double>{dot(all.subspan(n, n), rw)};
    };
    b.add("reverse:adjoint", "<D[F](x, v), w> = <v, R[F](x, w)>", adjoint_tol, compare_functions(lhs, rhs, opts), id);

    LinearInSecond g = LinearInSecond::trusted(d, n);
    b.add("reverse:dagger-involution", "the dagger is involutive", crdc_tol,
          compare_maps(linear_dagger(linear_dagger(g)).carrier(), g.carrier(), b.compare(crdc_tol, 64)), id);
    b.add("reverse:crdc-from-involution", "R[F] is the dagger of D[F]", crdc_tol,
          compare_maps(crdc_from_involution(f), r, b.compare(crdc_tol, 64)), id);
  }

  for (auto [i, j] : composable_pairs(suite)) {
    const auto& f = suite[i].map;
    const auto& g = suite[j].map;
    std::string label = suite[i].id + ";" + suite[j].id;
    b.add("reverse:chain-rule", "R[F G](x, z) = R[F](x, R[G](F(x), z))", chain_tol,
          compare_dual_maps(dual_compose(reverse_tangent_dual(f), reverse_tangent_dual(g)),
                            reverse_tangent_dual(compose_maps(f, g)), b.compare(chain_tol, 64)),
          label);

    // g = D[F] over x, h = D[G] at F(x): both linear in their second block over the context x
    std::size_t n = f.dom_dim();
    std::size_t m = f.cod_dim();
    LinearInSecond lg = LinearInSecond::trusted(d_combinator(f), n);
    SmoothMap h = compose_maps(pair_maps(compose_maps(proj(n + m, 0, n), f), proj(n + m, n, m)), d_combinator(g));
    LinearInSecond lh = LinearInSecond::trusted(h, n);
    b.add("reverse:dagger-contravariant", "(g; h) dagger = h dagger; g dagger", chain_tol,
          compare_maps(linear_dagger(fibre_compose(lg, lh)).carrier(),
                       fibre_compose(linear_dagger(lh), linear_dagger(lg)).carrier(), b.compare(chain_tol, 64)),
          label);
  }

  const char* anchor = "linearity in the second argument";
  b.flag("reverse:linear-in-second", anchor, is_linear_in_second(parse_map("(map 2 1 (* x0 x1))"), 1).linear, "c a");
  b.flag("reverse:linear-in-second", anchor,
         is_linear_in_second(parse_map("(map 2 1 (* (sin x0) x1))"), 1).linear, "sin(c) a");
  b.flag("reverse:linear-in-second", anchor, !is_linear_in_second(parse_map("(map 2 1 (* x1 x1))"), 1).linear,
         "a^2 rejected");
  bool threw = false;
  try {
    LinearInSecond(parse_map("(map 2 1 (* x1 x1))"), 1);
  } catch (const NotLinear&) {
    threw = true;
  }
  b.flag("reverse:linear-in-second", anchor, threw, "a^2 raises NotLinear");

  LinearInSecond ex(parse_map("(map 3 1 (+ (* x0 x1) x2))"), 1);
  b.add("reverse:example-dagger", "dagger of c a0 + a1 is (c b, b)", 0.0,
        compare_maps(linear_dagger(ex).carrier(), parse_map("(map 2 2 (* x0 x1) x1)"), b.compare(1e-12)),
        "c a0 + a1");

  SmoothMap mul_add = parse_map("(map 2 2 (* x0 x1) (+ x0 x1))");
  std::vector<double> at{2.0, 3.0, 1.0, 1.0};
  b.flag("reverse:example-vjp", "R[(x0 x1, x0 + x1)] at (2, 3) against (1, 1)",
         r_combinator(mul_add).eval(at) == std::vector<double>{4.0, 3.0}, "mul-add");
}

// ---------------------------------------------------------------------------

void bundles_suite(Builder& b) {
  const auto& suite = generator_suite();
  const double tol = 1e-9;
  CompareOptions opts = b.compare(tol, 64);

  for (const auto& g : suite) {
    DualFibrationMap m = reverse_tangent_dual(g.map);
    b.add("bundles:dual-unit-left", "dual identity is a left unit", tol,
          compare_dual_maps(dual_compose(dual_identity(m.source), m), m, opts), g.id);
    b.add("bundles:dual-unit-right", "dual identity is a right unit", tol,
          compare_dual_maps(dual_compose(m, dual_identity(m.target)), m, opts), g.id);
    for (const auto& check : verify_dual_map(m, opts).checks) {
      b.add("bundles:dual-map:" + check.name, "reverse tangent maps are dual fibration maps", tol, check.result, g.id);
    }
    for (const auto& check : verify_dual_map(tangent_of_dual(m), opts).checks) {
      b.add("bundles:tangent-dual-map:" + check.name, "tangents of dual maps are dual maps", tol, check.result, g.id);
    }
  }
  auto pairs = composable_pairs(suite);
  for (auto [i, j] : pairs) {
    for (std::size_t k = 0; k < suite.size(); ++k) {
      if (suite[j].map.cod_dim() != suite[k].map.dom_dim()) continue;
      auto mi = reverse_tangent_dual(suite[i].map);
      auto mj = reverse_tangent_dual(suite[j].map);
      auto mk = reverse_tangent_dual(suite[k].map);
      auto lhs = dual_compose(dual_compose(mi, mj), mk);
      auto rhs = dual_compose(mi, dual_compose(mj, mk));
      // base and backward maps have different domains, so compare them separately on a small box
      CompareOptions base = opts;
      base.sampler = box_sampler(lhs.f.dom_dim(), -1.0, 1.0);
      CompareOptions back = opts;
      back.sampler = box_sampler(lhs.g.dom_dim(), -1.0, 1.0);
      std::string label = suite[i].id + ";" + suite[j].id + ";" + suite[k].id;
      b.add("bundles:dual-assoc", "dual composition is associative", tol, compare_maps(lhs.f, rhs.f, base),
            label + " base");
      b.add("bundles:dual-assoc", "dual composition is associative", tol, compare_maps(lhs.g, rhs.g, back),
            label + " backward");
    }
  }

  for (const auto& g : suite) {
    const SmoothMap& f = g.map;
    std::size_t n = f.dom_dim();
    std::size_t m = f.cod_dim();
    for (const DifferentialBundle& e : {tangent_bundle(m), trivial_bundle(m, 2)}) {
      std::string label = g.id + " over " + e.name;
      b.guard("bundles:pullback:axioms", "pullbacks of differential bundles are differential bundles", label, [&] {
        PullbackResult pb = pullback_bundle(e, f);
        for (const auto& check : verify_bundle_axioms(pb.bundle, opts).checks) {
          b.add("bundles:pullback:axioms", "pullbacks of differential bundles are differential bundles", tol,
                check.result, label + " " + check.name);
        }
        for (const auto& check : verify_morphism(pb.cartesian, opts).checks) {
          b.add("bundles:pullback:cartesian-linear", "the Cartesian projection is linear", tol, check.result,
                label + " " + check.name);
        }

        // a linear morphism over u f from a trivial bundle, scaling the fibre by 2
        std::size_t x = e.fibre_dim;
        DifferentialBundle src = trivial_bundle(n, x);
        std::vector<Expr> scaled;
        for (std::size_t c = 0; c < x; ++c) scaled.push_back(Expr::constant(2) * Expr::variable(n + c));
        SmoothMap k = compose_maps(pair_maps(compose_maps(proj(n + x, 0, n), f), SmoothMap(n + x, std::move(scaled))),
                                   e.unsplit);
        LinearBundleMorphism fac = factor_through_pullback(pb, src, SmoothMap::identity(n), k);
        b.add("bundles:pullback:factorization", "morphisms over u f factor through the pullback", tol,
              compare_maps(compose_maps(fac.g, pb.cartesian.g), k, opts), label);
        b.add("bundles:pullback:factorization-over-base", "the factorization lies over u", tol,
              compare_maps(compose_maps(fac.g, pb.bundle.q), src.q, opts), label);
        LinearBundleMorphism self = factor_through_pullback(pb, pb.bundle, SmoothMap::identity(n), pb.cartesian.g);
        b.add("bundles:pullback:factorization-unique", "factoring the projection itself gives the identity", tol,
              compare_maps(self.g, SmoothMap::identity(pb.bundle.total_dim()), opts), label);

        // the Cartesian square read in the dual fibration, directly and through the involution
        DualFibrationMap square{pb.bundle, e, f, SmoothMap::identity(n + x)};
        CartesianInverse inv = cartesian_dual_inverse(square, opts);
        b.add("bundles:cartesian-inverse", "Cartesian dual maps have fibrewise inverses", tol, inv.left,
              label + " left");
        b.add("bundles:cartesian-inverse", "Cartesian dual maps have fibrewise inverses", tol, inv.right,
              label + " right");
        SystemOfBundles system;
        system.add(e);
        system.add(pb.bundle);
        CartesianInverse star = cartesian_dual_inverse(involution_star(system, pb.cartesian), opts);
        b.add("bundles:cartesian-inverse", "Cartesian dual maps have fibrewise inverses", tol, star.left,
              label + " star left");
        b.add("bundles:cartesian-inverse", "Cartesian dual maps have fibrewise inverses", tol, star.right,
              label + " star right");
      });
    }

    SystemOfBundles system;
    LinearBundleMorphism lm{tangent_bundle(n), tangent_bundle(m), f, tangent_functor_map(f)};
    LinearBundleMorphism back = involution_star(system, involution_star(system, lm));
    b.add("bundles:double-dual", "the involution is involutive up to iota", tol, compare_maps(back.f, lm.f, opts),
          g.id + " base");
    b.add("bundles:double-dual", "the involution is involutive up to iota", tol,
          compare_maps(compose_maps(back.g, double_dual_unit(lm.target).g),
                       compose_maps(double_dual_unit(lm.source).g, lm.g), opts),
          g.id + " total");
    b.add("bundles:iota-natural", "iota is natural", tol,
          compare_maps(compose_maps(double_dual_unit(lm.source).g, lm.g),
                       compose_maps(lm.g, double_dual_unit(lm.target).g), opts),
          g.id);
    DualFibrationMap rt = reverse_tangent_dual(f);
    b.add("bundles:double-dual", "the involution is involutive up to iota", tol,
          compare_dual_maps(involution_star(system, involution_star(system, rt)), rt, opts), g.id + " dual");
    b.add("bundles:cstar-natural", "c* is natural", tol, flip_star_naturality(f, opts), g.id);
  }

  bool named = false;
  try {
    SystemOfBundles system;
    involution_star(system, trivial_bundle(2, 3));
  } catch (const InvariantViolation& e) {
    named = e.invariant() == "bundle-in-system";
  }
  b.flag("bundles:involution-domain", "the involution is defined on the system only", named, "unregistered bundle");

  for (std::size_t n = 1; n <= 3; ++n) {
    FlipStar fs = canonical_flip_star(n, opts);
    std::string label = "R^" + std::to_string(n);
    b.add("bundles:cstar-triangle", "c* composed with p* is T(p*)", 0.0, fs.triangle, label);
    b.add("bundles:cstar-round-trip", "c* is invertible", 0.0, fs.round_trip, label);
  }

  // chart-glued bundles
  AtlasPtr circle = circle_atlas();
  AtlasPtr sphere = sphere_atlas();
  auto add_report = [&](const std::string& id, const std::string& anchor, const BundleReport& r,
                        const std::string& label) {
    for (const auto& check : r.checks) b.add(id, anchor, tol, check.result, label + " " + check.name);
  };
  b.guard("bundles:cocycle:axioms", "transition cocycles define vector bundles", "standard bundles", [&] {
    CocycleBundle moebius = moebius_bundle(circle);
    CocycleBundle tangent = tangent_cocycle(sphere);
    const char* anchor = "transition cocycles define vector bundles";
    add_report("bundles:cocycle:axioms", anchor, verify_bundle_axioms(moebius, 32, b.seed(), tol), "moebius");
    add_report("bundles:cocycle:axioms", anchor, verify_bundle_axioms(tangent, 32, b.seed(), tol), "T S^2");
    add_report("bundles:cocycle:axioms", anchor, verify_bundle_axioms(tangent.star(), 32, b.seed(), tol), "T* S^2");
    add_report("bundles:cocycle:axioms", anchor, verify_bundle_axioms(tangent_cocycle(torus_atlas()), 32, b.seed(), tol),
               "T torus");
    add_report("bundles:cocycle:pullback", "pullbacks of cocycle bundles are bundles",
               verify_bundle_axioms(pullback_cocycle(moebius, circle_double_cover(circle)), 32, b.seed(), tol),
               "moebius along the double cover");
    add_report("bundles:cocycle:pullback", "pullbacks of cocycle bundles are bundles",
               verify_bundle_axioms(pullback_cocycle(tangent, sphere_antipodal(sphere)), 32, b.seed(), tol),
               "T S^2 along the antipodal map");

    CocycleBundle broken = moebius.with_transition_matrix(1, parse_map("(map 1 1 1/2)"));
    b.flag("bundles:cocycle:detects-corruption", "a broken cocycle is reported",
           !verify_bundle_axioms(broken, 32, b.seed(), tol).passed(), "moebius with a halved transition");

    b.add("bundles:cocycle:double-dual", "the double dual has the original transitions", tol,
          compare_transitions(tangent.star().star(), tangent, 32, b.seed()), "T S^2");
    b.add("bundles:cocycle:double-dual", "the double dual has the original transitions", tol,
          compare_transitions(moebius.star().star(), moebius, 32, b.seed()), "moebius");

    SystemOfBundles system;
    bool rejected = false;
    try {
      involution_star(system, moebius);
    } catch (const InvariantViolation& e) {
      rejected = e.invariant() == "bundle-in-system";
    }
    b.flag("bundles:involution-domain", "the involution is defined on the system only", rejected, "unregistered moebius");
    register_bundle(system, moebius);
    b.add("bundles:cocycle:star", "the star of a registered bundle inverts transposed transitions", tol,
          compare_transitions(involution_star(system, moebius), moebius.star(), 32, b.seed()), "moebius");
  });
}

// ---------------------------------------------------------------------------

void atlas_laws(Builder& b, const Atlas& atlas) {
  for (const auto& check : check_atlas(atlas, 64, b.seed(), b.tol(1e-9))) {
    bool det = check.name == "cocycle:invertible-transition";
    Comparison c;
    c.equal = check.passed;
    c.exact = false;
    c.max_error = det ? 0.0 : check.worst;
    c.points = check.points;
    if (check.witness) c.worst_point = check.witness->coords;
    c.detail = check.detail;
    if (det) c.detail = (check.passed ? "" : check.detail + "; ") + "min |det J| = " + format_error(check.worst);
    b.add("manifold:atlas:" + atlas.name() + ":" + check.name, "atlas transitions satisfy the cocycle conditions",
          b.tol(1e-9), c, atlas.name());
  }
}

void round_trips(Builder& b, const Atlas& atlas, std::size_t samples, double tol) {
  std::mt19937_64 rng(b.seed());
  std::size_t n = atlas.dim();
  const std::string id = "manifold:chart-round-trip";
  const std::string anchor = "chart changes are invertible on points, vectors and covectors";
  for (std::size_t s = 0; s < samples; ++s) {
    ManifoldPoint p = sample_point(atlas, rng);
    for (const auto& other : atlas.charts_containing(p)) {
      std::vector<double> v = random_vector(rng, n);
      std::vector<double> w = random_vector(rng, n);
      ManifoldPoint q = change_chart(atlas, change_chart(atlas, p, other), p.chart);
      TangentVec tv = change_chart(atlas, change_chart(atlas, TangentVec{p, v}, other), p.chart);
      Covector cv = change_chart(atlas, change_chart(atlas, Covector{p, w}, other), p.chart);
      double err = std::max({max_mixed(q.coords, p.coords), max_mixed(tv.components, v), max_mixed(cv.components, w)});
      b.measure(id, anchor, tol, err, p.coords, atlas.name() + " " + p.chart + "->" + other);
      b.flag("manifold:chart-change-identity", "changing to the current chart is the identity",
             change_chart(atlas, TangentVec{p, v}, p.chart).components == v, atlas.name());
    }
  }
}

/// T(f) through every representative at p, compared in the first result's chart.
void tangent_independence(Builder& b, const ManifoldMap& f, std::size_t samples, double tol) {
  std::mt19937_64 rng(b.seed());
  std::size_t n = f.source().dim();
  std::size_t m = f.target().dim();
  for (std::size_t s = 0; s < samples; ++s) {
    ManifoldPoint p = sample_point(f.source(), rng);
    std::vector<double> v = random_vector(rng, n);
    std::vector<TangentVec> results;
    for (const auto& [rep, q] : f.reps_at(p)) {
      TangentVec local = change_chart(f.source(), TangentVec{p, v}, q.chart);
      Eigen::MatrixXd j = eval_matrix(rep->jacobian, q.coords, m, n);
      Eigen::VectorXd out = j * Eigen::Map<const Eigen::VectorXd>(local.components.data(), static_cast<Eigen::Index>(n));
      results.push_back(TangentVec{ManifoldPoint{rep->target_chart, rep->map.eval(q.coords)},
                                   std::vector<double>(out.begin(), out.end())});
    }
    for (std::size_t k = 1; k < results.size(); ++k) {
      double err;
      try {
        TangentVec moved = change_chart(f.target(), results[k], results[0].base.chart);
        err = std::max(max_mixed(moved.components, results[0].components),
                       max_mixed(moved.base.coords, results[0].base.coords));
      } catch (const DomainError&) {
        continue;
      }
      b.measure("manifold:chart-independence", "T(f) does not depend on the representative", tol, err, p.coords,
                f.name() + " at " + p.chart);
    }
  }
}

void pairing_law(Builder& b, const ManifoldMap& f, std::size_t samples, double tol) {
  std::mt19937_64 rng(b.seed() + 1);
  std::size_t n = f.source().dim();
  std::size_t m = f.target().dim();
  for (std::size_t s = 0; s < samples; ++s) {
    ManifoldPoint p = sample_point(f.source(), rng);
    std::vector<double> v = random_vector(rng, n);
    TangentVec w = manifold_tangent_map(f, TangentVec{p, v});
    Covector phi{w.base, random_vector(rng, m)};
    Covector back = cotangent_map(f, p, phi);
    double err = mixed_error(pairing(back.components, v), pairing(phi.components, w.components));
    b.measure("manifold:duality-pairing", "<T*(f) phi, v> = <phi, T(f) v>", tol, err, p.coords, f.name());
  }
}

void field_laws(Builder& b, const std::string& label, const CovectorField& field) {
  b.flag("manifold:section-law", "covector pullbacks are sections of the projection", section_law_holds(field), label);
  FieldCheck fc = check_overlap_compatibility(field, 64, b.seed(), b.tol(1e-9));
  Comparison c;
  c.equal = fc.passed;
  c.max_error = fc.max_error;
  c.points = fc.points;
  if (fc.witness) c.worst_point = fc.witness->coords;
  b.add("manifold:overlap-compatibility", "pulled back fields agree on chart overlaps", b.tol(1e-9), c, label);
}

/// Compares two fields at sampled source points, in each sample's chart.
void compare_fields(Builder& b, const std::string& id, const std::string& anchor, double tol, const CovectorField& a,
                    const std::function<Covector(const ManifoldPoint&)>& expected, std::size_t samples,
                    const std::string& label) {
  std::mt19937_64 rng(b.seed() + 2);
  for (std::size_t s = 0; s < samples; ++s) {
    ManifoldPoint p = sample_point(a.atlas(), rng);
    Covector got;
    try {
      got = a.at(p);
    } catch (const DomainError&) {
      continue;  // outside every patch, e.g. on a chart boundary image
    }
    b.measure(id, anchor, tol, covector_distance(a.atlas(), got, expected(p)), p.coords, label);
  }
}

void manifold_suite(Builder& b) {
  AtlasPtr circle = circle_atlas();
  AtlasPtr sphere = sphere_atlas();
  AtlasPtr torus = torus_atlas();
  AtlasPtr line = euclidean_atlas(1);
  AtlasPtr plane = euclidean_atlas(2);
  AtlasPtr space = euclidean_atlas(3);

  atlas_laws(b, *circle);
  atlas_laws(b, *sphere);
  atlas_laws(b, *torus);
  round_trips(b, *circle, 64, b.tol(1e-12));
  round_trips(b, *sphere, 64, b.tol(1e-9));
  round_trips(b, *torus, 64, b.tol(1e-9));

  ManifoldMap cover = circle_double_cover(circle);
  ManifoldMap rotation = circle_rotation(circle);
  ManifoldMap antipodal = sphere_antipodal(sphere);
  ManifoldMap embedding = sphere_embedding(sphere, space);
  ManifoldMap height = sphere_height(sphere, line);

  for (const ManifoldMap* f : {&cover, &rotation, &antipodal, &embedding, &height}) {
    tangent_independence(b, *f, 64, b.tol(1e-9));
  }
  pairing_law(b, embedding, 100, b.tol(1e-10));
  pairing_law(b, antipodal, 100, b.tol(1e-10));
  pairing_law(b, height, 100, b.tol(1e-10));
  pairing_law(b, cover, 100, b.tol(1e-10));

  {
    std::mt19937_64 rng(b.seed());
    for (int s = 0; s < 32; ++s) {
      ManifoldPoint p = sample_point(*circle, rng);
      TangentVec v = manifold_tangent_map(cover, TangentVec{p, {1.0}});
      b.measure("manifold:double-cover-tangent", "the double cover doubles tangent vectors", b.tol(1e-12),
                mixed_error(v.components[0], 2.0), p.coords, "double cover");
    }
  }

  CovectorField dtheta = dtheta_field(circle);
  CovectorField pulled = covector_pullback(dtheta, cover);
  compare_fields(b, "manifold:dtheta-pullback", "the double cover pulls d theta back to 2 d theta", b.tol(1e-12), pulled,
                 [](const ManifoldPoint& p) { return Covector{p, {2.0}}; }, 100, "double cover");
  compare_fields(b, "manifold:pullback-pointwise", "pullbacks agree with the cotangent map", b.tol(1e-12), pulled,
                 [&](const ManifoldPoint& p) { return cotangent_map(cover, p, dtheta.at(cover.apply(p))); }, 100,
                 "double cover");
  compare_fields(b, "manifold:pullback-identity", "pulling back along the identity changes nothing", b.tol(1e-12),
                 covector_pullback(dtheta, identity_manifold_map(circle)),
                 [&](const ManifoldPoint& p) { return dtheta.at(p); }, 64, "identity");

  CovectorField constant = CovectorField::from_components(space, {{"R", parse_map("(map 3 3 1 2 -3)")}});
  CovectorField on_sphere = covector_pullback(constant, embedding);
  ManifoldMap cover_rotation = compose_manifold_maps(cover, rotation);
  ManifoldMap antipodal_embedding = compose_manifold_maps(antipodal, embedding);
  CovectorField via_rotation = covector_pullback(dtheta, rotation);
  CovectorField nested_circle = covector_pullback(via_rotation, cover);
  CovectorField nested_sphere = covector_pullback(on_sphere, antipodal);
  compare_fields(b, "manifold:pullback-composite", "(f g)* omega = f*(g* omega)", b.tol(1e-9),
                 covector_pullback(dtheta, cover_rotation),
                 [&](const ManifoldPoint& p) { return nested_circle.at(p); }, 64, "double cover; rotation");
  compare_fields(b, "manifold:pullback-composite", "(f g)* omega = f*(g* omega)", b.tol(1e-9),
                 covector_pullback(constant, antipodal_embedding),
                 [&](const ManifoldPoint& p) { return nested_sphere.at(p); }, 64, "antipodal; embedding");

  field_laws(b, "d theta along the double cover", pulled);
  field_laws(b, "d theta along the rotation", via_rotation);
  field_laws(b, "d theta along double cover; rotation", covector_pullback(dtheta, cover_rotation));
  field_laws(b, "nested circle pullback", nested_circle);
  field_laws(b, "constant form along the embedding", on_sphere);
  field_laws(b, "nested sphere pullback", nested_sphere);

  {
    const char* chart_anchor = "fields do not depend on the chart they are read in";
    std::mt19937_64 rng(b.seed() + 3);
    for (int s = 0; s < 64; ++s) {
      ManifoldPoint p = sample_point(*circle, rng);
      for (const auto& other : circle->charts_containing(p)) {
        Covector here = pulled.at(p);
        Covector there = pulled.at(change_chart(*circle, p, other));
        b.measure("manifold:chart-independence-fields", chart_anchor, b.tol(1e-9),
                  covector_distance(*circle, here, there), p.coords, "double cover pullback");
      }
    }
  }

  EtaleReport er = is_etale(cover, 64, b.seed());
  b.flag("manifold:etale:double-cover", "the double cover is etale with |det| = 2",
         er.etale && std::abs(er.min_abs_det - 2.0) < 1e-12, "double cover", "min |det| = " + format_error(er.min_abs_det));
  b.flag("manifold:etale:constant", "constant maps are not etale", !is_etale(constant_map(plane), 64, b.seed()).etale,
         "constant map on R^2");
  b.flag("manifold:etale:box-inclusion", "open inclusions are etale", is_etale(box_inclusion(2), 64, b.seed()).etale,
         "unit box in R^2");
  b.flag("manifold:etale:antipodal", "the antipodal map is etale", is_etale(antipodal, 64, b.seed()).etale, "S^2");
  b.flag("manifold:etale:closure-composite", "composites of etale maps are etale",
         is_etale(cover_rotation, 64, b.seed()).etale, "double cover; rotation");
  // along the rotation by 1/8, the pullback of the cover is the cover followed by rotation by 7/8
  b.flag("manifold:etale:closure-pullback", "pullbacks of etale maps are etale",
         is_etale(compose_manifold_maps(cover, circle_rotation_by(circle, Rational(7, 8))), 64, b.seed()).etale,
         "double cover along rotation");

  b.guard("manifold:etale-functoriality", "etale cotangent maps compose", "double cover; rotation", [&] {
    EtaleCotangent tf(cover, 64, b.seed());
    EtaleCotangent tg(rotation, 64, b.seed());
    EtaleCotangent tfg(cover_rotation, 64, b.seed());
    EtaleCotangent tid(identity_manifold_map(circle), 64, b.seed());
    std::mt19937_64 rng(b.seed() + 4);
    for (int s = 0; s < 100; ++s) {
      ManifoldPoint p = sample_point(*circle, rng);
      Covector phi{p, random_vector(rng, 1)};
      Covector direct = tfg(phi);
      Covector nested = tg(tf(phi));
      b.measure("manifold:etale-functoriality", "etale cotangent maps compose", b.tol(1e-12),
                covector_distance(*circle, direct, nested), p.coords, "double cover; rotation");
      b.measure("manifold:etale-identity", "the etale cotangent of the identity is the identity", b.tol(1e-12),
                covector_distance(*circle, tid(phi), phi), p.coords, "identity");
      Covector half = tf(Covector{p, {1.0}});
      b.measure("manifold:etale-double-cover", "the double cover halves covectors", b.tol(1e-12),
                mixed_error(half.components[0], 0.5), p.coords, "double cover");
    }
  });
  bool refused = false;
  try {
    EtaleCotangent bad(constant_map(plane), 64, b.seed());
  } catch (const DomainError&) {
    refused = true;
  }
  b.flag("manifold:etale:refuses", "the etale cotangent refuses non-etale maps", refused, "constant map");

  FieldCheck metric = check_metric(MetricField::euclidean(sphere), 64, b.seed());
  b.flag("manifold:metric-spd", "chart metrics are symmetric positive definite", metric.passed, "identity on S^2");

  b.guard("manifold:optimizer-sphere", "height descent reaches the south pole", "S^2", [&] {
    SphereDescentDemo demo = sphere_descent_demo();
    bool ok = demo.distance < 1e-6 && demo.descent.iterations <= 500 && demo.descent.monotone;
    Comparison c;
    c.equal = ok;
    c.max_error = demo.distance;
    c.points = demo.descent.iterations;
    if (!ok) {
      c.worst_point = demo.descent.final_point.coords;
      c.detail = "distance " + format_error(demo.distance) + " after " + std::to_string(demo.descent.iterations) +
                 " steps" + (demo.descent.monotone ? "" : ", not monotone");
    }
    b.add("manifold:optimizer-sphere", "height descent reaches the south pole", 1e-6, c, "S^2");
  });

  b.guard("manifold:optimizer-quadratic", "plain gradient descent on a quadratic", "R^2", [&] {
    ManifoldMap quad("quadratic", plane, line,
                     {LocalRep{"R", "R", parse_map("(map 2 1 (+ (* x0 x0) (* 2 x1 x1)))"), Box::unbounded(2), {}, {}}});
    MetricField g = MetricField::euclidean(plane);
    ManifoldPoint x{"R", {1.0, 1.0}};
    for (int k = 1; k <= 10; ++k) {
      x = riemannian_gradient_step(quad, g, x).point;
      std::vector<double> expected{std::pow(0.8, k), std::pow(0.6, k)};
      b.measure("manifold:optimizer-quadratic", "plain gradient descent on a quadratic", b.tol(1e-12),
                max_mixed(x.coords, expected), x.coords, "step " + std::to_string(k));
    }
  });

  {
    ManifoldPoint pole{"north", {0.0, 0.0}};
    StepResult r = riemannian_gradient_step(height, MetricField::euclidean(sphere), pole);
    b.flag("manifold:optimizer-critical", "a critical point is fixed", !r.moved && r.point.coords == pole.coords,
           "north pole");
  }
}

// ---------------------------------------------------------------------------

void tangent_laws(Builder& b, const AlgebraTangent& t, const std::vector<GeneratorAlgebra>& algebras,
                  const std::vector<GeneratorMorphism>& morphisms) {
  const std::string prefix = "algebra:" + t.name() + ":";
  auto eq = [&](const std::string& law, const std::string& anchor, const std::string& label, const AlgebraMorphism& l,
                const AlgebraMorphism& r) {
    bool ok = l == r;
    b.flag(prefix + law, anchor, ok, label, ok ? "" : l.to_string() + " vs " + r.to_string());
  };

  for (const auto& [id, a] : algebras) {
    AlgebraMorphism id_a = AlgebraMorphism::identity(a);
    Algebra ta = t.tangent(a);
    eq("zero-section", "z; p = 1", id, t.seq(t.z(a), t.p(a)), id_a);
    eq("lift-flip", "lift; c = lift", id, t.seq(t.lift(a), t.flip(a)), t.lift(a));
    eq("flip-involution", "c; c = 1", id, t.seq(t.flip(a), t.flip(a)), AlgebraMorphism::identity(t.tangent2(a)));
    eq("sum-unit", "<1, p z>; s = 1", id, t.seq(t.unit_pair(a), t.s(a)), AlgebraMorphism::identity(ta));
    eq("sum-commutative", "swap; s = s", id, t.seq(t.swap(a), t.s(a)), t.s(a));
    eq("sum-associative", "(s x 1); s = (1 x s); s", id, t.seq(t.sum_left(a), t.s(a)), t.seq(t.sum_right(a), t.s(a)));
    eq("lift-projection", "lift; p_T = p; z", id, t.seq(t.lift(a), t.p(ta)), t.seq(t.p(a), t.z(a)));
    eq("lift-tangent-projection", "lift; T(p) = p; z", id, t.seq(t.lift(a), t.tangent(t.p(a))),
       t.seq(t.p(a), t.z(a)));
    eq("lift-zero", "z; lift = z; z_T", id, t.seq(t.z(a), t.lift(a)), t.seq(t.z(a), t.z(ta)));
    eq("lift-coassociative", "lift; lift_T = lift; T(lift)", id, t.seq(t.lift(a), t.lift(ta)),
       t.seq(t.lift(a), t.tangent(t.lift(a))));
    eq("functoriality-identity", "T(1) = 1", id, t.tangent(id_a), AlgebraMorphism::identity(ta));
  }

  for (const auto& [id, f] : morphisms) {
    const Algebra& cs = t.category_source(f);
    const Algebra& ct = t.category_target(f);
    AlgebraMorphism tf = t.tangent(f);
    AlgebraMorphism t2f = t.tangent2(f);
    eq("natural-p", "projection is natural", id, t.seq(tf, t.p(ct)), t.seq(t.p(cs), f));
    eq("natural-z", "zero is natural", id, t.seq(t.z(cs), tf), t.seq(f, t.z(ct)));
    eq("natural-s", "sum is natural", id, t.seq(t.tangent_power(f, 2), t.s(ct)), t.seq(t.s(cs), tf));
    eq("natural-lift", "vertical lift is natural", id, t.seq(t.lift(cs), t2f), t.seq(tf, t.lift(ct)));
    eq("natural-flip", "canonical flip is natural", id, t.seq(t.flip(cs), t2f), t.seq(t2f, t.flip(ct)));
  }

  for (const auto& [fid, f] : morphisms) {
    for (const auto& [gid, g] : morphisms) {
      if (!(f.target() == g.source())) continue;
      eq("functoriality", "T(f g) = T(f) T(g)", fid + ";" + gid, t.tangent(compose(f, g)),
         compose(t.tangent(f), t.tangent(g)));
    }
  }
}

FreeModuleMorphism random_module_map(const Algebra& a, std::size_t rows, std::size_t cols, std::uint64_t seed) {
  auto polys = random_polynomials(rows * cols, 1, 4, seed);
  FreeModuleMorphism g{a, cols, rows, {}};
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<Polynomial> row;
    for (std::size_t c = 0; c < cols; ++c) row.push_back(a.reduce(polys[r * cols + c]));
    g.entries.push_back(std::move(row));
  }
  return g;
}

void algebra_suite(Builder& b) {
  auto algebras = generator_algebras();
  auto morphisms = generator_morphisms();
  tangent_laws(b, DualNumbers{}, algebras, morphisms);

  std::vector<GeneratorAlgebra> rings;
  for (const auto& a : algebras) {
    if (a.algebra.is_polynomial_ring()) rings.push_back(a);
  }
  std::vector<GeneratorMorphism> ring_maps;
  for (const auto& m : morphisms) {
    if (m.map.source().is_polynomial_ring() && m.map.target().is_polynomial_ring()) ring_maps.push_back(m);
  }
  tangent_laws(b, Kahler{}, rings, ring_maps);

  bool refused = false;
  try {
    Kahler{}.tangent(Algebra::quotient(parse_polynomial("x0^2")));
  } catch (const DomainError&) {
    refused = true;
  }
  b.flag("algebra:kahler:domain", "the Kahler model needs polynomial rings", refused, "Q[x]/(x^2)");

  bool ill_defined = false;
  try {
    AlgebraMorphism(Algebra::quotient(parse_polynomial("x0^2")), Algebra::polynomial(1), {parse_polynomial("x0")});
  } catch (const InvariantViolation& e) {
    ill_defined = e.invariant() == "well-defined";
  }
  b.flag("algebra:well-defined", "morphisms respect the relations", ill_defined, "Q[x]/(x^2) -> Q[x], x -> x");

  // Kahler tangent on dx is the total differential of the image
  for (const auto& [id, f] : ring_maps) {
    AlgebraMorphism tf = kahler_tangent(f);
    std::size_t n = f.source().generators();
    std::size_t m = f.target().generators();
    for (std::size_t i = 0; i < n; ++i) {
      bool ok = tf.apply(Polynomial::variable(static_cast<std::uint32_t>(n + i))) ==
                total_differential(f.images()[i], m);
      b.flag("algebra:kahler:differential", "T(f)(dx) = d(f(x))", ok, id + " dx" + std::to_string(i));
    }

    AlgebraMorphism rev = derivations_reverse_tangent(f);
    for (std::size_t j = 0; j < m; ++j) {
      Polynomial image = rev.apply(Polynomial::variable(static_cast<std::uint32_t>(m + j)));
      for (std::size_t i = 0; i < n; ++i) {
        Polynomial lhs = image.derivative(static_cast<std::uint32_t>(m + i));
        Polynomial rhs = tf.apply(Polynomial::variable(static_cast<std::uint32_t>(n + i)))
                             .derivative(static_cast<std::uint32_t>(m + j));
        b.flag("algebra:derivations-pairing", "derivations pair with differentials as the transpose", lhs == rhs,
               id + " d" + std::to_string(j) + "/dx" + std::to_string(i));
      }
    }
  }

  auto polys = random_polynomials(100, 2, 3, b.seed());
  for (std::size_t k = 0; k < 50; ++k) {
    const Polynomial& p = polys[2 * k];
    const Polynomial& q = polys[2 * k + 1];
    Polynomial dp = total_differential(p, 2);
    Polynomial dq = total_differential(q, 2);
    std::string label = "pair " + std::to_string(k);
    b.flag("algebra:leibniz", "d(a b) = a db + b da", total_differential(p * q, 2) == p * dq + q * dp, label);
    b.flag("algebra:additivity", "d(a + b) = da + db", total_differential(p + q, 2) == dp + dq, label);
  }
  b.flag("algebra:unit", "d(1) = 0", total_differential(Polynomial::constant(Rational(1)), 2).is_zero(), "d(1)");

  for (const auto& [id, a] : algebras) {
    if (!a.rank()) continue;
    for (std::uint64_t trial = 0; trial < 8; ++trial) {
      std::uint64_t seed = b.seed() * 1000 + trial;
      FreeModuleMorphism g = random_module_map(a, 2, 3, seed);
      FreeModuleMorphism h = random_module_map(a, 2, 2, seed + 500);
      std::string label = id + " trial " + std::to_string(trial);
      RationalMatrix gd = module_dual_involution(g);
      b.flag("algebra:module-dual-involutive", "the double dual is the original map",
             gd.transpose() == to_rational_matrix(g), label);
      b.flag("algebra:module-dual-contravariant", "(g; h) dual = h dual; g dual",
             module_dual_involution(compose(g, h)) == gd * module_dual_involution(h), label);
      Polynomial x = a.reduce(random_polynomials(1, 1, 3, seed + 900)[0]);
      RationalMatrix lx3 = module_dual_involution(FreeModuleMorphism::scalar(a, 3, x));
      RationalMatrix lx2 = module_dual_involution(FreeModuleMorphism::scalar(a, 2, x));
      b.flag("algebra:module-dual-linear", "the dual commutes with the algebra action", gd * lx2 == lx3 * gd, label);
    }
    b.flag("algebra:module-dual-identity", "the dual of the identity is the identity",
           module_dual_involution(FreeModuleMorphism::identity(a, 2)) == RationalMatrix::identity(2 * *a.rank()), id);
  }
  bool infinite = false;
  try {
    module_dual_involution(FreeModuleMorphism::identity(Algebra::polynomial(1), 1));
  } catch (const DomainError&) {
    infinite = true;
  }
  b.flag("algebra:module-dual-domain", "duals need finite-dimensional algebras", infinite, "Q[x]");
}

using SuiteFn = void (*)(Builder&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table{
      {"smooth", smooth_suite},   {"forward", forward_suite},   {"reverse", reverse_suite},
      {"bundles", bundles_suite}, {"manifold", manifold_suite}, {"algebra", algebra_suite},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suite_table()) out.push_back(name);
    out.push_back("all");
    return out;
  }();
  return names;
}

CheckReport run_suite(const std::string& name, const SuiteOptions& options) {
  Builder b(name, options);
  bool found = false;
  for (const auto& [suite, fn] : suite_table()) {
    if (name == suite || name == "all") {
      found = true;
      try {
        fn(b);
      } catch (const std::exception& e) {
        b.flag(suite + ":completed", "the suite runs to completion", false, suite, e.what());
      }
    }
  }
  if (!found) throw DomainError("unknown suite '" + name + "'");
  return b.finish();
}

}  // namespace rtc
