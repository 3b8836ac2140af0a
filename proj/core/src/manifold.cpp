#include "rtc/manifold.hpp"

#include "rtc/compare.hpp"
#include "rtc/errors.hpp"
#include "rtc/forward.hpp"
#include "rtc/reverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rtc {

namespace {

Guard precompose(const SmoothMap& pre, const Guard& g) { return Guard{compose_maps(pre, g.map), g.box}; }

std::vector<std::string> chart_order(const Atlas& atlas, const ManifoldPoint& p) {
  std::vector<std::string> order{p.chart};
  for (auto& c : atlas.charts_containing(p)) order.push_back(std::move(c));
  return order;
}

bool same_atlas(const Atlas& a, const Atlas& b) { return &a == &b || (a.name() == b.name() && a.dim() == b.dim()); }

Eigen::VectorXd as_vector(std::span<const double> v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> as_std(const Eigen::VectorXd& v) { return std::vector<double>(v.begin(), v.end()); }

Covector transport_etale(const ManifoldMap& f, const Covector& phi, double det_floor) {
  auto [rep, q] = f.locate(phi.base);
  Covector local = change_chart(f.source(), phi, q.chart);
  std::size_t n = f.source().dim();
  Eigen::MatrixXd j = eval_matrix(rep->jacobian, q.coords, n, n);
  if (!(std::abs(j.determinant()) > det_floor)) {
    throw DomainError("map '" + f.name() + "' is not etale at the given point (|det J| = " +
                      std::to_string(std::abs(j.determinant())) + ")");
  }
  Eigen::VectorXd out = j.transpose().partialPivLu().solve(as_vector(local.components));
  return Covector{ManifoldPoint{rep->target_chart, rep->map.eval(q.coords)}, as_std(out)};
}

}  // namespace

ManifoldMap::ManifoldMap(std::string name, AtlasPtr source, AtlasPtr target, std::vector<LocalRep> reps)
    : name_(std::move(name)), source_(std::move(source)), target_(std::move(target)), reps_(std::move(reps)) {
  for (auto& r : reps_) {
    if (!source_->has_chart(r.source_chart) || !target_->has_chart(r.target_chart)) {
      throw InvariantViolation("representative-charts", "map '" + name_ + "': representative " + r.source_chart +
                                                            "->" + r.target_chart + " names an unknown chart");
    }
    if (r.map.dom_dim() != source_->dim() || r.map.cod_dim() != target_->dim()) {
      throw DimensionMismatch("map '" + name_ + "': representative " + r.source_chart + "->" + r.target_chart +
                              " is not R^" + std::to_string(source_->dim()) + " -> R^" +
                              std::to_string(target_->dim()));
    }
    if (r.box.dim() != source_->dim()) throw DimensionMismatch("map '" + name_ + "': validity box has the wrong dimension");
    r.jacobian = jacobian_map(r.map);
  }
}

bool ManifoldMap::valid_at(const LocalRep& rep, std::span<const double> x) const {
  return source_->chart(rep.source_chart).box.contains(x) && rep.box.contains(x) && guards_hold(rep.guards, x) &&
         target_->chart(rep.target_chart).box.contains(rep.map.eval(x));
}

std::vector<std::pair<const LocalRep*, ManifoldPoint>> ManifoldMap::reps_at(const ManifoldPoint& p) const {
  std::vector<std::pair<const LocalRep*, ManifoldPoint>> out;
  if (!source_->contains(p)) return out;
  for (const auto& chart : chart_order(*source_, p)) {
    ManifoldPoint q = change_chart(*source_, p, chart);
    for (const auto& r : reps_) {
      if (r.source_chart == chart && valid_at(r, q.coords)) out.emplace_back(&r, q);
    }
  }
  return out;
}

std::pair<const LocalRep*, ManifoldPoint> ManifoldMap::locate(const ManifoldPoint& p) const {
  auto all = reps_at(p);
  if (all.empty()) {
    throw DomainError("map '" + name_ + "' has no valid representative at the given point of chart '" + p.chart + "'");
  }
  return all.front();
}

ManifoldPoint ManifoldMap::apply(const ManifoldPoint& p) const {
  auto [rep, q] = locate(p);
  return ManifoldPoint{rep->target_chart, rep->map.eval(q.coords)};
}

std::vector<LocalRep> extended_reps(const ManifoldMap& f) {
  std::vector<LocalRep> out = f.reps();
  for (const auto& r : f.reps()) {
    for (const auto& t : f.target().transitions()) {
      if (t.from != r.target_chart) continue;
      LocalRep e{r.source_chart, t.to, compose_maps(r.map, t.map), r.box, r.guards, {}};
      e.guards.push_back(Guard{r.map, t.overlap.intersect(f.target().chart(t.from).box)});
      out.push_back(std::move(e));
    }
  }
  return out;
}

ManifoldMap compose_manifold_maps(const ManifoldMap& f, const ManifoldMap& g) {
  if (!same_atlas(f.target(), g.source())) {
    throw DomainError("cannot compose '" + f.name() + "' with '" + g.name() + "': atlases differ");
  }
  std::vector<LocalRep> reps;
  for (const auto& r1 : extended_reps(f)) {
    for (const auto& r2 : g.reps()) {
      if (r1.target_chart != r2.source_chart) continue;
      LocalRep r{r1.source_chart, r2.target_chart, compose_maps(r1.map, r2.map), r1.box, r1.guards, {}};
      r.guards.push_back(Guard{r1.map, r2.box.intersect(g.source().chart(r2.source_chart).box)});
      for (const auto& guard : r2.guards) r.guards.push_back(precompose(r1.map, guard));
      reps.push_back(std::move(r));
    }
  }
  return ManifoldMap(f.name() + ";" + g.name(), f.source_ptr(), g.target_ptr(), std::move(reps));
}

ManifoldMap identity_manifold_map(const AtlasPtr& atlas) {
  std::vector<LocalRep> reps;
  for (const auto& c : atlas->charts()) {
    reps.push_back(LocalRep{c.id, c.id, SmoothMap::identity(atlas->dim()), Box::unbounded(atlas->dim()), {}, {}});
  }
  return ManifoldMap("id", atlas, atlas, std::move(reps));
}

TangentVec manifold_tangent_map(const ManifoldMap& f, const TangentVec& v) {
  auto [rep, q] = f.locate(v.base);
  TangentVec local = change_chart(f.source(), v, q.chart);
  Eigen::MatrixXd j = eval_matrix(rep->jacobian, q.coords, f.target().dim(), f.source().dim());
  return TangentVec{ManifoldPoint{rep->target_chart, rep->map.eval(q.coords)}, as_std(j * as_vector(local.components))};
}

Covector cotangent_map(const ManifoldMap& f, const ManifoldPoint& x, const Covector& phi, double base_tol) {
  auto [rep, q] = f.locate(x);
  std::vector<double> y = rep->map.eval(q.coords);
  Covector at_y;
  try {
    at_y = change_chart(f.target(), phi, rep->target_chart);
  } catch (const DomainError&) {
    throw DomainError("covector is not based at f(x): chart '" + phi.base.chart + "' does not reach chart '" +
                      rep->target_chart + "' there");
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (mixed_error(y[i], at_y.base.coords[i]) > base_tol) {
      throw DomainError("covector is not based at f(x) for map '" + f.name() + "'");
    }
  }
  Eigen::MatrixXd j = eval_matrix(rep->jacobian, q.coords, f.target().dim(), f.source().dim());
  Covector out{q, as_std(j.transpose() * as_vector(at_y.components))};
  return change_chart(f.source(), out, x.chart);
}

double pairing(std::span<const double> phi, std::span<const double> v) {
  if (phi.size() != v.size()) throw DimensionMismatch("pairing: lengths differ");
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += phi[i] * v[i];
  return s;
}

CovectorField::CovectorField(AtlasPtr atlas, std::vector<CovectorPatch> patches)
    : atlas_(std::move(atlas)), patches_(std::move(patches)) {
  std::size_t n = atlas_->dim();
  for (const auto& p : patches_) {
    if (!atlas_->has_chart(p.chart)) throw InvariantViolation("field-charts", "covector patch names unknown chart '" + p.chart + "'");
    if (p.section.dom_dim() != n || p.section.cod_dim() != 2 * n || p.omega.dom_dim() != n || p.omega.cod_dim() != n) {
      throw DimensionMismatch("covector patch on chart '" + p.chart + "' has the wrong shape");
    }
  }
}

CovectorField CovectorField::from_components(AtlasPtr atlas,
                                             const std::vector<std::pair<std::string, SmoothMap>>& components) {
  std::size_t n = atlas->dim();
  std::vector<CovectorPatch> patches;
  for (const auto& [chart, omega] : components) {
    if (omega.dom_dim() != n || omega.cod_dim() != n) {
      throw DimensionMismatch("covector component on chart '" + chart + "' must be R^" + std::to_string(n) + " -> R^" +
                              std::to_string(n));
    }
    patches.push_back(CovectorPatch{chart, Box::unbounded(n), {}, pair_maps(SmoothMap::identity(n), omega), omega});
  }
  return CovectorField(std::move(atlas), std::move(patches));
}

bool CovectorField::patch_valid_at(const CovectorPatch& patch, std::span<const double> x) const {
  return atlas_->chart(patch.chart).box.contains(x) && patch.box.contains(x) && guards_hold(patch.guards, x);
}

Covector CovectorField::at(const ManifoldPoint& p) const {
  if (atlas_->contains(p)) {
    for (const auto& chart : chart_order(*atlas_, p)) {
      ManifoldPoint q = change_chart(*atlas_, p, chart);
      for (const auto& patch : patches_) {
        if (patch.chart == chart && patch_valid_at(patch, q.coords)) {
          return change_chart(*atlas_, Covector{q, patch.omega.eval(q.coords)}, p.chart);
        }
      }
    }
  }
  throw DomainError("covector field is undefined at the given point of chart '" + p.chart + "'");
}

CovectorField covector_pullback(const CovectorField& omega, const ManifoldMap& f) {
  if (!same_atlas(omega.atlas(), f.target())) throw DomainError("covector field does not live on the target of '" + f.name() + "'");
  std::size_t m = f.source().dim();
  std::vector<CovectorPatch> patches;
  for (const auto& r : extended_reps(f)) {
    for (const auto& p : omega.patches()) {
      if (p.chart != r.target_chart) continue;
      SmoothMap section = compose_maps(pair_maps(SmoothMap::identity(m), compose_maps(r.map, p.omega)),
                                       reverse_tangent_map(r.map));
      CovectorPatch out{r.source_chart, r.box, r.guards, section, compose_maps(section, SmoothMap::projection(2 * m, m, m))};
      out.guards.push_back(Guard{r.map, p.box.intersect(f.target().chart(p.chart).box)});
      for (const auto& g : p.guards) out.guards.push_back(precompose(r.map, g));
      patches.push_back(std::move(out));
    }
  }
  return CovectorField(f.source_ptr(), std::move(patches));
}

bool section_law_holds(const CovectorField& omega) {
  std::size_t n = omega.atlas().dim();
  SmoothMap id = SmoothMap::identity(n);
  return std::all_of(omega.patches().begin(), omega.patches().end(), [&](const CovectorPatch& p) {
    return structurally_equal(compose_maps(p.section, SmoothMap::projection(2 * n, 0, n)), id);
  });
}

FieldCheck check_overlap_compatibility(const CovectorField& omega, std::size_t samples, std::uint64_t seed,
                                       double tol) {
  FieldCheck out;
  std::mt19937_64 rng(seed);
  const Atlas& atlas = omega.atlas();
  for (std::size_t s = 0; s < samples; ++s) {
    ManifoldPoint p = sample_point(atlas, rng);
    std::optional<Covector> first;
    for (const auto& chart : chart_order(atlas, p)) {
      ManifoldPoint q = change_chart(atlas, p, chart);
      for (const auto& patch : omega.patches()) {
        if (patch.chart != chart || !omega.patch_valid_at(patch, q.coords)) continue;
        Covector here = change_chart(atlas, Covector{q, patch.omega.eval(q.coords)}, p.chart);
        if (!first) {
          first = here;
          continue;
        }
        double err = covector_distance(atlas, *first, here);
        ++out.points;
        if (err > out.max_error) {
          out.max_error = err;
          out.witness = p;
        }
      }
    }
  }
  out.passed = out.max_error <= tol;
  return out;
}

std::optional<ManifoldPoint> sample_in_rep(const ManifoldMap& f, const LocalRep& rep, std::mt19937_64& rng) {
  Box region = rep.box.intersect(f.source().chart(rep.source_chart).box);
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<double> x = region.sample(rng);
    if (region.contains(x) && f.valid_at(rep, x)) return ManifoldPoint{rep.source_chart, std::move(x)};
  }
  return std::nullopt;
}

ManifoldPoint sample_point(const Atlas& atlas, std::mt19937_64& rng, double clamp) {
  std::uniform_int_distribution<std::size_t> pick(0, atlas.charts().size() - 1);
  for (;;) {
    const Chart& c = atlas.charts()[pick(rng)];
    std::vector<double> x = c.box.sample(rng, clamp);
    if (c.box.contains(x)) return ManifoldPoint{c.id, std::move(x)};
  }
}

EtaleReport is_etale(const ManifoldMap& f, std::size_t samples, std::uint64_t seed, double det_floor) {
  EtaleReport report;
  report.min_abs_det = std::numeric_limits<double>::infinity();
  if (f.source().dim() != f.target().dim()) {
    report.etale = false;
    report.min_abs_det = 0.0;
    report.detail = "source and target dimensions differ";
    return report;
  }
  std::size_t n = f.source().dim();
  std::mt19937_64 rng(seed);
  for (const auto& rep : f.reps()) {
    for (std::size_t s = 0; s < samples; ++s) {
      auto p = sample_in_rep(f, rep, rng);
      if (!p) break;
      double det = std::abs(eval_matrix(rep.jacobian, p->coords, n, n).determinant());
      ++report.points;
      if (det < report.min_abs_det) {
        report.min_abs_det = det;
        report.worst = *p;
      }
    }
  }
  report.etale = !(report.min_abs_det <= det_floor);
  if (!report.etale) report.detail = "local Jacobian is singular at the worst point";
  return report;
}

EtaleCotangent::EtaleCotangent(ManifoldMap f, std::size_t samples, std::uint64_t seed, double det_floor)
    : f_(std::move(f)), report_(is_etale(f_, samples, seed, det_floor)), det_floor_(det_floor) {
  if (!report_.etale) {
    throw DomainError("map '" + f_.name() + "' is not etale: min |det| = " + std::to_string(report_.min_abs_det));
  }
}

Covector EtaleCotangent::operator()(const Covector& phi) const { return transport_etale(f_, phi, det_floor_); }

Covector etale_cotangent_functor(const ManifoldMap& f, const Covector& phi) { return transport_etale(f, phi, 1e-8); }

double covector_distance(const Atlas& atlas, const Covector& a, const Covector& b) {
  Covector moved = change_chart(atlas, b, a.base.chart);
  double err = 0.0;
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    err = std::max({err, mixed_error(a.components[i], moved.components[i]),
                    mixed_error(a.base.coords[i], moved.base.coords[i])});
  }
  return err;
}

double point_distance(const Atlas& atlas, const ManifoldPoint& a, const ManifoldPoint& b) {
  ManifoldPoint moved = change_chart(atlas, b, a.chart);
  double err = 0.0;
  for (std::size_t i = 0; i < a.coords.size(); ++i) err = std::max(err, mixed_error(a.coords[i], moved.coords[i]));
  return err;
}

}  // namespace rtc
