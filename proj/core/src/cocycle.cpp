#include "rtc/cocycle.hpp"

#include "rtc/errors.hpp"
#include "rtc/forward.hpp"
#include "rtc/map_dsl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rtc {

namespace {

std::optional<ManifoldPoint> sample_in_trivialization(const CocycleBundle& e, const Trivialization& t,
                                                      std::mt19937_64& rng) {
  Box region = t.box.intersect(e.base().chart(t.chart).box);
  for (int attempt = 0; attempt < 60; ++attempt) {
    std::vector<double> x = region.sample(rng);
    if (region.contains(x) && e.in_trivialization(t, x)) return ManifoldPoint{t.chart, std::move(x)};
  }
  return std::nullopt;
}

std::optional<ManifoldPoint> move_to(const Atlas& atlas, const ManifoldPoint& p, const std::string& chart) {
  if (p.chart == chart) return p;
  if (!atlas.find_transition(p.chart, chart, p.coords)) return std::nullopt;
  return change_chart(atlas, p, chart);
}

double matrix_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  double err = 0.0;
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) err = std::max(err, mixed_error(a(r, c), b(r, c)));
  }
  return err;
}

struct Tracker {
  Comparison result;
  double tol;
  void record(double err, const ManifoldPoint& p, const std::string& where) {
    ++result.points;
    if (result.worst_point.empty() || err > result.max_error) {
      result.max_error = err;
      result.worst_point = p.coords;
      result.detail = where + " at a point of chart '" + p.chart + "'";
    }
  }
  LawCheck finish(std::string name) {
    result.equal = result.max_error <= tol;
    return LawCheck{std::move(name), std::move(result)};
  }
};

}  // namespace

CocycleBundle::CocycleBundle(std::string name, AtlasPtr base, std::size_t fibre_dim,
                             std::vector<FibreTransition> transitions)
    : name_(std::move(name)), base_(std::move(base)), fibre_dim_(fibre_dim), table_(std::move(transitions)) {
  std::size_t n = base_->dim();
  for (const auto& c : base_->charts()) trivs_.push_back(Trivialization{c.id, c.id, Box::unbounded(n), {}});
  for (const auto& t : table_) {
    if (!base_->has_chart(t.from) || !base_->has_chart(t.to)) {
      throw InvariantViolation("transition-charts", "fibre transition " + t.from + "->" + t.to + " names an unknown chart");
    }
    if (t.matrix.dom_dim() != n || t.matrix.cod_dim() != fibre_dim_ * fibre_dim_) {
      throw DimensionMismatch("fibre transition " + t.from + "->" + t.to + " must be R^" + std::to_string(n) + " -> R^" +
                              std::to_string(fibre_dim_ * fibre_dim_));
    }
    if (t.overlap.dim() != n) throw DimensionMismatch("fibre transition overlap box has the wrong dimension");
  }
}

std::string CocycleBundle::key() const {
  std::string k = (dual_ ? "dual:" : "") + name_ + "/" + base_->name() + "/" + std::to_string(fibre_dim_);
  for (const auto& t : table_) k += "/" + t.from + ">" + t.to + ":" + fingerprint(t.matrix);
  if (pulled_) k += "/along:" + pulled_->map->name() + "/of:" + pulled_->base_bundle->key();
  return k;
}

bool CocycleBundle::in_trivialization(const Trivialization& t, std::span<const double> x) const {
  return base_->chart(t.chart).box.contains(x) && t.box.contains(x) && guards_hold(t.guards, x);
}

const Trivialization& CocycleBundle::trivialization(const std::string& id) const {
  for (const auto& t : trivs_) {
    if (t.id == id) return t;
  }
  throw DomainError("bundle '" + name_ + "' has no trivialization '" + id + "'");
}

std::optional<Eigen::MatrixXd> CocycleBundle::raw_transition(const Trivialization& from, const Trivialization& to,
                                                             std::span<const double> x) const {
  if (!in_trivialization(from, x)) return std::nullopt;
  auto there = move_to(*base_, ManifoldPoint{from.chart, {x.begin(), x.end()}}, to.chart);
  if (!there || !in_trivialization(to, there->coords)) return std::nullopt;
  auto k = static_cast<Eigen::Index>(fibre_dim_);
  if (from.id == to.id) return Eigen::MatrixXd::Identity(k, k);

  if (!pulled_) {
    for (const auto& t : table_) {
      if (t.from == from.id && t.to == to.id && t.overlap.contains(x)) return eval_matrix(t.matrix, x, fibre_dim_, fibre_dim_);
    }
    return std::nullopt;
  }

  auto index = [&](const std::string& id) {
    return static_cast<std::size_t>(std::find_if(trivs_.begin(), trivs_.end(), [&](const Trivialization& t) {
                                      return t.id == id;
                                    }) - trivs_.begin());
  };
  const auto& reps = pulled_->map->reps();
  const LocalRep& r_from = reps.at(index(from.id));
  const LocalRep& r_to = reps.at(index(to.id));
  const CocycleBundle& e = *pulled_->base_bundle;
  std::vector<double> y = r_from.map.eval(x);
  std::vector<double> y2 = r_to.map.eval(there->coords);
  auto g = e.transition(e.trivialization(r_from.target_chart), e.trivialization(r_to.target_chart), y);
  if (!g) return std::nullopt;
  // both representatives must name the same image point
  auto image = move_to(e.base(), ManifoldPoint{r_from.target_chart, y}, r_to.target_chart);
  if (!image) return std::nullopt;
  for (std::size_t i = 0; i < y2.size(); ++i) {
    if (mixed_error(image->coords[i], y2[i]) > 1e-9) return std::nullopt;
  }
  return g;
}

std::optional<Eigen::MatrixXd> CocycleBundle::transition(const Trivialization& from, const Trivialization& to,
                                                         std::span<const double> x) const {
  auto g = raw_transition(from, to, x);
  if (g && dual_) return Eigen::MatrixXd(g->transpose().inverse());
  return g;
}

CocycleBundle CocycleBundle::star() const {
  CocycleBundle out = *this;
  out.dual_ = !dual_;
  return out;
}

CocycleBundle CocycleBundle::with_transition_matrix(std::size_t index, SmoothMap matrix) const {
  if (pulled_) throw DomainError("only table bundles have transition entries");
  auto table = table_;
  table.at(index).matrix = std::move(matrix);
  CocycleBundle out(name_ + "'", base_, fibre_dim_, std::move(table));
  out.dual_ = dual_;
  return out;
}

CocycleBundle pullback_cocycle(const CocycleBundle& e, const ManifoldMap& f) {
  if (e.is_pullback()) throw DomainError("pullback of a pullback bundle is not supported");
  if (e.base().name() != f.target().name()) throw DomainError("map '" + f.name() + "' does not land in the base of '" + e.name() + "'");
  CocycleBundle out;
  out.name_ = e.name() + "@" + f.name();
  out.base_ = f.source_ptr();
  out.fibre_dim_ = e.fibre_dim();
  out.dual_ = false;
  const auto& reps = f.reps();
  for (std::size_t k = 0; k < reps.size(); ++k) {
    const LocalRep& r = reps[k];
    Trivialization t{r.source_chart + "/" + std::to_string(k), r.source_chart, r.box, r.guards};
    t.guards.push_back(Guard{r.map, f.target().chart(r.target_chart).box});
    out.trivs_.push_back(std::move(t));
  }
  out.pulled_ = std::make_shared<const CocycleBundle::Pulled>(
      CocycleBundle::Pulled{std::make_shared<const CocycleBundle>(e), std::make_shared<const ManifoldMap>(f)});
  return out;
}

CocycleBundle tangent_cocycle(const AtlasPtr& atlas) {
  std::vector<FibreTransition> table;
  for (const auto& t : atlas->transitions()) table.push_back(FibreTransition{t.from, t.to, t.jacobian, t.overlap});
  return CocycleBundle("T", atlas, atlas->dim(), std::move(table));
}

CocycleBundle moebius_bundle(const AtlasPtr& circle) {
  SmoothMap plus = parse_map("(map 1 1 1)");
  SmoothMap minus = parse_map("(map 1 1 -1)");
  auto box = [](double lo, double hi) { return Box{{{lo, hi}}}; };
  std::vector<FibreTransition> table{
      {"A", "B", plus, box(0.0, 0.5)},
      {"A", "B", minus, box(0.5, 1.0)},
      {"B", "A", plus, box(0.0, 0.5)},
      {"B", "A", minus, box(-0.5, 0.0)},
  };
  return CocycleBundle("moebius", circle, 1, std::move(table));
}

BundleReport verify_bundle_axioms(const CocycleBundle& e, std::size_t samples, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  auto k = static_cast<Eigen::Index>(e.fibre_dim());
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(k, k);
  Tracker invertible{{}, 0.0};
  Tracker round_trip{{}, tol};
  Tracker triple{{}, tol};
  Tracker linear{{}, tol};
  double min_det = std::numeric_limits<double>::infinity();

  const auto& trivs = e.trivializations();
  for (const auto& a : trivs) {
    for (const auto& b : trivs) {
      if (a.id == b.id) continue;
      std::size_t accepted = 0;
      for (std::size_t attempt = 0; attempt < samples * 20 && accepted < samples; ++attempt) {
        auto p = sample_in_trivialization(e, a, rng);
        if (!p) break;
        auto g_ab = e.transition(a, b, p->coords);
        if (!g_ab) continue;
        ++accepted;
        std::string where = a.id + "->" + b.id;
        ManifoldPoint q = change_chart(e.base(), *p, b.chart);

        double det = std::abs(g_ab->determinant());
        ++invertible.result.points;
        if (det < min_det) {
          min_det = det;
          invertible.result.worst_point = p->coords;
          invertible.result.detail = where + " has |det| = " + std::to_string(det);
        }

        if (auto g_ba = e.transition(b, a, q.coords)) round_trip.record(matrix_error(*g_ba * *g_ab, id), *p, where + "->" + a.id);

        for (const auto& c : trivs) {
          if (c.id == a.id || c.id == b.id) continue;
          auto g_bc = e.transition(b, c, q.coords);
          auto g_ac = e.transition(a, c, p->coords);
          if (!g_bc || !g_ac) continue;
          triple.record(matrix_error(*g_bc * *g_ab, *g_ac), *p, where + "->" + c.id);
        }

        Eigen::VectorXd v(k), w(k);
        for (Eigen::Index i = 0; i < k; ++i) {
          v(i) = gauss(rng);
          w(i) = gauss(rng);
        }
        double s = gauss(rng);
        Eigen::VectorXd lhs = *g_ab * (s * v + w);
        Eigen::VectorXd rhs = s * (*g_ab * v) + *g_ab * w;
        double err = 0.0;
        for (Eigen::Index i = 0; i < k; ++i) err = std::max(err, mixed_error(lhs(i), rhs(i)));
        linear.record(err, *p, where);
      }
    }
  }
  BundleReport report;
  invertible.result.equal = !(min_det <= 1e-8);
  report.checks.push_back(LawCheck{"cocycle:invertible", invertible.result});
  report.checks.push_back(round_trip.finish("cocycle:round-trip"));
  report.checks.push_back(triple.finish("cocycle:triple-overlap"));
  report.checks.push_back(linear.finish("fibre-linear"));
  return report;
}

Comparison compare_transitions(const CocycleBundle& a, const CocycleBundle& b, std::size_t samples,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Tracker t{{}, 0.0};
  for (const auto& from : a.trivializations()) {
    for (const auto& to : a.trivializations()) {
      if (from.id == to.id) continue;
      const Trivialization& bf = b.trivialization(from.id);
      const Trivialization& bt = b.trivialization(to.id);
      for (std::size_t s = 0; s < samples; ++s) {
        auto p = sample_in_trivialization(a, from, rng);
        if (!p) break;
        auto ga = a.transition(from, to, p->coords);
        auto gb = b.transition(bf, bt, p->coords);
        if (!ga && !gb) continue;
        double err = (ga && gb) ? matrix_error(*ga, *gb) : std::numeric_limits<double>::infinity();
        t.record(err, *p, from.id + "->" + to.id);
      }
    }
  }
  Comparison out = t.result;
  out.equal = out.max_error == 0.0;
  out.exact = out.equal;
  return out;
}

void register_bundle(SystemOfBundles& system, const CocycleBundle& e) { system.add_key(e.key()); }

CocycleBundle involution_star(const SystemOfBundles& system, const CocycleBundle& e) {
  bool tangent = !e.is_pullback() && e.name() == "T";
  if (!tangent && !system.contains_key(e.key())) {
    throw InvariantViolation("bundle-in-system", "bundle '" + e.name() + "' is not registered in the system");
  }
  return e.star();
}

}  // namespace rtc
