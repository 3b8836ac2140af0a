#include "rtc/atlas.hpp"

#include "rtc/compare.hpp"
#include "rtc/errors.hpp"
#include "rtc/forward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rtc {

Box Box::unbounded(std::size_t n) {
  double inf = std::numeric_limits<double>::infinity();
  return Box{std::vector<std::pair<double, double>>(n, {-inf, inf})};
}

bool Box::contains(std::span<const double> x) const {
  if (x.size() != bounds.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > bounds[i].first && x[i] < bounds[i].second)) return false;
  }
  return true;
}

Box Box::intersect(const Box& other) const {
  if (other.dim() != dim()) throw DimensionMismatch("box intersection: dimensions differ");
  Box out = *this;
  for (std::size_t i = 0; i < dim(); ++i) {
    out.bounds[i].first = std::max(bounds[i].first, other.bounds[i].first);
    out.bounds[i].second = std::min(bounds[i].second, other.bounds[i].second);
  }
  return out;
}

std::vector<double> Box::sample(std::mt19937_64& rng, double clamp) const {
  std::vector<double> x(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    double lo = std::max(bounds[i].first, -clamp);
    double hi = std::min(bounds[i].second, clamp);
    if (!(lo < hi)) {
      x[i] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    std::uniform_real_distribution<double> dist(lo, hi);
    x[i] = dist(rng);
  }
  return x;
}

bool Guard::holds(std::span<const double> x) const { return box.contains(map.eval(x)); }

bool guards_hold(const std::vector<Guard>& guards, std::span<const double> x) {
  return std::all_of(guards.begin(), guards.end(), [&](const Guard& g) { return g.holds(x); });
}

Eigen::MatrixXd eval_matrix(const SmoothMap& m, std::span<const double> x, std::size_t rows, std::size_t cols) {
  auto v = m.eval(x);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v[r * cols + c];
  }
  return out;
}

Atlas::Atlas(std::string name, std::size_t dim, std::vector<Chart> charts, std::vector<TransitionSpec> transitions)
    : name_(std::move(name)), dim_(dim), charts_(std::move(charts)) {
  if (charts_.empty()) throw InvariantViolation("atlas-nonempty", "atlas '" + name_ + "' has no charts");
  for (const auto& c : charts_) {
    if (c.box.dim() != dim_) throw DimensionMismatch("chart '" + c.id + "' box has the wrong dimension");
    if (std::count_if(charts_.begin(), charts_.end(), [&](const Chart& o) { return o.id == c.id; }) > 1) {
      throw InvariantViolation("chart-ids-unique", "chart id '" + c.id + "' repeats");
    }
  }
  for (auto& t : transitions) {
    if (!has_chart(t.from) || !has_chart(t.to)) {
      throw InvariantViolation("transition-charts", "transition " + t.from + "->" + t.to + " names an unknown chart");
    }
    if (t.map.dom_dim() != dim_ || t.map.cod_dim() != dim_) {
      throw DimensionMismatch("transition " + t.from + "->" + t.to + " is not a map R^" + std::to_string(dim_) +
                              " -> R^" + std::to_string(dim_));
    }
    if (t.overlap.dim() != dim_) throw DimensionMismatch("transition overlap box has the wrong dimension");
    SmoothMap jac = jacobian_map(t.map);
    transitions_.push_back(Transition{t.from, t.to, std::move(t.map), std::move(t.overlap), std::move(jac)});
  }
}

const Chart& Atlas::chart(const std::string& id) const {
  for (const auto& c : charts_) {
    if (c.id == id) return c;
  }
  throw DomainError("atlas '" + name_ + "' has no chart '" + id + "'");
}

bool Atlas::has_chart(const std::string& id) const {
  return std::any_of(charts_.begin(), charts_.end(), [&](const Chart& c) { return c.id == id; });
}

bool Atlas::contains(const ManifoldPoint& p) const { return has_chart(p.chart) && chart(p.chart).box.contains(p.coords); }

const Transition* Atlas::find_transition(const std::string& from, const std::string& to,
                                         std::span<const double> x) const {
  if (!chart(from).box.contains(x)) return nullptr;
  const Box& target = chart(to).box;
  for (const auto& t : transitions_) {
    if (t.from != from || t.to != to || !t.overlap.contains(x)) continue;
    if (target.contains(t.map.eval(x))) return &t;
  }
  return nullptr;
}

std::vector<std::string> Atlas::charts_containing(const ManifoldPoint& p) const {
  std::vector<std::string> out;
  for (const auto& c : charts_) {
    if (c.id != p.chart && find_transition(p.chart, c.id, p.coords)) out.push_back(c.id);
  }
  return out;
}

namespace {

const Transition& require_transition(const Atlas& atlas, const ManifoldPoint& p, const std::string& target) {
  const Transition* t = atlas.find_transition(p.chart, target, p.coords);
  if (!t) {
    std::string coords;
    for (std::size_t i = 0; i < p.coords.size(); ++i) coords += (i ? ", " : "") + std::to_string(p.coords[i]);
    throw DomainError("point (" + coords + ") of chart '" + p.chart + "' is outside every overlap with chart '" +
                      target + "'");
  }
  return *t;
}

}  // namespace

ManifoldPoint change_chart(const Atlas& atlas, const ManifoldPoint& p, const std::string& target) {
  if (p.chart == target) return p;
  const Transition& t = require_transition(atlas, p, target);
  return ManifoldPoint{target, t.map.eval(p.coords)};
}

TangentVec change_chart(const Atlas& atlas, const TangentVec& v, const std::string& target) {
  if (v.base.chart == target) return v;
  const Transition& t = require_transition(atlas, v.base, target);
  std::size_t n = atlas.dim();
  Eigen::MatrixXd j = eval_matrix(t.jacobian, v.base.coords, n, n);
  Eigen::VectorXd in = Eigen::Map<const Eigen::VectorXd>(v.components.data(), static_cast<Eigen::Index>(n));
  Eigen::VectorXd out = j * in;
  return TangentVec{ManifoldPoint{target, t.map.eval(v.base.coords)}, std::vector<double>(out.begin(), out.end())};
}

Covector change_chart(const Atlas& atlas, const Covector& w, const std::string& target) {
  if (w.base.chart == target) return w;
  const Transition& t = require_transition(atlas, w.base, target);
  std::size_t n = atlas.dim();
  Eigen::MatrixXd j = eval_matrix(t.jacobian, w.base.coords, n, n);
  Eigen::VectorXd in = Eigen::Map<const Eigen::VectorXd>(w.components.data(), static_cast<Eigen::Index>(n));
  Eigen::VectorXd out = j.transpose().partialPivLu().solve(in);
  return Covector{ManifoldPoint{target, t.map.eval(w.base.coords)}, std::vector<double>(out.begin(), out.end())};
}

std::vector<AtlasCheck> check_atlas(const Atlas& atlas, std::size_t samples, std::uint64_t seed, double tol,
                                    double det_floor) {
  std::mt19937_64 rng(seed);
  std::size_t n = atlas.dim();
  AtlasCheck invertible;
  invertible.name = "cocycle:invertible-transition";
  invertible.worst = std::numeric_limits<double>::infinity();
  AtlasCheck pairs;
  pairs.name = "cocycle:round-trip";
  AtlasCheck triples;
  triples.name = "cocycle:triple-overlap";

  for (const auto& t : atlas.transitions()) {
    Box region = t.overlap.intersect(atlas.chart(t.from).box);
    std::size_t accepted = 0;
    for (std::size_t attempt = 0; attempt < samples * 20 && accepted < samples; ++attempt) {
      std::vector<double> x = region.sample(rng);
      if (!region.contains(x)) continue;
      std::vector<double> y = t.map.eval(x);
      if (!atlas.chart(t.to).box.contains(y)) continue;
      ++accepted;
      ManifoldPoint px{t.from, x};

      double det = std::abs(eval_matrix(t.jacobian, x, n, n).determinant());
      ++invertible.points;
      if (det < invertible.worst) {
        invertible.worst = det;
        if (!(det > det_floor)) {
          invertible.passed = false;
          invertible.witness = px;
          invertible.detail = t.from + "->" + t.to + " has |det J| = " + std::to_string(det);
        }
      }

      // back to the source chart
      if (const Transition* back = atlas.find_transition(t.to, t.from, y)) {
        auto x2 = back->map.eval(y);
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) err = std::max(err, mixed_error(x[i], x2[i]));
        ++pairs.points;
        if (err > pairs.worst) {
          pairs.worst = err;
          if (err > tol) {
            pairs.passed = false;
            pairs.witness = px;
            pairs.detail = t.from + "->" + t.to + "->" + t.from + " misses by " + std::to_string(err);
          }
        }
      }

      // through every third chart reachable from both
      for (const auto& c : atlas.charts()) {
        if (c.id == t.from || c.id == t.to) continue;
        const Transition* direct = atlas.find_transition(t.from, c.id, x);
        const Transition* via = atlas.find_transition(t.to, c.id, y);
        if (!direct || !via) continue;
        auto z1 = direct->map.eval(x);
        auto z2 = via->map.eval(y);
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) err = std::max(err, mixed_error(z1[i], z2[i]));
        ++triples.points;
        if (err > triples.worst) {
          triples.worst = err;
          if (err > tol) {
            triples.passed = false;
            triples.witness = px;
            triples.detail = t.from + "->" + t.to + "->" + c.id + " disagrees with " + t.from + "->" + c.id + " by " +
                             std::to_string(err);
          }
        }
      }
    }
  }
  if (invertible.points == 0) invertible.worst = 0.0;
  return {invertible, pairs, triples};
}

void validate_atlas(const Atlas& atlas) {
  for (const auto& check : check_atlas(atlas)) {
    if (!check.passed) throw InvariantViolation(check.name, "atlas '" + atlas.name() + "': " + check.detail);
  }
}

}  // namespace rtc
