#include "rtc/optimize.hpp"

#include "rtc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rtc {

MetricField::MetricField(AtlasPtr atlas, std::vector<std::pair<std::string, SmoothMap>> components)
    : atlas_(std::move(atlas)), components_(std::move(components)) {
  std::size_t n = atlas_->dim();
  for (const auto& [chart, m] : components_) {
    if (!atlas_->has_chart(chart)) throw InvariantViolation("field-charts", "metric names unknown chart '" + chart + "'");
    if (m.dom_dim() != n || m.cod_dim() != n * n) {
      throw DimensionMismatch("metric component on chart '" + chart + "' must be R^" + std::to_string(n) + " -> R^" +
                              std::to_string(n * n));
    }
  }
}

MetricField MetricField::euclidean(AtlasPtr atlas) {
  std::size_t n = atlas->dim();
  std::vector<Expr> entries;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) entries.push_back(Expr::constant(Rational(r == c ? 1 : 0)));
  }
  SmoothMap id(n, entries);
  std::vector<std::pair<std::string, SmoothMap>> components;
  for (const auto& c : atlas->charts()) components.emplace_back(c.id, id);
  return MetricField(std::move(atlas), std::move(components));
}

bool MetricField::has_chart(const std::string& chart) const {
  for (const auto& [id, m] : components_) {
    if (id == chart) return true;
  }
  return false;
}

Eigen::MatrixXd MetricField::at(const ManifoldPoint& p) const {
  for (const auto& [id, m] : components_) {
    if (id == p.chart) return eval_matrix(m, p.coords, atlas_->dim(), atlas_->dim());
  }
  throw DomainError("metric has no component on chart '" + p.chart + "'");
}

FieldCheck check_metric(const MetricField& g, std::size_t samples, std::uint64_t seed) {
  FieldCheck out;
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    ManifoldPoint p = sample_point(g.atlas(), rng);
    if (!g.has_chart(p.chart)) continue;
    Eigen::MatrixXd m = g.at(p);
    ++out.points;
    double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    bool pd = m.llt().info() == Eigen::Success && m.selfadjointView<Eigen::Lower>().eigenvalues().minCoeff() > 0.0;
    out.max_error = std::max(out.max_error, asym);
    if ((asym > 1e-12 || !pd) && out.passed) {
      out.passed = false;
      out.witness = p;
    }
  }
  return out;
}

double objective_value(const ManifoldMap& h, const ManifoldPoint& x) {
  if (h.target().dim() != 1) throw DimensionMismatch("objective '" + h.name() + "' is not real-valued");
  return h.apply(x).coords.at(0);
}

namespace {

double value_or_inf(const ManifoldMap& h, const ManifoldPoint& x) {
  try {
    return objective_value(h, x);
  } catch (const DomainError&) {
    return std::numeric_limits<double>::infinity();
  }
}

std::vector<double> axpy(const std::vector<double>& x, double s, const Eigen::VectorXd& v) {
  std::vector<double> out(x);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= s * v(static_cast<Eigen::Index>(i));
  return out;
}

}  // namespace

StepResult riemannian_gradient_step(const ManifoldMap& h, const MetricField& g, const ManifoldPoint& x,
                                    const StepOptions& options) {
  if (!(options.step > 0.0)) throw DomainError("step must be positive");
  const Atlas& atlas = h.source();
  StepResult result;
  result.point = x;
  result.value_before = objective_value(h, x);
  result.value_after = result.value_before;

  ManifoldPoint hx = h.apply(x);
  Covector dh = cotangent_map(h, x, Covector{hx, {1.0}});
  if (std::all_of(dh.components.begin(), dh.components.end(), [](double c) { return c == 0.0; })) return result;

  std::vector<std::string> charts{x.chart};
  for (auto& c : atlas.charts_containing(x)) charts.push_back(std::move(c));

  struct Local {
    ManifoldPoint x;
    Eigen::VectorXd v;
  };
  std::vector<Local> locals;
  for (const auto& chart : charts) {
    if (!g.has_chart(chart)) continue;
    ManifoldPoint xc = change_chart(atlas, x, chart);
    Covector dc = change_chart(atlas, dh, chart);
    Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(dc.components.data(), static_cast<Eigen::Index>(dc.components.size()));
    locals.push_back(Local{xc, g.at(xc).llt().solve(d)});
  }
  if (locals.empty()) throw DomainError("metric is undefined at the current point");

  auto backtrack = [&](const Local& l) -> bool {
    const Box& box = atlas.chart(l.x.chart).box;
    double s = options.step;
    for (int k = 0; k <= options.max_halvings; ++k, s /= 2) {
      std::vector<double> cand = axpy(l.x.coords, s, l.v);
      if (!box.contains(cand)) continue;
      ManifoldPoint p{l.x.chart, std::move(cand)};
      double value = value_or_inf(h, p);
      if (value <= result.value_before) {
        result.point = std::move(p);
        result.value_after = value;
        result.step_used = s;
        result.halvings = k;
        result.moved = true;
        return true;
      }
    }
    return false;
  };

  for (const auto& l : locals) {
    if (atlas.chart(l.x.chart).box.contains(axpy(l.x.coords, options.step, l.v))) {
      if (backtrack(l)) return result;
      throw DomainError("step underflow: no decrease of '" + h.name() + "' after " +
                        std::to_string(options.max_halvings) + " halvings");
    }
  }
  if (backtrack(locals.front())) return result;
  throw DomainError("gradient step leaves all charts of '" + atlas.name() + "'");
}

DescentResult riemannian_descent(const ManifoldMap& h, const MetricField& g, const ManifoldPoint& start,
                                 std::size_t max_iters, const StepOptions& options,
                                 const std::function<bool(const ManifoldPoint&)>& stop) {
  DescentResult out;
  out.final_point = start;
  out.values.push_back(objective_value(h, start));
  while (out.iterations < max_iters && !(stop && stop(out.final_point))) {
    StepResult s = riemannian_gradient_step(h, g, out.final_point, options);
    if (!s.moved) break;
    ++out.iterations;
    if (s.value_after > out.values.back()) out.monotone = false;
    out.values.push_back(s.value_after);
    out.final_point = std::move(s.point);
  }
  return out;
}

}  // namespace rtc
