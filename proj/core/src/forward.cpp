#include "rtc/forward.hpp"

#include "rtc/errors.hpp"

namespace rtc {

SmoothMap d_combinator(const SmoothMap& f) {
  std::size_t n = f.dom_dim();
  std::vector<Expr> out;
  out.reserve(f.cod_dim());
  for (const auto& c : f.components()) {
    Expr acc = Expr::constant(0);
    for (std::size_t i = 0; i < n; ++i) acc = acc + differentiate(c, i) * Expr::variable(n + i);
    out.push_back(acc);
  }
  return SmoothMap(2 * n, std::move(out));
}

SmoothMap tangent_functor_map(const SmoothMap& f) {
  return pair_maps(shift_domain(f, 2 * f.dom_dim(), 0), d_combinator(f));
}

SmoothMap tangent2_map(const SmoothMap& f) { return tangent_functor_map(tangent_functor_map(f)); }

SmoothMap tangent_pullback_map(const SmoothMap& f) {
  std::size_t n = f.dom_dim();
  SmoothMap df = d_combinator(f);
  auto x = variables(0, n);
  auto with = [&](std::size_t offset) {
    std::vector<Expr> repl = x;
    auto v = variables(offset, n);
    repl.insert(repl.end(), v.begin(), v.end());
    return SmoothMap(3 * n, substitute_all(df.components(), repl));
  };
  const SmoothMap blocks[] = {shift_domain(f, 3 * n, 0), with(n), with(2 * n)};
  return pair_maps(blocks);
}

TangentStructureMaps tangent_structure_transformations(std::size_t n) {
  auto x = variables(0, n);
  auto cat = [](std::initializer_list<std::vector<Expr>> parts) {
    std::vector<Expr> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
  };
  std::vector<Expr> sum;
  for (std::size_t i = 0; i < n; ++i) sum.push_back(Expr::variable(n + i) + Expr::variable(2 * n + i));
  return TangentStructureMaps{
      n,
      SmoothMap(2 * n, x),
      SmoothMap(3 * n, cat({x, sum})),
      SmoothMap(n, cat({x, zeros(n)})),
      SmoothMap(2 * n, cat({x, zeros(n), zeros(n), variables(n, n)})),
      SmoothMap(4 * n, cat({x, variables(2 * n, n), variables(n, n), variables(3 * n, n)})),
  };
}

SmoothMap jacobian_map(const SmoothMap& f) {
  std::vector<Expr> out;
  out.reserve(f.cod_dim() * f.dom_dim());
  for (const auto& row : jacobian_exprs(f)) out.insert(out.end(), row.begin(), row.end());
  return SmoothMap(f.dom_dim(), std::move(out));
}

Eigen::MatrixXd jacobian(const SmoothMap& f, std::span<const double> x) {
  auto values = jacobian_map(f).eval(x);
  Eigen::MatrixXd j(f.cod_dim(), f.dom_dim());
  for (std::size_t r = 0; r < f.cod_dim(); ++r) {
    for (std::size_t c = 0; c < f.dom_dim(); ++c) j(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = values[r * f.dom_dim() + c];
  }
  return j;
}

std::vector<double> central_difference(const SmoothMap& f, std::span<const double> x, std::size_t i, double h) {
  if (i >= f.dom_dim()) throw DomainError("central_difference: index out of range");
  std::vector<double> plus(x.begin(), x.end());
  std::vector<double> minus = plus;
  plus[i] += h;
  minus[i] -= h;
  auto fp = f.eval(plus);
  auto fm = f.eval(minus);
  std::vector<double> out(fp.size());
  for (std::size_t j = 0; j < fp.size(); ++j) out[j] = (fp[j] - fm[j]) / (2 * h);
  return out;
}

}  // namespace rtc
