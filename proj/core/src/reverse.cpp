#include "rtc/reverse.hpp"

#include "rtc/compare.hpp"
#include "rtc/errors.hpp"
#include "rtc/forward.hpp"

namespace rtc {

SmoothMap r_combinator(const SmoothMap& f) {
  std::size_t n = f.dom_dim();
  std::size_t m = f.cod_dim();
  auto jac = jacobian_exprs(f);
  std::vector<Expr> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Expr acc = Expr::constant(0);
    for (std::size_t j = 0; j < m; ++j) acc = acc + jac[j][i] * Expr::variable(n + j);
    out.push_back(acc);
  }
  return SmoothMap(n + m, std::move(out));
}

SmoothMap reverse_tangent_map(const SmoothMap& f) {
  std::size_t n = f.dom_dim();
  return pair_maps(SmoothMap::projection(n + f.cod_dim(), 0, n), r_combinator(f));
}

LinearityCheck is_linear_in_second(const SmoothMap& g, std::size_t context_dim, std::size_t samples, double tol,
                                   std::uint64_t seed) {
  if (context_dim > g.dom_dim()) throw DimensionMismatch("is_linear_in_second: context larger than the domain");
  std::size_t c = context_dim;
  std::size_t n = g.dom_dim();
  // <pi0, 0, 0, pi1> : R^{c+a} -> T(R^{c+a}) = R^{2(c+a)}
  std::vector<Expr> embed = variables(0, c);
  auto pad = zeros(n - c);
  embed.insert(embed.end(), pad.begin(), pad.end());
  pad = zeros(c);
  embed.insert(embed.end(), pad.begin(), pad.end());
  auto lin = variables(c, n - c);
  embed.insert(embed.end(), lin.begin(), lin.end());
  SmoothMap lhs = compose_maps(SmoothMap(n, std::move(embed)), d_combinator(g));

  CompareOptions opts;
  opts.samples = samples;
  opts.tol = tol;
  opts.seed = seed;
  Comparison cmp = compare_maps(lhs, g, opts);
  LinearityCheck out;
  out.linear = cmp.equal;
  out.exact = cmp.exact;
  out.max_error = cmp.max_error;
  out.points = cmp.points;
  if (!cmp.equal) out.witness = cmp.worst_point;
  return out;
}

LinearInSecond::LinearInSecond(SmoothMap carrier, std::size_t context_dim, bool)
    : carrier_(std::move(carrier)), context_dim_(context_dim) {
  if (context_dim_ > carrier_.dom_dim()) throw DimensionMismatch("LinearInSecond: context larger than the domain");
}

LinearInSecond::LinearInSecond(SmoothMap carrier, std::size_t context_dim)
    : LinearInSecond(std::move(carrier), context_dim, true) {
  auto check = is_linear_in_second(carrier_, context_dim_);
  if (!check.linear) {
    std::string where;
    for (std::size_t k = 0; k < check.witness.size(); ++k) where += (k ? ", " : "") + std::to_string(check.witness[k]);
    throw NotLinear("map is not linear in its second argument; witness (" + where + ")", check.witness);
  }
}

LinearInSecond LinearInSecond::trusted(SmoothMap carrier, std::size_t context_dim) {
  return LinearInSecond(std::move(carrier), context_dim, true);
}

std::vector<std::vector<Expr>> LinearInSecond::matrix() const {
  std::size_t c = context_dim_;
  std::size_t a = linear_dim();
  std::vector<Expr> at_zero = variables(0, c);
  auto pad = zeros(a);
  at_zero.insert(at_zero.end(), pad.begin(), pad.end());
  std::vector<std::vector<Expr>> m(cod_dim(), std::vector<Expr>(a, Expr::constant(0)));
  for (std::size_t j = 0; j < a; ++j) {
    std::vector<Expr> column;
    for (const auto& comp : carrier_.components()) column.push_back(differentiate(comp, c + j));
    auto fixed = substitute_all(column, at_zero);
    for (std::size_t k = 0; k < cod_dim(); ++k) m[k][j] = fixed[k];
  }
  return m;
}

LinearInSecond linear_dagger(const LinearInSecond& g) {
  std::size_t c = g.context_dim();
  std::size_t b = g.cod_dim();
  auto m = g.matrix();
  std::vector<Expr> out;
  for (std::size_t j = 0; j < g.linear_dim(); ++j) {
    Expr acc = Expr::constant(0);
    for (std::size_t k = 0; k < b; ++k) acc = acc + m[k][j] * Expr::variable(c + k);
    out.push_back(acc);
  }
  return LinearInSecond::trusted(SmoothMap(c + b, std::move(out)), c);
}

LinearInSecond fibre_compose(const LinearInSecond& g, const LinearInSecond& h) {
  if (g.context_dim() != h.context_dim() || g.cod_dim() != h.linear_dim()) {
    throw DimensionMismatch("fibre_compose: incompatible context or fibre dimensions");
  }
  std::size_t c = g.context_dim();
  std::vector<Expr> inner = variables(0, c);
  inner.insert(inner.end(), g.carrier().components().begin(), g.carrier().components().end());
  SmoothMap pre(g.carrier().dom_dim(), std::move(inner));
  return LinearInSecond::trusted(compose_maps(pre, h.carrier()), c);
}

SmoothMap crdc_from_involution(const SmoothMap& f) {
  auto df = LinearInSecond::trusted(d_combinator(f), f.dom_dim());
  return linear_dagger(df).carrier();
}

}  // namespace rtc
