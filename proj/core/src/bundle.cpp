#include "rtc/bundle.hpp"

#include "rtc/errors.hpp"
#include "rtc/forward.hpp"
#include "rtc/rational_matrix.hpp"

#include <numeric>

namespace rtc {

namespace {

std::vector<Expr> concat(std::initializer_list<std::vector<Expr>> parts) {
  std::vector<Expr> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

SmoothMap seq(const SmoothMap& f, const SmoothMap& g) { return compose_maps(f, g); }

SmoothMap seq(std::initializer_list<SmoothMap> maps) {
  auto it = maps.begin();
  SmoothMap acc = *it;
  for (++it; it != maps.end(); ++it) acc = compose_maps(acc, *it);
  return acc;
}

SmoothMap proj(std::size_t n, std::size_t offset, std::size_t count) {
  return SmoothMap::projection(n, offset, count);
}

SmoothMap pair2(const SmoothMap& a, const SmoothMap& b) { return pair_maps(a, b); }

std::vector<std::size_t> iota_from(std::size_t start, std::size_t count) {
  std::vector<std::size_t> out(count);
  std::iota(out.begin(), out.end(), start);
  return out;
}

/// (a1, a2, b1, b2) with block sizes (p, q, p, q) -> (a1, b1, a2, b2).
SmoothMap interleave_halves(std::size_t p, std::size_t q) {
  std::vector<std::size_t> perm;
  for (auto v : iota_from(0, p)) perm.push_back(v);
  for (auto v : iota_from(p + q, p)) perm.push_back(v);
  for (auto v : iota_from(p, q)) perm.push_back(v);
  for (auto v : iota_from(2 * p + q, q)) perm.push_back(v);
  return coordinate_map(2 * (p + q), perm);
}

void add_check(BundleReport& report, std::string name, const SmoothMap& lhs, const SmoothMap& rhs,
               const CompareOptions& options) {
  report.checks.push_back({std::move(name), compare_maps(lhs, rhs, options)});
}

void require_same(const DifferentialBundle& a, const DifferentialBundle& b, const char* what) {
  if (a.key() != b.key()) {
    throw DimensionMismatch(std::string(what) + ": bundle '" + a.name + "' does not match '" + b.name + "'");
  }
}

}  // namespace

std::string DifferentialBundle::key() const {
  std::string out = std::to_string(base_dim) + "/" + std::to_string(fibre_dim) + "/" + std::to_string(pair_dim);
  for (const auto* m : {&q, &sigma, &zeta, &lift, &join, &first, &second, &split, &unsplit}) out += "|" + fingerprint(*m);
  return out;
}

SmoothMap DifferentialBundle::fibre_part() const { return seq(split, proj(total_dim(), base_dim, fibre_dim)); }

DifferentialBundle trivial_bundle(std::size_t a, std::size_t x) {
  std::size_t t = a + x;
  auto b = variables(0, a);
  std::vector<Expr> sum;
  for (std::size_t i = 0; i < x; ++i) sum.push_back(Expr::variable(a + i) + Expr::variable(a + x + i));
  return DifferentialBundle{
      "R^" + std::to_string(a) + "xR^" + std::to_string(x),
      a,
      x,
      a + 2 * x,
      proj(t, 0, a),
      SmoothMap(a + 2 * x, concat({b, sum})),
      SmoothMap(a, concat({b, zeros(x)})),
      SmoothMap(t, concat({b, zeros(x), zeros(a), variables(a, x)})),
      SmoothMap(2 * t, concat({b, variables(a, x), variables(t + a, x)})),
      SmoothMap(a + 2 * x, concat({b, variables(a, x)})),
      SmoothMap(a + 2 * x, concat({b, variables(a + x, x)})),
      SmoothMap::identity(t),
      SmoothMap::identity(t),
  };
}

DifferentialBundle tangent_bundle(std::size_t n) {
  DifferentialBundle e = trivial_bundle(n, n);
  e.name = "T(R^" + std::to_string(n) + ")";
  return e;
}

DifferentialBundle tangent_of_bundle(const DifferentialBundle& e) {
  std::size_t t = e.total_dim();
  std::size_t a = e.base_dim;
  std::size_t x = e.fibre_dim;
  SmoothMap regroup = interleave_halves(t, t);  // (e1, de1, e2, de2) -> (e1, e2, de1, de2)
  // T(split) yields (b, f, db, df); the split of T(E) wants (b, db, f, df).
  SmoothMap base_first = coordinate_map(2 * t, [&] {
    std::vector<std::size_t> perm;
    for (auto v : iota_from(0, a)) perm.push_back(v);
    for (auto v : iota_from(t, a)) perm.push_back(v);
    for (auto v : iota_from(a, x)) perm.push_back(v);
    for (auto v : iota_from(t + a, x)) perm.push_back(v);
    return perm;
  }());
  SmoothMap base_first_inv = coordinate_map(2 * t, [&] {
    std::vector<std::size_t> perm;
    for (auto v : iota_from(0, a)) perm.push_back(v);
    for (auto v : iota_from(2 * a, x)) perm.push_back(v);
    for (auto v : iota_from(a, a)) perm.push_back(v);
    for (auto v : iota_from(2 * a + x, x)) perm.push_back(v);
    return perm;
  }());
  return DifferentialBundle{
      "T(" + e.name + ")",
      2 * a,
      2 * x,
      2 * e.pair_dim,
      tangent_functor_map(e.q),
      tangent_functor_map(e.sigma),
      tangent_functor_map(e.zeta),
      seq(tangent_functor_map(e.lift), tangent_structure_transformations(t).flip),
      seq(regroup, tangent_functor_map(e.join)),
      tangent_functor_map(e.first),
      tangent_functor_map(e.second),
      seq(tangent_functor_map(e.split), base_first),
      seq(base_first_inv, tangent_functor_map(e.unsplit)),
  };
}

bool BundleReport::passed() const { return first_failure() == nullptr; }

const LawCheck* BundleReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.result.equal) return &c;
  }
  return nullptr;
}

BundleReport verify_bundle_axioms(const DifferentialBundle& e, const CompareOptions& options) {
  BundleReport report;
  std::size_t t = e.total_dim();
  std::size_t a = e.base_dim;
  SmoothMap id_e = SmoothMap::identity(t);
  auto ts = tangent_structure_transformations(t);
  auto ta = tangent_structure_transformations(a);

  add_check(report, "pair-over-base", seq(e.first, e.q), seq(e.second, e.q), options);
  add_check(report, "sum-over-base", seq(e.sigma, e.q), seq(e.first, e.q), options);
  add_check(report, "zero-section", seq(e.zeta, e.q), SmoothMap::identity(a), options);
  add_check(report, "join-first", seq(e.join, e.first), proj(2 * t, 0, t), options);
  add_check(report, "sum-unit", seq({pair2(id_e, seq(e.q, e.zeta)), e.join, e.sigma}), id_e, options);
  add_check(report, "sum-commutative", seq({pair2(e.second, e.first), e.join, e.sigma}), e.sigma, options);
  {
    SmoothMap p1 = proj(3 * t, 0, t);
    SmoothMap p2 = proj(3 * t, t, t);
    SmoothMap p3 = proj(3 * t, 2 * t, t);
    SmoothMap s12 = seq({pair2(p1, p2), e.join, e.sigma});
    SmoothMap s23 = seq({pair2(p2, p3), e.join, e.sigma});
    add_check(report, "sum-associative", seq({pair2(s12, p3), e.join, e.sigma}),
              seq({pair2(p1, s23), e.join, e.sigma}), options);
  }
  add_check(report, "lift-over-zero", seq(e.lift, ts.p), seq(e.q, e.zeta), options);
  add_check(report, "lift-over-base", seq(e.lift, tangent_functor_map(e.q)), seq(e.q, ta.z), options);
  add_check(report, "lift-zero", seq(e.zeta, e.lift), seq(ta.z, tangent_functor_map(e.zeta)), options);
  {
    SmoothMap lifted = pair2(seq(e.first, e.lift), seq(e.second, e.lift));
    SmoothMap via_tsum = seq({lifted, interleave_halves(t, t), tangent_functor_map(e.join), tangent_functor_map(e.sigma)});
    add_check(report, "lift-additive-tangent-sum", seq(e.sigma, e.lift), via_tsum, options);
    // Both lifts share p_E-base, so (lambda e1, d(lambda e2)) is a point of T_2(E).
    SmoothMap t2_point = pair2(seq(e.first, e.lift), seq({e.second, e.lift, proj(2 * t, t, t)}));
    add_check(report, "lift-additive-sum", seq(e.sigma, e.lift), seq(t2_point, ts.s), options);
  }
  add_check(report, "lift-lift", seq(e.lift, tangent_functor_map(e.lift)), seq(e.lift, ts.lift), options);

  // Agreement with the trivial presentation through split/unsplit.
  DifferentialBundle t0 = trivial_bundle(a, e.fibre_dim);
  std::size_t x = e.fibre_dim;
  add_check(report, "split-unsplit", seq(e.split, e.unsplit), id_e, options);
  add_check(report, "unsplit-split", seq(e.unsplit, e.split), id_e, options);
  add_check(report, "presentation-projection", seq(e.unsplit, e.q), t0.q, options);
  add_check(report, "presentation-zero", seq(e.zeta, e.split), t0.zeta, options);
  {
    SmoothMap b = proj(a + 2 * x, 0, a);
    SmoothMap v1 = pair2(b, proj(a + 2 * x, a, x));
    SmoothMap v2 = pair2(b, proj(a + 2 * x, a + x, x));
    SmoothMap to_pair = seq(pair2(seq(v1, e.unsplit), seq(v2, e.unsplit)), e.join);
    add_check(report, "presentation-sum", seq({to_pair, e.sigma, e.split}), t0.sigma, options);
  }
  add_check(report, "presentation-lift", seq({e.unsplit, e.lift, tangent_functor_map(e.split)}), t0.lift, options);
  return report;
}

BundleReport verify_morphism(const LinearBundleMorphism& m, const CompareOptions& options) {
  BundleReport report;
  add_check(report, "base-square", seq(m.g, m.target.q), seq(m.source.q, m.f), options);
  add_check(report, "lift-square", seq(m.source.lift, tangent_functor_map(m.g)), seq(m.g, m.target.lift), options);
  return report;
}

LinearBundleMorphism tangent_of_morphism(const LinearBundleMorphism& m) {
  return LinearBundleMorphism{tangent_of_bundle(m.source), tangent_of_bundle(m.target), tangent_functor_map(m.f),
                              tangent_functor_map(m.g)};
}

PullbackResult pullback_bundle(const DifferentialBundle& e, const SmoothMap& f) {
  if (f.cod_dim() != e.base_dim) {
    throw DimensionMismatch("pullback_bundle: map lands in R^" + std::to_string(f.cod_dim()) + " but the base is R^" +
                            std::to_string(e.base_dim));
  }
  std::size_t xd = f.dom_dim();
  std::size_t x = e.fibre_dim;
  std::size_t t = xd + x;
  std::size_t te = e.total_dim();
  SmoothMap fib = e.fibre_part();
  // pi1 : (xi, phi) -> unsplit(f(xi), phi)
  SmoothMap pi1 = seq(pair2(seq(proj(t, 0, xd), f), proj(t, xd, x)), e.unsplit);

  std::size_t pd = xd + 2 * x;
  SmoothMap xi2 = proj(pd, 0, xd);
  SmoothMap e1 = seq(pair2(xi2, proj(pd, xd, x)), pi1);
  SmoothMap e2 = seq(pair2(xi2, proj(pd, xd + x, x)), pi1);
  SmoothMap sigma = pair2(xi2, seq({pair2(e1, e2), e.join, e.sigma, fib}));

  SmoothMap zeta = pair2(SmoothMap::identity(xd), seq({f, e.zeta, fib}));

  // lambda e = (e', de'); T(split) of it is (b, f0, db, df) and the pulled-back
  // lift is (xi, f0, 0, df).
  SmoothMap lifted = seq({pi1, e.lift, tangent_functor_map(e.split)});
  std::size_t a = e.base_dim;
  SmoothMap lift = pair_maps(std::vector<SmoothMap>{proj(t, 0, xd), seq(lifted, proj(2 * te, a, x)),
                                                    SmoothMap::zero(t, xd), seq(lifted, proj(2 * te, te + a, x))});

  std::vector<Expr> join = concat({variables(0, t), variables(t + xd, x)});
  DifferentialBundle pb{
      "f*(" + e.name + ")",
      xd,
      x,
      pd,
      proj(t, 0, xd),
      sigma,
      zeta,
      lift,
      SmoothMap(2 * t, std::move(join)),
      proj(pd, 0, t),
      pair2(xi2, proj(pd, xd + x, x)),
      SmoothMap::identity(t),
      SmoothMap::identity(t),
  };
  LinearBundleMorphism cart{pb, e, f, pi1};
  return PullbackResult{std::move(pb), std::move(cart)};
}

LinearBundleMorphism factor_through_pullback(const PullbackResult& pb, const DifferentialBundle& source,
                                             const SmoothMap& u, const SmoothMap& k) {
  const DifferentialBundle& e = pb.cartesian.target;
  if (k.dom_dim() != source.total_dim() || k.cod_dim() != e.total_dim()) {
    throw DimensionMismatch("factor_through_pullback: total map has the wrong signature");
  }
  SmoothMap kprime = pair2(seq(source.q, u), seq(k, e.fibre_part()));
  return LinearBundleMorphism{source, pb.bundle, u, kprime};
}

PullbackIdentityIso pullback_identity_iso(const DifferentialBundle& e) {
  PullbackResult pb = pullback_bundle(e, SmoothMap::identity(e.base_dim));
  SmoothMap id_a = SmoothMap::identity(e.base_dim);
  return PullbackIdentityIso{LinearBundleMorphism{e, pb.bundle, id_a, e.split},
                             LinearBundleMorphism{pb.bundle, e, id_a, e.unsplit}};
}

BundleReport verify_dual_map(const DualFibrationMap& m, const CompareOptions& options) {
  BundleReport report;
  PullbackResult pb = pullback_bundle(m.target, m.f);
  if (m.g.dom_dim() != pb.bundle.total_dim() || m.g.cod_dim() != m.source.total_dim()) {
    throw DimensionMismatch("dual map: backward map has the wrong signature");
  }
  add_check(report, "over-base", seq(m.g, m.source.q), pb.bundle.q, options);
  add_check(report, "lift-square", seq(pb.bundle.lift, tangent_functor_map(m.g)), seq(m.g, m.source.lift), options);
  return report;
}

DualFibrationMap dual_identity(const DifferentialBundle& e) {
  return DualFibrationMap{e, e, SmoothMap::identity(e.base_dim), e.unsplit};
}

DualFibrationMap dual_compose(const DualFibrationMap& m1, const DualFibrationMap& m2) {
  require_same(m1.target, m2.source, "dual_compose");
  std::size_t a = m1.source.base_dim;
  std::size_t x2 = m2.target.fibre_dim;
  std::size_t d = a + x2;
  SmoothMap base = proj(d, 0, a);
  // (a, phi'') -> (f(a), phi'') -> k -> fibre of E' -> (a, phi') -> g
  SmoothMap k_args = pair2(seq(base, m1.f), proj(d, a, x2));
  SmoothMap back = seq(pair2(base, seq({k_args, m2.g, m1.target.fibre_part()})), m1.g);
  return DualFibrationMap{m1.source, m2.target, seq(m1.f, m2.f), back};
}

Comparison compare_dual_maps(const DualFibrationMap& a, const DualFibrationMap& b, const CompareOptions& options) {
  Comparison cf = compare_maps(a.f, b.f, options);
  Comparison cg = compare_maps(a.g, b.g, options);
  Comparison out = cf.equal ? cg : cf;
  out.equal = cf.equal && cg.equal;
  out.exact = cf.exact && cg.exact;
  out.max_error = std::max(cf.max_error, cg.max_error);
  return out;
}

DualFibrationMap reverse_tangent_dual(const SmoothMap& f) {
  return DualFibrationMap{tangent_bundle(f.dom_dim()), tangent_bundle(f.cod_dim()), f, reverse_tangent_map(f)};
}

DualFibrationMap tangent_of_dual(const DualFibrationMap& m) {
  std::size_t a = m.source.base_dim;
  std::size_t x = m.target.fibre_dim;
  // (a, da, phi', dphi') -> (a, phi', da, dphi')
  std::vector<std::size_t> perm = iota_from(0, a);
  for (auto v : iota_from(2 * a, x)) perm.push_back(v);
  for (auto v : iota_from(a, a)) perm.push_back(v);
  for (auto v : iota_from(2 * a + x, x)) perm.push_back(v);
  SmoothMap regroup = coordinate_map(2 * (a + x), perm);
  return DualFibrationMap{tangent_of_bundle(m.source), tangent_of_bundle(m.target), tangent_functor_map(m.f),
                          seq(regroup, tangent_functor_map(m.g))};
}

bool SystemOfBundles::contains_key(const std::string& key) const {
  std::lock_guard<std::mutex> lock(mutex_);
  return keys_.count(key) > 0;
}

bool SystemOfBundles::contains(const DifferentialBundle& e) const {
  if (e.base_dim == e.fibre_dim && e.key() == tangent_bundle(e.base_dim).key()) return true;
  return contains_key(e.key());
}

void SystemOfBundles::add(const DifferentialBundle& e) { add_key(e.key()); }

void SystemOfBundles::add_key(const std::string& key) {
  std::lock_guard<std::mutex> lock(mutex_);
  keys_.insert(key);
}

std::size_t SystemOfBundles::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return keys_.size();
}

DifferentialBundle SystemOfBundles::tangent_of_bundle(const DifferentialBundle& e) {
  DifferentialBundle out = rtc::tangent_of_bundle(e);
  if (contains(e)) add(out);
  return out;
}

PullbackResult SystemOfBundles::pullback_bundle(const DifferentialBundle& e, const SmoothMap& f) {
  PullbackResult out = rtc::pullback_bundle(e, f);
  if (contains(e)) add(out.bundle);
  return out;
}

DifferentialBundle involution_star(const SystemOfBundles& system, const DifferentialBundle& e) {
  if (!system.contains(e)) {
    throw InvariantViolation("bundle-in-system", "bundle '" + e.name + "' is not registered in the system");
  }
  return e;
}

DualFibrationMap involution_star(const SystemOfBundles& system, const LinearBundleMorphism& m) {
  DifferentialBundle src = involution_star(system, m.source);
  DifferentialBundle tgt = involution_star(system, m.target);
  std::size_t a = m.source.base_dim;
  // Fibre part of g as a map linear in its second block: (a, phi) -> fibre'(g(unsplit(a, phi))).
  SmoothMap h = seq({m.source.unsplit, m.g, m.target.fibre_part()});
  LinearInSecond dag = linear_dagger(LinearInSecond::trusted(h, a));
  std::size_t d = a + m.target.fibre_dim;
  SmoothMap gstar = seq(pair2(proj(d, 0, a), dag.carrier()), m.source.unsplit);
  return DualFibrationMap{src, tgt, m.f, gstar};
}

LinearBundleMorphism involution_star(const SystemOfBundles& system, const DualFibrationMap& m) {
  DifferentialBundle src = involution_star(system, m.source);
  DifferentialBundle tgt = involution_star(system, m.target);
  std::size_t a = m.source.base_dim;
  SmoothMap h = seq(m.g, m.source.fibre_part());
  LinearInSecond dag = linear_dagger(LinearInSecond::trusted(h, a));
  // e -> (a, phi) -> (f(a), N(a)^T phi) -> unsplit'
  std::size_t t = m.source.total_dim();
  SmoothMap split = m.source.split;
  SmoothMap g = seq(pair2(seq({split, proj(t, 0, a), m.f}), seq(split, dag.carrier())), m.target.unsplit);
  return LinearBundleMorphism{src, tgt, m.f, g};
}

LinearBundleMorphism double_dual_unit(const DifferentialBundle& e) {
  return LinearBundleMorphism{e, e, SmoothMap::identity(e.base_dim), SmoothMap::identity(e.total_dim())};
}

LinearBundleMorphism tangent_star_iso(const DifferentialBundle& e) {
  DifferentialBundle te = tangent_of_bundle(e);
  std::size_t b = te.base_dim;
  std::size_t x = e.fibre_dim;
  std::vector<std::size_t> perm = iota_from(0, b);
  for (auto v : iota_from(b + x, x)) perm.push_back(v);
  for (auto v : iota_from(b, x)) perm.push_back(v);
  SmoothMap swap = coordinate_map(te.total_dim(), perm);
  return LinearBundleMorphism{te, te, SmoothMap::identity(b), seq({te.split, swap, te.unsplit})};
}

std::vector<std::vector<Expr>> dual_fibre_matrix(const DualFibrationMap& m) {
  SmoothMap h = seq(m.g, m.source.fibre_part());
  return LinearInSecond::trusted(h, m.source.base_dim).matrix();
}

CartesianInverse cartesian_dual_inverse(const DualFibrationMap& m, const CompareOptions& options) {
  auto entries = dual_fibre_matrix(m);
  std::size_t rows = m.source.fibre_dim;
  std::size_t cols = m.target.fibre_dim;
  if (rows != cols) throw DomainError("cartesian_dual_inverse: fibre dimensions differ");
  RationalMatrix n(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      Expr v = normalize(entries[r][c]);
      if (!v.is_constant()) throw DomainError("cartesian_dual_inverse: fibre matrix depends on the base point");
      n(r, c) = v.value();
    }
  }
  auto inv = n.inverse();
  if (!inv) throw DomainError("cartesian_dual_inverse: fibre matrix is singular");
  std::size_t a = m.source.base_dim;
  std::size_t t = m.source.total_dim();
  auto phi = variables(a, rows);
  std::vector<Expr> out = variables(0, a);
  for (std::size_t r = 0; r < cols; ++r) {
    Expr acc = Expr::constant(0);
    for (std::size_t c = 0; c < rows; ++c) acc = acc + Expr::constant((*inv)(r, c)) * phi[c];
    out.push_back(acc);
  }
  SmoothMap inverse = seq(m.source.split, SmoothMap(t, std::move(out)));
  CartesianInverse result{inverse, {}, {}};
  result.left = compare_maps(seq(m.g, inverse), SmoothMap::identity(m.g.dom_dim()), options);
  result.right = compare_maps(seq(inverse, m.g), SmoothMap::identity(t), options);
  return result;
}

FlipStar canonical_flip_star(std::size_t n, const CompareOptions& options) {
  SystemOfBundles system;
  DifferentialBundle ta = tangent_bundle(n);
  DifferentialBundle tbar = system.tangent_of_bundle(ta);
  DifferentialBundle tta = tangent_bundle(2 * n);
  auto ts = tangent_structure_transformations(n);

  FlipStar out;
  out.n = n;
  out.flip = LinearBundleMorphism{tbar, tta, SmoothMap::identity(2 * n), ts.flip};
  out.star = involution_star(system, out.flip);
  // Land in T(T*A) through the tangent-star comparison iso.
  LinearBundleMorphism iso = tangent_star_iso(ta);
  DualFibrationMap to_tt_star{out.star.source, out.star.target, out.star.f, seq(out.star.g, iso.g)};
  CartesianInverse inv = cartesian_dual_inverse(to_tt_star, options);
  out.map = inv.inverse;
  out.inverse = to_tt_star.g;

  SmoothMap pstar_ta = proj(4 * n, 0, 2 * n);
  SmoothMap t_pstar = tangent_functor_map(proj(2 * n, 0, n));
  out.triangle = compare_maps(seq(out.map, pstar_ta), t_pstar, options);
  out.round_trip = compare_maps(seq(out.map, out.inverse), SmoothMap::identity(4 * n), options);
  return out;
}

Comparison flip_star_naturality(const SmoothMap& f, const CompareOptions& options) {
  std::size_t n = f.dom_dim();
  std::size_t m = f.cod_dim();
  std::size_t d = 2 * n + 2 * m;  // (x, dx, zeta, dzeta)
  SmoothMap x = proj(d, 0, n);
  SmoothMap dx = proj(d, n, n);
  SmoothMap z = proj(d, 2 * n, m);
  SmoothMap dz = proj(d, 2 * n + m, m);

  SmoothMap c_a = canonical_flip_star(n, options).map;
  SmoothMap c_b = canonical_flip_star(m, options).map;

  SmoothMap lhs = seq({pair_maps(std::vector<SmoothMap>{x, z, dx, dz}), tangent_functor_map(reverse_tangent_map(f)), c_a});

  SmoothMap tf = seq(pair2(x, dx), tangent_functor_map(f));  // (y, dy)
  SmoothMap y = seq(tf, proj(2 * m, 0, m));
  SmoothMap dy = seq(tf, proj(2 * m, m, m));
  SmoothMap fibre_b = seq({pair_maps(std::vector<SmoothMap>{y, z, dy, dz}), c_b, proj(4 * m, 2 * m, 2 * m)});
  SmoothMap rhs = seq(pair_maps(std::vector<SmoothMap>{x, dx, fibre_b}), reverse_tangent_map(tangent_functor_map(f)));
  return compare_maps(lhs, rhs, options);
}

}  // namespace rtc
