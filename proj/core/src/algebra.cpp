#include "rtc/algebra.hpp"

#include "rtc/errors.hpp"

#include <algorithm>
#include <set>

namespace rtc {

namespace {

Polynomial var(std::size_t i) { return Polynomial::variable(static_cast<std::uint32_t>(i)); }

std::vector<Polynomial> vars(std::size_t n) {
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(var(i));
  return out;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string_view strip_prefix(std::string_view text, std::string_view prefix) {
  auto at = text.find_first_not_of(" \t\r\n");
  if (at != std::string_view::npos && text.substr(at, prefix.size()) == prefix) return text.substr(at + prefix.size());
  return text;
}

void require_polynomial_ring(const Algebra& a, const char* what) {
  if (!a.is_polynomial_ring()) {
    throw DomainError(std::string(what) + " needs a polynomial ring, got " + a.to_string());
  }
}

}  // namespace

Algebra::Algebra(std::size_t generators, std::optional<Polynomial> modulus, std::vector<Group> groups)
    : generators_(generators), modulus_(std::move(modulus)), groups_(std::move(groups)) {
  if (modulus_) {
    const Polynomial& m = *modulus_;
    std::uint32_t k = m.degree_in(0);
    if (generators_ == 0 || k == 0 || m.variable_bound() > 1 || m.degree() != k ||
        m.coefficient(Monomial{{0, k}}) != 1) {
      throw InvariantViolation("monic-modulus", "modulus must be monic of positive degree in x0");
    }
  }
  std::set<std::uint32_t> seen;
  for (const auto& g : groups_) {
    for (auto v : g) {
      if (v >= generators_) throw DimensionMismatch("nilpotent group names x" + std::to_string(v) + " outside the algebra");
      if (!seen.insert(v).second) throw InvariantViolation("disjoint-groups", "x" + std::to_string(v) + " is in two groups");
      if (modulus_ && v == 0) throw InvariantViolation("disjoint-groups", "x0 carries the modulus");
    }
  }
}

Algebra Algebra::quotient(const Polynomial& monic) { return Algebra(1, monic); }

std::optional<std::size_t> Algebra::rank() const {
  if (modulus_ && generators_ == 1 && groups_.empty()) return modulus_->degree_in(0);
  return std::nullopt;
}

Polynomial Algebra::reduce(const Polynomial& p) const {
  Polynomial out;
  for (const auto& [mono, c] : p.terms()) {
    bool vanishes = std::any_of(groups_.begin(), groups_.end(), [&](const Group& g) {
      std::uint32_t d = 0;
      for (const auto& [v, e] : mono) {
        if (std::find(g.begin(), g.end(), v) != g.end()) d += e;
      }
      return d >= 2;
    });
    if (!vanishes) out += Polynomial::monomial(mono, c);
  }
  if (!modulus_) return out;

  std::uint32_t k = modulus_->degree_in(0);
  Polynomial tail = Polynomial::monomial(Monomial{{0, k}}, Rational(1)) - *modulus_;
  for (;;) {
    Polynomial next;
    bool changed = false;
    for (const auto& [mono, c] : out.terms()) {
      if (mono.empty() || mono.front().first != 0 || mono.front().second < k) {
        next += Polynomial::monomial(mono, c);
        continue;
      }
      Monomial rest = mono;
      rest.front().second -= k;
      if (rest.front().second == 0) rest.erase(rest.begin());
      next += Polynomial::monomial(rest, c) * tail;
      changed = true;
    }
    out = std::move(next);
    if (!changed) return out;
  }
}

Algebra Algebra::adjoin_group(std::size_t count) const {
  auto groups = groups_;
  Group g;
  for (std::size_t i = 0; i < count; ++i) g.push_back(static_cast<std::uint32_t>(generators_ + i));
  groups.push_back(std::move(g));
  return Algebra(generators_ + count, modulus_, std::move(groups));
}

std::string Algebra::to_string() const {
  std::string out = "Q[";
  for (std::size_t i = 0; i < generators_; ++i) out += (i ? "," : "") + std::string("x") + std::to_string(i);
  out += "]";
  if (modulus_) out += "/(" + modulus_->to_string() + ")";
  for (const auto& g : groups_) {
    out += " nil{";
    for (std::size_t i = 0; i < g.size(); ++i) out += (i ? "," : "") + std::string("x") + std::to_string(g[i]);
    out += "}";
  }
  return out;
}

bool operator==(const Algebra& a, const Algebra& b) {
  return a.generators_ == b.generators_ && a.modulus_ == b.modulus_ && a.groups_ == b.groups_;
}

AlgebraMorphism::AlgebraMorphism(Algebra source, Algebra target, std::vector<Polynomial> images, bool)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {}

AlgebraMorphism::AlgebraMorphism(Algebra source, Algebra target, std::vector<Polynomial> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_.generators()) {
    throw DimensionMismatch("morphism gives " + std::to_string(images_.size()) + " images for " +
                            std::to_string(source_.generators()) + " generators");
  }
  for (auto& img : images_) {
    if (img.variable_bound() > target_.generators()) throw DimensionMismatch("image uses a variable outside the target");
    img = target_.reduce(img);
  }
  if (source_.modulus() && !apply(*source_.modulus()).is_zero()) {
    throw InvariantViolation("well-defined", "the modulus of " + source_.to_string() + " does not map to zero");
  }
  for (const auto& g : source_.groups()) {
    for (std::size_t a = 0; a < g.size(); ++a) {
      for (std::size_t b = a; b < g.size(); ++b) {
        if (!target_.reduce(images_[g[a]] * images_[g[b]]).is_zero()) {
          throw InvariantViolation("well-defined", "x" + std::to_string(g[a]) + "*x" + std::to_string(g[b]) +
                                                       " does not map to zero");
        }
      }
    }
  }
}

AlgebraMorphism AlgebraMorphism::identity(const Algebra& a) { return AlgebraMorphism(a, a, vars(a.generators()), true); }

Polynomial AlgebraMorphism::apply(const Polynomial& p) const {
  if (p.variable_bound() > source_.generators()) throw DimensionMismatch("element uses a variable outside the source");
  return target_.reduce(p.substitute(images_));
}

std::string AlgebraMorphism::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    out += (i ? "; " : "") + std::string("x") + std::to_string(i) + " -> " + images_[i].to_string();
  }
  return out;
}

bool operator==(const AlgebraMorphism& a, const AlgebraMorphism& b) {
  return a.source_ == b.source_ && a.target_ == b.target_ && a.images_ == b.images_;
}

AlgebraMorphism compose(const AlgebraMorphism& f, const AlgebraMorphism& g) {
  if (!(f.target() == g.source())) {
    throw DimensionMismatch("cannot compose: " + f.target().to_string() + " is not " + g.source().to_string());
  }
  std::vector<Polynomial> images;
  for (const auto& img : f.images()) images.push_back(g.apply(img));
  return AlgebraMorphism(f.source(), g.target(), std::move(images), true);
}

AlgebraMorphism AlgebraTangent::seq(const AlgebraMorphism& f, const AlgebraMorphism& g) const {
  return contravariant() ? compose(g, f) : compose(f, g);
}

const Algebra& AlgebraTangent::category_source(const AlgebraMorphism& f) const {
  return contravariant() ? f.target() : f.source();
}

const Algebra& AlgebraTangent::category_target(const AlgebraMorphism& f) const {
  return contravariant() ? f.source() : f.target();
}

// Dual numbers: the tangent variables are appended after the base generators.

Algebra DualNumbers::tangent(const Algebra& a) const { return a.adjoin_group(1); }

Algebra DualNumbers::tangent_power(const Algebra& a, std::size_t k) const { return a.adjoin_group(k); }

AlgebraMorphism DualNumbers::tangent(const AlgebraMorphism& f) const { return tangent_power(f, 1); }

AlgebraMorphism DualNumbers::tangent_power(const AlgebraMorphism& f, std::size_t k) const {
  std::size_t m = f.target().generators();
  auto images = f.images();
  for (std::size_t r = 0; r < k; ++r) images.push_back(var(m + r));
  return AlgebraMorphism(tangent_power(f.source(), k), tangent_power(f.target(), k), std::move(images));
}

AlgebraMorphism DualNumbers::p(const Algebra& a) const {
  auto images = vars(a.generators());
  images.emplace_back();
  return AlgebraMorphism(tangent(a), a, std::move(images));
}

AlgebraMorphism DualNumbers::z(const Algebra& a) const { return AlgebraMorphism(a, tangent(a), vars(a.generators())); }

AlgebraMorphism DualNumbers::s(const Algebra& a) const {
  std::size_t n = a.generators();
  auto images = vars(n);
  images.push_back(var(n));
  images.push_back(var(n));
  return AlgebraMorphism(tangent_power(a, 2), tangent(a), std::move(images));
}

AlgebraMorphism DualNumbers::lift(const Algebra& a) const {
  std::size_t n = a.generators();
  auto images = vars(n);
  images.push_back(var(n) * var(n + 1));
  return AlgebraMorphism(tangent(a), tangent2(a), std::move(images));
}

AlgebraMorphism DualNumbers::flip(const Algebra& a) const {
  std::size_t n = a.generators();
  auto images = vars(n);
  images.push_back(var(n + 1));
  images.push_back(var(n));
  return AlgebraMorphism(tangent2(a), tangent2(a), std::move(images));
}

AlgebraMorphism DualNumbers::unit_pair(const Algebra& a) const {
  std::size_t n = a.generators();
  auto images = vars(n);
  images.push_back(var(n));
  return AlgebraMorphism(tangent(a), tangent_power(a, 2), std::move(images));
}

AlgebraMorphism DualNumbers::swap(const Algebra& a) const {
  std::size_t n = a.generators();
  auto images = vars(n);
  images.push_back(var(n + 1));
  images.push_back(var(n));
  return AlgebraMorphism(tangent_power(a, 2), tangent_power(a, 2), std::move(images));
}

AlgebraMorphism DualNumbers::sum_left(const Algebra& a) const {
  std::size_t n = a.generators();
  auto images = vars(n);
  images.push_back(var(n));
  images.push_back(var(n));
  images.push_back(var(n + 1));
  return AlgebraMorphism(tangent_power(a, 3), tangent_power(a, 2), std::move(images));
}

AlgebraMorphism DualNumbers::sum_right(const Algebra& a) const {
  std::size_t n = a.generators();
  auto images = vars(n);
  images.push_back(var(n));
  images.push_back(var(n + 1));
  images.push_back(var(n + 1));
  return AlgebraMorphism(tangent_power(a, 3), tangent_power(a, 2), std::move(images));
}

// Kahler: T_k(A) = Q[x, d1x, .., dkx] with block r at offset r*n.

Algebra Kahler::tangent(const Algebra& a) const { return tangent_power(a, 1); }

Algebra Kahler::tangent_power(const Algebra& a, std::size_t k) const {
  require_polynomial_ring(a, "Kahler tangent");
  return Algebra::polynomial((k + 1) * a.generators());
}

AlgebraMorphism Kahler::tangent(const AlgebraMorphism& f) const { return tangent_power(f, 1); }

AlgebraMorphism Kahler::tangent_power(const AlgebraMorphism& f, std::size_t k) const {
  require_polynomial_ring(f.source(), "Kahler tangent");
  require_polynomial_ring(f.target(), "Kahler tangent");
  std::size_t m = f.target().generators();
  auto images = f.images();
  for (std::size_t r = 1; r <= k; ++r) {
    for (const auto& fi : f.images()) {
      Polynomial d;
      for (std::size_t j = 0; j < m; ++j) d += fi.derivative(static_cast<std::uint32_t>(j)) * var(r * m + j);
      images.push_back(std::move(d));
    }
  }
  return AlgebraMorphism(tangent_power(f.source(), k), tangent_power(f.target(), k), std::move(images));
}

AlgebraMorphism Kahler::p(const Algebra& a) const { return AlgebraMorphism(a, tangent(a), vars(a.generators())); }

AlgebraMorphism Kahler::z(const Algebra& a) const {
  auto images = vars(a.generators());
  images.resize(2 * a.generators());
  return AlgebraMorphism(tangent(a), a, std::move(images));
}

AlgebraMorphism Kahler::s(const Algebra& a) const {
  std::size_t n = a.generators();
  auto images = vars(n);
  for (std::size_t i = 0; i < n; ++i) images.push_back(var(n + i) + var(2 * n + i));
  return AlgebraMorphism(tangent(a), tangent_power(a, 2), std::move(images));
}

AlgebraMorphism Kahler::lift(const Algebra& a) const {
  // (x, dx, dx', ddx) -> (x, 0, 0, dx)
  std::size_t n = a.generators();
  auto images = vars(n);
  images.resize(3 * n);
  for (std::size_t i = 0; i < n; ++i) images.push_back(var(n + i));
  return AlgebraMorphism(tangent2(a), tangent(a), std::move(images));
}

AlgebraMorphism Kahler::flip(const Algebra& a) const {
  std::size_t n = a.generators();
  auto images = vars(n);
  for (std::size_t i = 0; i < n; ++i) images.push_back(var(2 * n + i));
  for (std::size_t i = 0; i < n; ++i) images.push_back(var(n + i));
  for (std::size_t i = 0; i < n; ++i) images.push_back(var(3 * n + i));
  return AlgebraMorphism(tangent2(a), tangent2(a), std::move(images));
}

AlgebraMorphism Kahler::unit_pair(const Algebra& a) const {
  std::size_t n = a.generators();
  auto images = vars(2 * n);
  images.resize(3 * n);
  return AlgebraMorphism(tangent_power(a, 2), tangent(a), std::move(images));
}

AlgebraMorphism Kahler::swap(const Algebra& a) const {
  std::size_t n = a.generators();
  auto images = vars(n);
  for (std::size_t i = 0; i < n; ++i) images.push_back(var(2 * n + i));
  for (std::size_t i = 0; i < n; ++i) images.push_back(var(n + i));
  return AlgebraMorphism(tangent_power(a, 2), tangent_power(a, 2), std::move(images));
}

AlgebraMorphism Kahler::sum_left(const Algebra& a) const {
  std::size_t n = a.generators();
  auto images = vars(n);
  for (std::size_t i = 0; i < n; ++i) images.push_back(var(n + i) + var(2 * n + i));
  for (std::size_t i = 0; i < n; ++i) images.push_back(var(3 * n + i));
  return AlgebraMorphism(tangent_power(a, 2), tangent_power(a, 3), std::move(images));
}

AlgebraMorphism Kahler::sum_right(const Algebra& a) const {
  std::size_t n = a.generators();
  auto images = vars(n);
  for (std::size_t i = 0; i < n; ++i) images.push_back(var(n + i));
  for (std::size_t i = 0; i < n; ++i) images.push_back(var(2 * n + i) + var(3 * n + i));
  return AlgebraMorphism(tangent_power(a, 2), tangent_power(a, 3), std::move(images));
}

AlgebraMorphism dualnum_tangent(const AlgebraMorphism& f) { return DualNumbers().tangent(f); }

AlgebraMorphism kahler_tangent(const AlgebraMorphism& f) { return Kahler().tangent(f); }

Polynomial total_differential(const Polynomial& p, std::size_t n) {
  if (p.variable_bound() > n) throw DimensionMismatch("polynomial uses a variable past x" + std::to_string(n - 1));
  Polynomial d;
  for (std::size_t i = 0; i < n; ++i) d += p.derivative(static_cast<std::uint32_t>(i)) * var(n + i);
  return d;
}

AlgebraMorphism derivations_reverse_tangent(const AlgebraMorphism& f) {
  require_polynomial_ring(f.source(), "derivations");
  require_polynomial_ring(f.target(), "derivations");
  std::size_t n = f.source().generators();
  std::size_t m = f.target().generators();
  auto images = vars(m);
  for (std::size_t j = 0; j < m; ++j) {
    Polynomial img;
    for (std::size_t i = 0; i < n; ++i) img += f.images()[i].derivative(static_cast<std::uint32_t>(j)) * var(m + i);
    images.push_back(std::move(img));
  }
  return AlgebraMorphism(Algebra::polynomial(2 * m), Algebra::polynomial(m + n), std::move(images));
}

FreeModuleMorphism FreeModuleMorphism::identity(const Algebra& a, std::size_t rank) {
  return scalar(a, rank, Polynomial::constant(Rational(1)));
}

FreeModuleMorphism FreeModuleMorphism::scalar(const Algebra& a, std::size_t rank, const Polynomial& element) {
  FreeModuleMorphism g{a, rank, rank, std::vector<std::vector<Polynomial>>(rank, std::vector<Polynomial>(rank))};
  for (std::size_t i = 0; i < rank; ++i) g.entries[i][i] = a.reduce(element);
  return g;
}

std::vector<Polynomial> FreeModuleMorphism::apply(const std::vector<Polynomial>& v) const {
  if (v.size() != source_rank) throw DimensionMismatch("module element has the wrong rank");
  std::vector<Polynomial> out(target_rank);
  for (std::size_t i = 0; i < target_rank; ++i) {
    for (std::size_t j = 0; j < source_rank; ++j) out[i] += entries[i][j] * v[j];
    out[i] = algebra.reduce(out[i]);
  }
  return out;
}

FreeModuleMorphism compose(const FreeModuleMorphism& g, const FreeModuleMorphism& h) {
  if (g.target_rank != h.source_rank || !(g.algebra == h.algebra)) throw DimensionMismatch("module maps do not compose");
  FreeModuleMorphism out{g.algebra, g.source_rank, h.target_rank,
                         std::vector<std::vector<Polynomial>>(h.target_rank, std::vector<Polynomial>(g.source_rank))};
  for (std::size_t i = 0; i < h.target_rank; ++i) {
    for (std::size_t k = 0; k < g.source_rank; ++k) {
      Polynomial sum;
      for (std::size_t j = 0; j < g.target_rank; ++j) sum += h.entries[i][j] * g.entries[j][k];
      out.entries[i][k] = g.algebra.reduce(sum);
    }
  }
  return out;
}

std::vector<Rational> coefficients(const Algebra& a, const Polynomial& p) {
  auto k = a.rank();
  if (!k) throw DomainError("algebra " + a.to_string() + " is not finite-dimensional over Q");
  Polynomial r = a.reduce(p);
  std::vector<Rational> out(*k, Rational(0));
  for (std::size_t t = 0; t < *k; ++t) {
    Monomial m;
    if (t > 0) m.emplace_back(0, static_cast<std::uint32_t>(t));
    out[t] = r.coefficient(m);
  }
  return out;
}

RationalMatrix to_rational_matrix(const FreeModuleMorphism& g) {
  auto k = g.algebra.rank();
  if (!k) throw DomainError("module dual needs a finite-dimensional algebra, got " + g.algebra.to_string());
  RationalMatrix out(g.target_rank * *k, g.source_rank * *k);
  for (std::size_t j = 0; j < g.source_rank; ++j) {
    for (std::size_t t = 0; t < *k; ++t) {
      Polynomial basis = var(0).pow(static_cast<unsigned>(t));
      for (std::size_t i = 0; i < g.target_rank; ++i) {
        auto c = coefficients(g.algebra, g.entries[i][j] * basis);
        for (std::size_t u = 0; u < *k; ++u) out(i * *k + u, j * *k + t) = c[u];
      }
    }
  }
  return out;
}

RationalMatrix module_dual_involution(const FreeModuleMorphism& g) { return to_rational_matrix(g).transpose(); }

Polynomial parse_poly_text(std::string_view text) { return parse_polynomial(strip_prefix(text, "poly:")); }

std::vector<Polynomial> parse_alghom_text(std::string_view text) {
  std::string_view body = strip_prefix(text, "alghom:");
  std::vector<std::optional<Polynomial>> images;
  std::size_t start = 0;
  while (start <= body.size()) {
    std::size_t end = body.find(';', start);
    if (end == std::string_view::npos) end = body.size();
    std::string piece = trim(body.substr(start, end - start));
    start = end + 1;
    if (piece.empty()) continue;
    auto arrow = piece.find("->");
    if (arrow == std::string::npos) throw ParseError("alghom entry '" + piece + "' lacks '->'");
    std::string lhs = trim(std::string_view(piece).substr(0, arrow));
    if (lhs.size() < 2 || lhs[0] != 'x' ||
        !std::all_of(lhs.begin() + 1, lhs.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw ParseError("alghom entry '" + piece + "' must start with x<k>");
    }
    std::size_t index = std::stoul(lhs.substr(1));
    if (index >= images.size()) images.resize(index + 1);
    if (images[index]) throw ParseError("alghom gives x" + std::to_string(index) + " twice");
    images[index] = parse_polynomial(std::string_view(piece).substr(arrow + 2));
  }
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!images[i]) throw ParseError("alghom gives no image for x" + std::to_string(i));
    out.push_back(*images[i]);
  }
  return out;
}

}  // namespace rtc
