#include "rtc/polynomial.hpp"

#include "rtc/errors.hpp"

#include <algorithm>
#include <cctype>

namespace rtc {

namespace {

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial Polynomial::constant(const Rational& c) {
  Polynomial p;
  p.add_term({}, c);
  return p;
}

Polynomial Polynomial::variable(std::uint32_t var) {
  Polynomial p;
  p.add_term({{var, 1u}}, Rational(1));
  return p;
}

Polynomial Polynomial::monomial(Monomial m, const Rational& c) {
  std::sort(m.begin(), m.end());
  Monomial merged;
  for (auto [v, e] : m) {
    if (e == 0) continue;
    if (!merged.empty() && merged.back().first == v) {
      merged.back().second += e;
    } else {
      merged.emplace_back(v, e);
    }
  }
  Polynomial p;
  p.add_term(merged, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Polynomial::constant_term() const { return coefficient({}); }

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::uint32_t Polynomial::variable_bound() const {
  std::uint32_t bound = 0;
  for (const auto& [m, c] : terms_) {
    for (auto [v, e] : m) bound = std::max(bound, v + 1);
  }
  return bound;
}

std::uint32_t Polynomial::degree() const {
  std::uint32_t deg = 0;
  for (const auto& [m, c] : terms_) {
    std::uint32_t d = 0;
    for (auto [v, e] : m) d += e;
    deg = std::max(deg, d);
  }
  return deg;
}

std::uint32_t Polynomial::degree_in(std::uint32_t var) const {
  std::uint32_t deg = 0;
  for (const auto& [m, c] : terms_) {
    for (auto [v, e] : m) {
      if (v == var) deg = std::max(deg, e);
    }
  }
  return deg;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, Rational(-c));
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(multiply(ma, mb), Rational(ca * cb));
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) { return *this = *this * other; }

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(Rational(1));
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1u) result *= base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::substitute(std::span<const Polynomial> images) const {
  // Cache powers per variable: substitution is the hot path of morphism composition.
  std::map<std::pair<std::uint32_t, std::uint32_t>, Polynomial> powers;
  auto power = [&](std::uint32_t v, std::uint32_t e) -> const Polynomial& {
    auto key = std::make_pair(v, e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    Polynomial base = v < images.size() ? images[v] : variable(v);
    return powers.emplace(key, base.pow(e)).first->second;
  };
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Polynomial term = constant(c);
    for (auto [v, e] : m) term = term * power(v, e);
    out += term;
  }
  return out;
}

Polynomial Polynomial::derivative(std::uint32_t var) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k].first != var) continue;
      Monomial dm = m;
      Rational coeff = c * Rational(m[k].second);
      if (--dm[k].second == 0) dm.erase(dm.begin() + static_cast<std::ptrdiff_t>(k));
      out.add_term(dm, coeff);
    }
  }
  return out;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  Rational total(0);
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (auto [v, e] : m) {
      if (v >= point.size()) throw DimensionMismatch("polynomial evaluation: missing value for x" + std::to_string(v));
      mpq_class p;
      mpz_pow_ui(p.get_num_mpz_t(), point[v].get_num_mpz_t(), e);
      mpz_pow_ui(p.get_den_mpz_t(), point[v].get_den_mpz_t(), e);
      term *= p;
    }
    total += term;
  }
  return total;
}

double Polynomial::evaluate(std::span<const double> point) const {
  double total = 0.0;
  for (const auto& [m, c] : terms_) {
    double term = to_double(c);
    for (auto [v, e] : m) {
      if (v >= point.size()) throw DimensionMismatch("polynomial evaluation: missing value for x" + std::to_string(v));
      for (std::uint32_t k = 0; k < e; ++k) term *= point[v];
    }
    total += term;
  }
  return total;
}

std::string Polynomial::to_string(const std::function<std::string(std::uint32_t)>& name) const {
  if (terms_.empty()) return "0";
  auto var_name = [&](std::uint32_t v) { return name ? name(v) : "x" + std::to_string(v); };
  std::string out;
  bool first = true;
  // Highest total degree first reads naturally; ties keep map order.
  std::vector<const std::pair<const Monomial, Rational>*> ordered;
  for (const auto& t : terms_) ordered.push_back(&t);
  std::stable_sort(ordered.begin(), ordered.end(), [](auto* a, auto* b) {
    auto deg = [](const Monomial& m) {
      std::uint32_t d = 0;
      for (auto [v, e] : m) d += e;
      return d;
    };
    return deg(a->first) > deg(b->first);
  });
  for (const auto* term : ordered) {
    const auto& [m, c] = *term;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    first = false;
    bool wrote = false;
    if (m.empty() || mag != 1) {
      out += rtc::to_string(mag);
      wrote = true;
    }
    for (auto [v, e] : m) {
      if (wrote) out += "*";
      out += var_name(v);
      if (e > 1) out += "^" + std::to_string(e);
      wrote = true;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser: poly := ['-'] term (('+'|'-') term)* ; term := factor ('*' factor)*
// factor := rational | 'x' digits ['^' digits] | '(' poly ')' ['^' digits]

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  Polynomial parse() {
    Polynomial p = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial: " + what, pos_, 1, pos_ + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  Polynomial parse_sum() {
    Polynomial acc;
    bool negate = accept('-');
    if (!negate) accept('+');
    Polynomial t = parse_term();
    acc += negate ? -t : t;
    while (true) {
      if (accept('+')) {
        acc += parse_term();
      } else if (accept('-')) {
        acc -= parse_term();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial parse_term() {
    Polynomial acc = parse_factor();
    while (accept('*')) acc = acc * parse_factor();
    return acc;
  }

  unsigned parse_exponent() {
    if (!accept('^')) return 1;
    return static_cast<unsigned>(std::stoul(digits()));
  }

  Polynomial parse_factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = parse_sum();
      if (!accept(')')) fail("expected ')'");
      return inner.pow(parse_exponent());
    }
    if (c == 'x') {
      ++pos_;
      auto var = static_cast<std::uint32_t>(std::stoul(digits()));
      return Polynomial::variable(var).pow(parse_exponent());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string lit = digits();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        lit += "/" + digits();
      }
      return Polynomial::constant(parse_rational(lit)).pow(parse_exponent());
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text) { return PolyParser(text).parse(); }

}  // namespace rtc
