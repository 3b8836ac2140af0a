#include "rtc/expr.hpp"

#include "rtc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_map>

namespace rtc {

struct Expr::Node {
  ExprKind kind;
  std::size_t index = 0;
  Rational value;
  std::vector<Expr> children;
};

namespace {

template <typename T>
using Memo = std::unordered_map<const void*, T>;

const Rational kZero(0);

}  // namespace

Expr Expr::variable(std::size_t index) {
  auto node = std::make_shared<Node>();
  node->kind = ExprKind::Variable;
  node->index = index;
  return Expr(std::move(node));
}

Expr Expr::constant(Rational value) {
  auto node = std::make_shared<Node>();
  node->kind = ExprKind::Constant;
  value.canonicalize();
  node->value = std::move(value);
  return Expr(std::move(node));
}

Expr Expr::sum(std::vector<Expr> terms) {
  auto node = std::make_shared<Node>();
  node->kind = ExprKind::Sum;
  node->children = std::move(terms);
  return Expr(std::move(node));
}

Expr Expr::product(std::vector<Expr> factors) {
  auto node = std::make_shared<Node>();
  node->kind = ExprKind::Product;
  node->children = std::move(factors);
  return Expr(std::move(node));
}

#define RTC_UNARY_CTOR(name, kind_value)          \
  Expr Expr::name(Expr arg) {                     \
    auto node = std::make_shared<Node>();         \
    node->kind = kind_value;                      \
    node->children.push_back(std::move(arg));     \
    return Expr(std::move(node));                 \
  }

RTC_UNARY_CTOR(negation, ExprKind::Negation)
RTC_UNARY_CTOR(sin, ExprKind::Sin)
RTC_UNARY_CTOR(cos, ExprKind::Cos)
RTC_UNARY_CTOR(exp, ExprKind::Exp)
RTC_UNARY_CTOR(reciprocal, ExprKind::Reciprocal)

#undef RTC_UNARY_CTOR

ExprKind Expr::kind() const { return node_->kind; }
std::size_t Expr::index() const { return node_->index; }
const Rational& Expr::value() const { return node_->kind == ExprKind::Constant ? node_->value : kZero; }
std::span<const Expr> Expr::children() const { return node_->children; }
const Expr& Expr::arg() const { return node_->children.front(); }

bool Expr::is_zero() const { return kind() == ExprKind::Constant && sgn(node_->value) == 0; }
bool Expr::is_one() const { return kind() == ExprKind::Constant && node_->value == 1; }

// ---------------------------------------------------------------------------
// Folding arithmetic

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() + b.value());
  std::vector<Expr> terms;
  auto push = [&terms](const Expr& e) {
    if (e.kind() == ExprKind::Sum) {
      terms.insert(terms.end(), e.children().begin(), e.children().end());
    } else {
      terms.push_back(e);
    }
  };
  push(a);
  push(b);
  return Expr::sum(std::move(terms));
}

Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr::constant(-a.value());
  if (a.kind() == ExprKind::Negation) return a.arg();
  return Expr::negation(a);
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr::constant(0);
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() * b.value());
  if (a.is_constant() && a.value() == -1) return -b;
  if (b.is_constant() && b.value() == -1) return -a;
  std::vector<Expr> factors;
  auto push = [&factors](const Expr& e) {
    if (e.kind() == ExprKind::Product) {
      factors.insert(factors.end(), e.children().begin(), e.children().end());
    } else {
      factors.push_back(e);
    }
  };
  push(a);
  push(b);
  return Expr::product(std::move(factors));
}

Expr add_all(std::span<const Expr> terms) {
  Expr acc = Expr::constant(0);
  for (const auto& t : terms) acc = acc + t;
  return acc;
}

Expr mul_all(std::span<const Expr> factors) {
  Expr acc = Expr::constant(1);
  for (const auto& f : factors) acc = acc * f;
  return acc;
}

Expr sin(const Expr& a) { return a.is_zero() ? Expr::constant(0) : Expr::sin(a); }
Expr cos(const Expr& a) { return a.is_zero() ? Expr::constant(1) : Expr::cos(a); }
Expr exp(const Expr& a) { return a.is_zero() ? Expr::constant(1) : Expr::exp(a); }

Expr reciprocal(const Expr& a) {
  if (a.is_constant() && sgn(a.value()) != 0) return Expr::constant(Rational(1) / a.value());
  return Expr::reciprocal(a);
}

// ---------------------------------------------------------------------------
// Structural order

int compare(const Expr& a, const Expr& b) {
  if (a.id() == b.id()) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case ExprKind::Variable:
      return a.index() == b.index() ? 0 : (a.index() < b.index() ? -1 : 1);
    case ExprKind::Constant:
      return cmp(a.value(), b.value()) < 0 ? -1 : (cmp(a.value(), b.value()) > 0 ? 1 : 0);
    default:
      break;
  }
  auto ca = a.children();
  auto cb = b.children();
  if (ca.size() != cb.size()) return ca.size() < cb.size() ? -1 : 1;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (int c = compare(ca[i], cb[i]); c != 0) return c;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

Expr normalize_impl(const Expr& e, Memo<Expr>& memo);

Expr normalize_sum(std::span<const Expr> raw, Memo<Expr>& memo) {
  Rational constant(0);
  std::vector<Expr> terms;
  std::function<void(const Expr&)> collect = [&](const Expr& child) {
    Expr n = normalize_impl(child, memo);
    if (n.kind() == ExprKind::Sum) {
      for (const auto& c : n.children()) collect(c);
    } else if (n.is_constant()) {
      constant += n.value();
    } else {
      terms.push_back(n);
    }
  };
  for (const auto& c : raw) collect(c);
  if (sgn(constant) != 0) terms.push_back(Expr::constant(constant));
  if (terms.empty()) return Expr::constant(0);
  if (terms.size() == 1) return terms.front();
  std::sort(terms.begin(), terms.end());
  return Expr::sum(std::move(terms));
}

Expr normalize_product(std::span<const Expr> raw, Memo<Expr>& memo) {
  Rational constant(1);
  std::vector<Expr> factors;
  std::function<void(const Expr&)> collect = [&](const Expr& child) {
    Expr n = normalize_impl(child, memo);
    if (n.kind() == ExprKind::Product) {
      for (const auto& c : n.children()) collect(c);
    } else if (n.is_constant()) {
      constant *= n.value();
    } else {
      factors.push_back(n);
    }
  };
  for (const auto& c : raw) collect(c);
  if (sgn(constant) == 0) return Expr::constant(0);
  if (constant != 1) factors.push_back(Expr::constant(constant));
  if (factors.empty()) return Expr::constant(1);
  if (factors.size() == 1) return factors.front();
  std::sort(factors.begin(), factors.end());
  return Expr::product(std::move(factors));
}

Expr normalize_impl(const Expr& e, Memo<Expr>& memo) {
  // Leaves are returned as-is and never memoized: temporaries built during
  // normalization may reuse a freed node address.
  if (e.kind() == ExprKind::Variable || e.kind() == ExprKind::Constant) return e;
  if (auto it = memo.find(e.id()); it != memo.end()) return it->second;
  Expr out = e;
  switch (e.kind()) {
    case ExprKind::Variable:
    case ExprKind::Constant:
      break;
    case ExprKind::Sum:
      out = normalize_sum(e.children(), memo);
      break;
    case ExprKind::Product:
      out = normalize_product(e.children(), memo);
      break;
    case ExprKind::Negation: {
      const Expr factors[] = {Expr::constant(-1), e.arg()};
      out = normalize_product(factors, memo);
      break;
    }
    case ExprKind::Sin:
    case ExprKind::Cos:
    case ExprKind::Exp:
    case ExprKind::Reciprocal: {
      Expr a = normalize_impl(e.arg(), memo);
      if (e.kind() == ExprKind::Sin) out = sin(a);
      if (e.kind() == ExprKind::Cos) out = cos(a);
      if (e.kind() == ExprKind::Exp) out = exp(a);
      if (e.kind() == ExprKind::Reciprocal) out = reciprocal(a);
      break;
    }
  }
  memo.emplace(e.id(), out);
  return out;
}

}  // namespace

Expr normalize(const Expr& e) {
  Memo<Expr> memo;
  return normalize_impl(e, memo);
}

// ---------------------------------------------------------------------------
// Differentiation and substitution

namespace {

Expr diff_impl(const Expr& e, std::size_t var, Memo<Expr>& memo) {
  if (auto it = memo.find(e.id()); it != memo.end()) return it->second;
  Expr out = Expr::constant(0);
  switch (e.kind()) {
    case ExprKind::Variable:
      out = Expr::constant(e.index() == var ? 1 : 0);
      break;
    case ExprKind::Constant:
      break;
    case ExprKind::Sum: {
      for (const auto& c : e.children()) out = out + diff_impl(c, var, memo);
      break;
    }
    case ExprKind::Product: {
      auto factors = e.children();
      for (std::size_t k = 0; k < factors.size(); ++k) {
        Expr dk = diff_impl(factors[k], var, memo);
        if (dk.is_zero()) continue;
        Expr term = dk;
        for (std::size_t j = 0; j < factors.size(); ++j) {
          if (j != k) term = term * factors[j];
        }
        out = out + term;
      }
      break;
    }
    case ExprKind::Negation:
      out = -diff_impl(e.arg(), var, memo);
      break;
    case ExprKind::Sin:
      out = cos(e.arg()) * diff_impl(e.arg(), var, memo);
      break;
    case ExprKind::Cos:
      out = -(sin(e.arg()) * diff_impl(e.arg(), var, memo));
      break;
    case ExprKind::Exp:
      out = e * diff_impl(e.arg(), var, memo);
      break;
    case ExprKind::Reciprocal: {
      Expr da = diff_impl(e.arg(), var, memo);
      out = -(e * e * da);
      break;
    }
  }
  memo.emplace(e.id(), out);
  return out;
}

Expr subst_impl(const Expr& e, std::span<const Expr> repl, Memo<Expr>& memo) {
  if (auto it = memo.find(e.id()); it != memo.end()) return it->second;
  Expr out = e;
  switch (e.kind()) {
    case ExprKind::Variable:
      if (e.index() >= repl.size()) {
        throw DimensionMismatch("substitution: variable x" + std::to_string(e.index()) +
                                " has no replacement (" + std::to_string(repl.size()) + " given)");
      }
      out = repl[e.index()];
      break;
    case ExprKind::Constant:
      break;
    case ExprKind::Sum: {
      Expr acc = Expr::constant(0);
      for (const auto& c : e.children()) acc = acc + subst_impl(c, repl, memo);
      out = acc;
      break;
    }
    case ExprKind::Product: {
      Expr acc = Expr::constant(1);
      for (const auto& c : e.children()) acc = acc * subst_impl(c, repl, memo);
      out = acc;
      break;
    }
    case ExprKind::Negation:
      out = -subst_impl(e.arg(), repl, memo);
      break;
    case ExprKind::Sin:
      out = sin(subst_impl(e.arg(), repl, memo));
      break;
    case ExprKind::Cos:
      out = cos(subst_impl(e.arg(), repl, memo));
      break;
    case ExprKind::Exp:
      out = exp(subst_impl(e.arg(), repl, memo));
      break;
    case ExprKind::Reciprocal:
      out = reciprocal(subst_impl(e.arg(), repl, memo));
      break;
  }
  memo.emplace(e.id(), out);
  return out;
}

}  // namespace

Expr differentiate(const Expr& e, std::size_t var) {
  Memo<Expr> memo;
  return diff_impl(e, var, memo);
}

Expr substitute(const Expr& e, std::span<const Expr> replacements) {
  Memo<Expr> memo;
  return subst_impl(e, replacements, memo);
}

std::vector<Expr> substitute_all(std::span<const Expr> es, std::span<const Expr> replacements) {
  Memo<Expr> memo;
  std::vector<Expr> out;
  out.reserve(es.size());
  for (const auto& e : es) out.push_back(subst_impl(e, replacements, memo));
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double eval_impl(const Expr& e, std::span<const double> x, Memo<double>& memo) {
  if (auto it = memo.find(e.id()); it != memo.end()) return it->second;
  double v = 0.0;
  switch (e.kind()) {
    case ExprKind::Variable:
      v = x[e.index()];
      break;
    case ExprKind::Constant:
      v = to_double(e.value());
      break;
    case ExprKind::Sum:
      for (const auto& c : e.children()) v += eval_impl(c, x, memo);
      break;
    case ExprKind::Product:
      v = 1.0;
      for (const auto& c : e.children()) v *= eval_impl(c, x, memo);
      break;
    case ExprKind::Negation:
      v = -eval_impl(e.arg(), x, memo);
      break;
    case ExprKind::Sin:
      v = std::sin(eval_impl(e.arg(), x, memo));
      break;
    case ExprKind::Cos:
      v = std::cos(eval_impl(e.arg(), x, memo));
      break;
    case ExprKind::Exp:
      v = std::exp(eval_impl(e.arg(), x, memo));
      break;
    case ExprKind::Reciprocal:
      v = 1.0 / eval_impl(e.arg(), x, memo);
      break;
  }
  memo.emplace(e.id(), v);
  return v;
}

std::optional<Rational> exact_impl(const Expr& e, std::span<const Rational> x,
                                   Memo<std::optional<Rational>>& memo) {
  if (auto it = memo.find(e.id()); it != memo.end()) return it->second;
  std::optional<Rational> v;
  switch (e.kind()) {
    case ExprKind::Variable:
      v = x[e.index()];
      break;
    case ExprKind::Constant:
      v = e.value();
      break;
    case ExprKind::Sum: {
      Rational acc(0);
      bool ok = true;
      for (const auto& c : e.children()) {
        auto cv = exact_impl(c, x, memo);
        if (!cv) { ok = false; break; }
        acc += *cv;
      }
      if (ok) v = acc;
      break;
    }
    case ExprKind::Product: {
      Rational acc(1);
      bool ok = true;
      for (const auto& c : e.children()) {
        auto cv = exact_impl(c, x, memo);
        if (!cv) { ok = false; break; }
        acc *= *cv;
      }
      if (ok) v = acc;
      break;
    }
    case ExprKind::Negation:
      if (auto a = exact_impl(e.arg(), x, memo)) v = Rational(-*a);
      break;
    case ExprKind::Reciprocal:
      if (auto a = exact_impl(e.arg(), x, memo); a && sgn(*a) != 0) v = Rational(Rational(1) / *a);
      break;
    case ExprKind::Sin:
    case ExprKind::Cos:
    case ExprKind::Exp:
      break;
  }
  memo.emplace(e.id(), v);
  return v;
}

template <typename Visit>
void visit_once(const Expr& e, std::unordered_map<const void*, bool>& seen, Visit&& visit) {
  if (!seen.emplace(e.id(), true).second) return;
  visit(e);
  for (const auto& c : e.children()) visit_once(c, seen, visit);
}

}  // namespace

double evaluate(const Expr& e, std::span<const double> point) {
  Memo<double> memo;
  return eval_impl(e, point, memo);
}

std::optional<Rational> evaluate_exact(const Expr& e, std::span<const Rational> point) {
  Memo<std::optional<Rational>> memo;
  return exact_impl(e, point, memo);
}

bool is_polynomial(const Expr& e) {
  bool poly = true;
  std::unordered_map<const void*, bool> seen;
  visit_once(e, seen, [&poly](const Expr& n) {
    switch (n.kind()) {
      case ExprKind::Sin:
      case ExprKind::Cos:
      case ExprKind::Exp:
      case ExprKind::Reciprocal:
        poly = false;
        break;
      default:
        break;
    }
  });
  return poly;
}

std::size_t variable_bound(const Expr& e) {
  std::size_t bound = 0;
  std::unordered_map<const void*, bool> seen;
  visit_once(e, seen, [&bound](const Expr& n) {
    if (n.kind() == ExprKind::Variable) bound = std::max(bound, n.index() + 1);
  });
  return bound;
}

std::size_t node_count(const Expr& e) {
  std::unordered_map<const void*, bool> seen;
  visit_once(e, seen, [](const Expr&) {});
  return seen.size();
}

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  // splitmix64 finalizer over the running combination
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebULL;
  h ^= h >> 31;
  return h;
}

std::uint64_t hash_impl(const Expr& e, Memo<std::uint64_t>& memo) {
  if (auto it = memo.find(e.id()); it != memo.end()) return it->second;
  std::uint64_t h = mix(0, static_cast<std::uint64_t>(e.kind()));
  if (e.kind() == ExprKind::Variable) h = mix(h, e.index());
  if (e.kind() == ExprKind::Constant) h = mix(h, std::hash<std::string>{}(to_string(e.value())));
  for (const auto& c : e.children()) h = mix(h, hash_impl(c, memo));
  memo.emplace(e.id(), h);
  return h;
}

void print_impl(const Expr& e, std::string& out) {
  auto op = [&](const char* name) {
    out += '(';
    out += name;
    for (const auto& c : e.children()) {
      out += ' ';
      print_impl(c, out);
    }
    out += ')';
  };
  switch (e.kind()) {
    case ExprKind::Variable:
      out += 'x';
      out += std::to_string(e.index());
      break;
    case ExprKind::Constant:
      out += to_string(e.value());
      break;
    case ExprKind::Sum:
      op("+");
      break;
    case ExprKind::Product:
      op("*");
      break;
    case ExprKind::Negation:
      op("neg");
      break;
    case ExprKind::Sin:
      op("sin");
      break;
    case ExprKind::Cos:
      op("cos");
      break;
    case ExprKind::Exp:
      op("exp");
      break;
    case ExprKind::Reciprocal:
      op("inv");
      break;
  }
}

}  // namespace

std::uint64_t structural_hash(const Expr& e) {
  Memo<std::uint64_t> memo;
  return hash_impl(e, memo);
}

std::string to_string(const Expr& e) {
  std::string out;
  print_impl(e, out);
  return out;
}

std::vector<Expr> variables(std::size_t offset, std::size_t count) {
  std::vector<Expr> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(Expr::variable(offset + i));
  return out;
}

std::vector<Expr> zeros(std::size_t count) { return std::vector<Expr>(count, Expr::constant(0)); }

}  // namespace rtc
