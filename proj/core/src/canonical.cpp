#include "rtc/canonical.hpp"

#include "rtc/errors.hpp"

#include <unordered_map>

namespace rtc {

namespace {

const char* atom_tag(ExprKind kind) {
  switch (kind) {
    case ExprKind::Sin:
      return "sin";
    case ExprKind::Cos:
      return "cos";
    case ExprKind::Exp:
      return "exp";
    case ExprKind::Reciprocal:
      return "inv";
    default:
      return "?";
  }
}

std::string atom_name(std::uint32_t v) {
  return v >= Canonicalizer::kAtomBase ? "a" + std::to_string(v - Canonicalizer::kAtomBase) : "x" + std::to_string(v);
}

class Walker {
 public:
  Walker(std::map<std::string, std::uint32_t>& atoms, bool allow_atoms) : atoms_(atoms), allow_atoms_(allow_atoms) {}

  Polynomial run(const Expr& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    Polynomial out;
    switch (e.kind()) {
      case ExprKind::Variable:
        out = Polynomial::variable(static_cast<std::uint32_t>(e.index()));
        break;
      case ExprKind::Constant:
        out = Polynomial::constant(e.value());
        break;
      case ExprKind::Sum:
        for (const auto& c : e.children()) out += run(c);
        break;
      case ExprKind::Product:
        out = Polynomial::constant(Rational(1));
        for (const auto& c : e.children()) {
          out = out * run(c);
          if (out.is_zero()) break;
        }
        break;
      case ExprKind::Negation:
        out = -run(e.arg());
        break;
      default: {
        if (!allow_atoms_) throw DomainError("expression is not polynomial");
        Polynomial arg = run(e.arg());
        if (e.kind() == ExprKind::Reciprocal && arg.is_constant() && !arg.is_zero()) {
          out = Polynomial::constant(Rational(1) / arg.constant_term());
          break;
        }
        if (arg.is_zero() && e.kind() != ExprKind::Reciprocal) {
          out = Polynomial::constant(Rational(e.kind() == ExprKind::Sin ? 0 : 1));
          break;
        }
        std::string key = std::string(atom_tag(e.kind())) + "(" + arg.to_string(atom_name) + ")";
        auto [it, inserted] = atoms_.emplace(key, Canonicalizer::kAtomBase + static_cast<std::uint32_t>(atoms_.size()));
        out = Polynomial::variable(it->second);
        break;
      }
    }
    memo_.emplace(e.id(), out);
    return out;
  }

 private:
  std::map<std::string, std::uint32_t>& atoms_;
  bool allow_atoms_;
  std::unordered_map<const void*, Polynomial> memo_;
};

}  // namespace

Polynomial Canonicalizer::canonical(const Expr& e) { return Walker(atoms_, true).run(e); }

std::vector<Polynomial> Canonicalizer::canonical(const SmoothMap& f) {
  Walker walker(atoms_, true);
  std::vector<Polynomial> out;
  for (const auto& c : f.components()) out.push_back(walker.run(c));
  return out;
}

bool canonically_equal(const SmoothMap& a, const SmoothMap& b) {
  if (a.dom_dim() != b.dom_dim() || a.cod_dim() != b.cod_dim()) return false;
  Canonicalizer canon;
  return canon.canonical(a) == canon.canonical(b);
}

std::vector<Polynomial> to_polynomials(const SmoothMap& f) {
  std::map<std::string, std::uint32_t> unused;
  Walker walker(unused, false);
  std::vector<Polynomial> out;
  for (const auto& c : f.components()) out.push_back(walker.run(c));
  return out;
}

Expr to_expr(const Polynomial& p) {
  Expr acc = Expr::constant(0);
  for (const auto& [m, c] : p.terms()) {
    Expr term = Expr::constant(c);
    for (auto [v, e] : m) {
      for (std::uint32_t k = 0; k < e; ++k) term = term * Expr::variable(v);
    }
    acc = acc + term;
  }
  return acc;
}

}  // namespace rtc
