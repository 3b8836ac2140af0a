#include "rtc/smooth_map.hpp"

#include "rtc/errors.hpp"

#include <cmath>
#include <unordered_map>

namespace rtc {

struct SmoothMap::Tape {
  struct Op {
    ExprKind kind;
    std::uint32_t first = 0;  // Variable: index; n-ary: offset into args
    std::uint32_t count = 0;
    double value = 0.0;
  };
  std::vector<Op> ops;
  std::vector<std::uint32_t> args;
  std::vector<std::uint32_t> outputs;
  bool polynomial = true;
};

SmoothMap::SmoothMap(std::size_t dom_dim, std::vector<Expr> components)
    : dom_dim_(dom_dim), components_(std::move(components)) {
  for (std::size_t j = 0; j < components_.size(); ++j) {
    std::size_t bound = variable_bound(components_[j]);
    if (bound > dom_dim_) {
      throw DimensionMismatch("component " + std::to_string(j) + " uses x" + std::to_string(bound - 1) +
                              " but the domain has dimension " + std::to_string(dom_dim_));
    }
  }
  auto tape = std::make_shared<Tape>();
  std::unordered_map<const void*, std::uint32_t> slots;
  // Iterative post-order so deep chains do not exhaust the stack.
  struct Frame {
    Expr e;
    bool expanded;
  };
  for (const auto& root : components_) {
    std::vector<Frame> stack{{root, false}};
    while (!stack.empty()) {
      Frame frame = stack.back();
      stack.pop_back();
      if (slots.count(frame.e.id())) continue;
      if (!frame.expanded) {
        stack.push_back({frame.e, true});
        for (const auto& c : frame.e.children()) {
          if (!slots.count(c.id())) stack.push_back({c, false});
        }
        continue;
      }
      Tape::Op op{frame.e.kind()};
      switch (frame.e.kind()) {
        case ExprKind::Variable:
          op.first = static_cast<std::uint32_t>(frame.e.index());
          break;
        case ExprKind::Constant:
          op.value = to_double(frame.e.value());
          break;
        case ExprKind::Sin:
        case ExprKind::Cos:
        case ExprKind::Exp:
        case ExprKind::Reciprocal:
          tape->polynomial = false;
          [[fallthrough]];
        default:
          op.first = static_cast<std::uint32_t>(tape->args.size());
          op.count = static_cast<std::uint32_t>(frame.e.children().size());
          for (const auto& c : frame.e.children()) tape->args.push_back(slots.at(c.id()));
          break;
      }
      slots.emplace(frame.e.id(), static_cast<std::uint32_t>(tape->ops.size()));
      tape->ops.push_back(op);
    }
    tape->outputs.push_back(slots.at(root.id()));
  }
  tape_ = std::move(tape);
}

SmoothMap SmoothMap::identity(std::size_t n) { return SmoothMap(n, variables(0, n)); }

SmoothMap SmoothMap::zero(std::size_t n, std::size_t m) { return SmoothMap(n, zeros(m)); }

SmoothMap SmoothMap::projection(std::size_t n, std::size_t offset, std::size_t count) {
  if (offset + count > n) throw DimensionMismatch("projection exceeds domain dimension");
  return SmoothMap(n, variables(offset, count));
}

void SmoothMap::eval_into(std::span<const double> x, std::span<double> out, std::vector<double>& scratch) const {
  if (x.size() != dom_dim_) {
    throw DimensionMismatch("eval: expected a point of dimension " + std::to_string(dom_dim_) + ", got " +
                            std::to_string(x.size()));
  }
  const Tape& t = *tape_;
  scratch.resize(t.ops.size());
  for (std::size_t k = 0; k < t.ops.size(); ++k) {
    const auto& op = t.ops[k];
    const std::uint32_t* a = t.args.data() + op.first;
    double v = 0.0;
    switch (op.kind) {
      case ExprKind::Variable:
        v = x[op.first];
        break;
      case ExprKind::Constant:
        v = op.value;
        break;
      case ExprKind::Sum:
        for (std::uint32_t i = 0; i < op.count; ++i) v += scratch[a[i]];
        break;
      case ExprKind::Product:
        v = 1.0;
        for (std::uint32_t i = 0; i < op.count; ++i) v *= scratch[a[i]];
        break;
      case ExprKind::Negation:
        v = -scratch[a[0]];
        break;
      case ExprKind::Sin:
        v = std::sin(scratch[a[0]]);
        break;
      case ExprKind::Cos:
        v = std::cos(scratch[a[0]]);
        break;
      case ExprKind::Exp:
        v = std::exp(scratch[a[0]]);
        break;
      case ExprKind::Reciprocal:
        v = 1.0 / scratch[a[0]];
        break;
    }
    scratch[k] = v;
  }
  for (std::size_t j = 0; j < t.outputs.size(); ++j) out[j] = scratch[t.outputs[j]];
}

std::vector<double> SmoothMap::eval(std::span<const double> x) const {
  std::vector<double> out(cod_dim());
  std::vector<double> scratch;
  eval_into(x, out, scratch);
  return out;
}

std::optional<std::vector<Rational>> SmoothMap::eval_exact(std::span<const Rational> x) const {
  if (x.size() != dom_dim_) {
    throw DimensionMismatch("eval: expected a point of dimension " + std::to_string(dom_dim_) + ", got " +
                            std::to_string(x.size()));
  }
  std::vector<Rational> out;
  out.reserve(cod_dim());
  for (const auto& c : components_) {
    auto v = evaluate_exact(c, x);
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  return out;
}

bool SmoothMap::is_polynomial() const { return tape_->polynomial; }

std::size_t SmoothMap::node_count() const { return tape_->ops.size(); }

SmoothMap compose_maps(const SmoothMap& f, const SmoothMap& g) {
  if (f.cod_dim() != g.dom_dim()) {
    throw DimensionMismatch("compose: codomain " + std::to_string(f.cod_dim()) + " does not match domain " +
                            std::to_string(g.dom_dim()));
  }
  return SmoothMap(f.dom_dim(), substitute_all(g.components(), f.components()));
}

SmoothMap partial_derivative(const SmoothMap& f, std::size_t i) {
  if (i >= f.dom_dim()) {
    throw DomainError("partial derivative index " + std::to_string(i) + " out of range for domain dimension " +
                      std::to_string(f.dom_dim()));
  }
  std::vector<Expr> out;
  out.reserve(f.cod_dim());
  for (const auto& c : f.components()) out.push_back(differentiate(c, i));
  return SmoothMap(f.dom_dim(), std::move(out));
}

SmoothMap pair_maps(const SmoothMap& f, const SmoothMap& g) {
  const SmoothMap maps[] = {f, g};
  return pair_maps(maps);
}

SmoothMap pair_maps(std::span<const SmoothMap> maps) {
  if (maps.empty()) throw DimensionMismatch("pair_maps: no maps given");
  std::vector<Expr> out;
  for (const auto& m : maps) {
    if (m.dom_dim() != maps.front().dom_dim()) throw DimensionMismatch("pair_maps: domains differ");
    out.insert(out.end(), m.components().begin(), m.components().end());
  }
  return SmoothMap(maps.front().dom_dim(), std::move(out));
}

SmoothMap shift_domain(const SmoothMap& f, std::size_t new_dom, std::size_t offset) {
  if (offset + f.dom_dim() > new_dom) throw DimensionMismatch("shift_domain: target domain too small");
  auto repl = variables(offset, f.dom_dim());
  return SmoothMap(new_dom, substitute_all(f.components(), repl));
}

SmoothMap product_maps(const SmoothMap& f, const SmoothMap& g) {
  std::size_t n = f.dom_dim() + g.dom_dim();
  return pair_maps(shift_domain(f, n, 0), shift_domain(g, n, f.dom_dim()));
}

SmoothMap coordinate_map(std::size_t n, std::span<const std::size_t> perm) {
  std::vector<Expr> out;
  for (auto p : perm) {
    if (p >= n) throw DimensionMismatch("coordinate_map: index out of range");
    out.push_back(Expr::variable(p));
  }
  return SmoothMap(n, std::move(out));
}

std::vector<std::vector<Expr>> jacobian_exprs(const SmoothMap& f) {
  std::vector<std::vector<Expr>> jac(f.cod_dim(), std::vector<Expr>(f.dom_dim(), Expr::constant(0)));
  for (std::size_t j = 0; j < f.cod_dim(); ++j) {
    for (std::size_t i = 0; i < f.dom_dim(); ++i) jac[j][i] = differentiate(f.component(j), i);
  }
  return jac;
}

SmoothMap normalize(const SmoothMap& f) {
  std::vector<Expr> out;
  for (const auto& c : f.components()) out.push_back(normalize(c));
  return SmoothMap(f.dom_dim(), std::move(out));
}

std::string fingerprint(const SmoothMap& f) {
  std::uint64_t h = f.dom_dim() * 1315423911ULL + f.cod_dim();
  for (const auto& c : f.components()) h = h * 0x100000001b3ULL ^ structural_hash(c);
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int k = 15; k >= 0; --k) {
    buf[k] = hex[h & 0xfu];
    h >>= 4;
  }
  buf[16] = '\0';
  return std::to_string(f.dom_dim()) + ">" + std::to_string(f.cod_dim()) + ":" + buf;
}

bool structurally_equal(const SmoothMap& a, const SmoothMap& b) {
  if (a.dom_dim() != b.dom_dim() || a.cod_dim() != b.cod_dim()) return false;
  for (std::size_t j = 0; j < a.cod_dim(); ++j) {
    if (!(normalize(a.component(j)) == normalize(b.component(j)))) return false;
  }
  return true;
}

}  // namespace rtc
