#include "rtc/map_dsl.hpp"

#include "rtc/errors.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace rtc {

namespace {

class MapParser {
 public:
  explicit MapParser(std::string_view text) : text_(text) {}

  SmoothMap parse() {
    expect('(');
    std::size_t head_pos = pos_;
    if (atom() != "map") fail_at(head_pos, "expected 'map'");
    std::size_t dom = natural("domain dimension");
    std::size_t cod_pos = pos_;
    std::size_t cod = natural("codomain dimension");
    dom_ = dom;
    std::vector<Expr> components;
    while (true) {
      skip();
      if (pos_ >= text_.size()) fail("unterminated map: missing ')'");
      if (text_[pos_] == ')') break;
      components.push_back(expr());
    }
    ++pos_;
    skip();
    if (pos_ != text_.size()) fail("trailing text after map");
    if (components.size() != cod) {
      auto [line, col] = line_col(cod_pos);
      throw DimensionMismatch("map header declares " + std::to_string(cod) + " components but the body has " +
                              std::to_string(components.size()) + " (line " + std::to_string(line) +
                              ", column " + std::to_string(col) + ")");
    }
    return SmoothMap(dom, std::move(components));
  }

 private:
  std::pair<std::size_t, std::size_t> line_col(std::size_t at) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }

  [[noreturn]] void fail_at(std::size_t at, const std::string& what) const {
    auto [line, col] = line_col(at);
    throw ParseError(what, at, line, col);
  }
  [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }

  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view atom() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';') break;
      ++pos_;
    }
    if (start == pos_) fail(pos_ >= text_.size() ? "unexpected end of input" : "expected an atom");
    return text_.substr(start, pos_ - start);
  }

  std::size_t natural(const char* what) {
    std::size_t at = (skip(), pos_);
    std::string_view a = atom();
    std::size_t value = 0;
    for (char c : a) {
      if (!std::isdigit(static_cast<unsigned char>(c))) fail_at(at, std::string("expected ") + what);
      value = value * 10 + static_cast<std::size_t>(c - '0');
    }
    return value;
  }

  Expr expr() {
    skip();
    std::size_t at = pos_;
    if (text_[pos_] == '(') {
      ++pos_;
      std::size_t op_at = (skip(), pos_);
      std::string op(atom());
      std::vector<Expr> args;
      while (true) {
        skip();
        if (pos_ >= text_.size()) fail("unterminated expression: missing ')'");
        if (text_[pos_] == ')') break;
        args.push_back(expr());
      }
      ++pos_;
      auto unary = [&]() -> const Expr& {
        if (args.size() != 1) fail_at(op_at, "'" + op + "' takes exactly one argument");
        return args.front();
      };
      if (op == "+") {
        if (args.empty()) return Expr::constant(0);
        return args.size() == 1 ? args.front() : Expr::sum(std::move(args));
      }
      if (op == "*") {
        if (args.empty()) return Expr::constant(1);
        return args.size() == 1 ? args.front() : Expr::product(std::move(args));
      }
      if (op == "neg") return Expr::negation(unary());
      if (op == "sin") return Expr::sin(unary());
      if (op == "cos") return Expr::cos(unary());
      if (op == "exp") return Expr::exp(unary());
      if (op == "inv") return Expr::reciprocal(unary());
      fail_at(op_at, "unknown operator '" + op + "'");
    }
    if (text_[pos_] == ')') fail("unexpected ')'");
    std::string_view a = atom();
    if (a.front() == 'x') {
      std::size_t index = 0;
      if (a.size() < 2) fail_at(at, "malformed variable");
      for (char c : a.substr(1)) {
        if (!std::isdigit(static_cast<unsigned char>(c))) fail_at(at, "malformed variable '" + std::string(a) + "'");
        index = index * 10 + static_cast<std::size_t>(c - '0');
      }
      if (index >= dom_) {
        auto [line, col] = line_col(at);
        throw UnboundVariable("unbound variable '" + std::string(a) + "' in a map of domain dimension " +
                                  std::to_string(dom_),
                              at, line, col);
      }
      return Expr::variable(index);
    }
    try {
      return Expr::constant(parse_rational(a));
    } catch (const ParseError&) {
      fail_at(at, "malformed literal '" + std::string(a) + "'");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t dom_ = 0;
};

}  // namespace

SmoothMap parse_map(std::string_view source) { return MapParser(source).parse(); }

std::string print_map(const SmoothMap& f) {
  std::string out = "(map " + std::to_string(f.dom_dim()) + " " + std::to_string(f.cod_dim());
  for (const auto& c : f.components()) {
    out += ' ';
    out += to_string(c);
  }
  out += ')';
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return buf.str();
}

SmoothMap load_map_file(const std::filesystem::path& path) {
  std::string text = read_text_file(path);
  try {
    return parse_map(text);
  } catch (const UnboundVariable& e) {
    throw UnboundVariable(path.string() + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const DimensionMismatch& e) {
    throw DimensionMismatch(path.string() + ": " + e.what());
  }
}

}  // namespace rtc
