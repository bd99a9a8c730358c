#include "ergogap/rate_expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "ergogap/errors.hpp"

namespace ergogap {

enum class NodeKind { number, var_i, const_pi, const_e, add, sub, mul, div, pow, neg, fn_sqrt, fn_min, fn_max };

struct RateExpr::Node {
  NodeKind kind;
  double value = 0.0;  // number nodes only
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const RateExpr::Node>;

NodePtr make(NodeKind k, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<RateExpr::Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodePtr make_num(double v) {
  auto n = std::make_shared<RateExpr::Node>();
  n->kind = NodeKind::number;
  n->value = v;
  return n;
}

[[noreturn]] void fail(std::size_t offset, const std::string& msg) {
  throw SpecError("rate expression error at byte " + std::to_string(offset) + ": " + msg);
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr run() {
    skip_ws();
    if (pos_ >= text_.size()) fail(pos_, "empty expression");
    NodePtr e = parse_sum();
    skip_ws();
    if (pos_ < text_.size()) fail(pos_, "unexpected trailing input");
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  NodePtr parse_sum() {
    NodePtr e = parse_product();
    for (;;) {
      if (eat('+')) {
        e = make(NodeKind::add, e, parse_product());
      } else if (eat('-')) {
        e = make(NodeKind::sub, e, parse_product());
      } else {
        return e;
      }
    }
  }

  NodePtr parse_product() {
    NodePtr e = parse_unary();
    for (;;) {
      if (eat('*')) {
        e = make(NodeKind::mul, e, parse_unary());
      } else if (eat('/')) {
        e = make(NodeKind::div, e, parse_unary());
      } else {
        return e;
      }
    }
  }

  NodePtr parse_unary() {
    if (eat('-')) return make(NodeKind::neg, parse_unary());
    return parse_power();
  }

  // ^ binds tighter than unary minus and is right-associative.
  NodePtr parse_power() {
    NodePtr base = parse_atom();
    if (eat('^')) {
      NodePtr expo = parse_unary();  // right-assoc, allows 2^-3
      return make(NodeKind::pow, base, expo);
    }
    return base;
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail(pos_, "expected value");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = parse_sum();
      if (!eat(')')) fail(pos_, "expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
    fail(pos_, std::string("unexpected character '") + c + "'");
  }

  NodePtr parse_number() {
    std::size_t start = pos_;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec != std::errc()) fail(start, "malformed number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    if (!std::isfinite(v)) fail(start, "non-finite literal");
    return make_num(v);
  }

  NodePtr parse_ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string_view name = text_.substr(start, pos_ - start);
    if (name == "i") return make(NodeKind::var_i);
    if (name == "pi") return make(NodeKind::const_pi);
    if (name == "e") return make(NodeKind::const_e);
    if (name == "sqrt" || name == "min" || name == "max") {
      if (!eat('(')) fail(pos_, "expected '(' after function name");
      NodePtr a = parse_sum();
      if (name == "sqrt") {
        if (!eat(')')) fail(pos_, "expected ')'");
        return make(NodeKind::fn_sqrt, a);
      }
      if (!eat(',')) fail(pos_, "expected ','");
      NodePtr b = parse_sum();
      if (!eat(')')) fail(pos_, "expected ')'");
      return make(name == "min" ? NodeKind::fn_min : NodeKind::fn_max, a, b);
    }
    fail(start, "unknown identifier '" + std::string(name) + "'");
  }
};

double eval(const RateExpr::Node& n, std::int64_t i) {
  switch (n.kind) {
    case NodeKind::number:
      return n.value;
    case NodeKind::var_i:
      return static_cast<double>(i);
    case NodeKind::const_pi:
      return std::numbers::pi;
    case NodeKind::const_e:
      return std::numbers::e;
    case NodeKind::add:
      return eval(*n.a, i) + eval(*n.b, i);
    case NodeKind::sub:
      return eval(*n.a, i) - eval(*n.b, i);
    case NodeKind::mul:
      return eval(*n.a, i) * eval(*n.b, i);
    case NodeKind::div:
      return eval(*n.a, i) / eval(*n.b, i);
    case NodeKind::pow:
      return std::pow(eval(*n.a, i), eval(*n.b, i));
    case NodeKind::neg:
      return -eval(*n.a, i);
    case NodeKind::fn_sqrt:
      return std::sqrt(eval(*n.a, i));
    case NodeKind::fn_min:
      return std::min(eval(*n.a, i), eval(*n.b, i));
    case NodeKind::fn_max:
      return std::max(eval(*n.a, i), eval(*n.b, i));
  }
  throw InternalError("rate expr: bad node kind");
}

void print(const RateExpr::Node& n, std::ostream& os) {
  auto binary = [&](const char* op) {
    os << '(';
    print(*n.a, os);
    os << op;
    print(*n.b, os);
    os << ')';
  };
  switch (n.kind) {
    case NodeKind::number: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      os << buf;
      return;
    }
    case NodeKind::var_i:
      os << 'i';
      return;
    case NodeKind::const_pi:
      os << "pi";
      return;
    case NodeKind::const_e:
      os << 'e';
      return;
    case NodeKind::add:
      binary("+");
      return;
    case NodeKind::sub:
      binary("-");
      return;
    case NodeKind::mul:
      binary("*");
      return;
    case NodeKind::div:
      binary("/");
      return;
    case NodeKind::pow:
      binary("^");
      return;
    case NodeKind::neg:
      os << "(-";
      print(*n.a, os);
      os << ')';
      return;
    case NodeKind::fn_sqrt:
      os << "sqrt(";
      print(*n.a, os);
      os << ')';
      return;
    case NodeKind::fn_min:
    case NodeKind::fn_max:
      os << (n.kind == NodeKind::fn_min ? "min(" : "max(");
      print(*n.a, os);
      os << ',';
      print(*n.b, os);
      os << ')';
      return;
  }
}

bool equal(const RateExpr::Node& x, const RateExpr::Node& y) {
  if (x.kind != y.kind) return false;
  if (x.kind == NodeKind::number) return x.value == y.value;
  if (x.a && (!y.a || !equal(*x.a, *y.a))) return false;
  if (x.b && (!y.b || !equal(*x.b, *y.b))) return false;
  return true;
}

}  // namespace

RateExpr RateExpr::parse(std::string_view text) {
  return RateExpr(Parser(text).run());
}

double RateExpr::operator()(std::int64_t i) const {
  double v = eval(*root_, i);
  if (!std::isfinite(v))
    throw SpecError("rate expression '" + str() + "' is non-finite at i=" + std::to_string(i));
  return v;
}

std::string RateExpr::str() const {
  std::ostringstream os;
  print(*root_, os);
  return os.str();
}

bool RateExpr::operator==(const RateExpr& other) const {
  return equal(*root_, *other.root_);
}

}  // namespace ergogap
