// sig2d - recursive descent parser and evaluator for scalar field expressions

#include "sig2d/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>
#include <vector>

namespace sig2d {

namespace {

enum class Op {
  Num, VarT, VarX,
  Add, Sub, Mul, Div, Pow, Neg,
  Sin, Cos, Tan, Exp, Log, Abs, Sqrt,
};

bool is_binary(Op op) {
  return op == Op::Add || op == Op::Sub || op == Op::Mul || op == Op::Div || op == Op::Pow;
}

const char* func_name(Op op) {
  switch (op) {
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Tan: return "tan";
    case Op::Exp: return "exp";
    case Op::Log: return "log";
    case Op::Abs: return "abs";
    case Op::Sqrt: return "sqrt";
    default: return "?";
  }
}

}  // namespace

struct ScalarField::Node {
  Op op;
  double value = 0.0;
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const ScalarField::Node>;

NodePtr make_node(Op op, NodePtr a = nullptr, NodePtr b = nullptr, double value = 0.0) {
  auto n = std::make_shared<ScalarField::Node>();
  n->op = op;
  n->value = value;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != src_.size())
      throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  NodePtr expr() {
    NodePtr e = term();
    for (;;) {
      if (eat('+'))
        e = make_node(Op::Add, e, term());
      else if (eat('-'))
        e = make_node(Op::Sub, e, term());
      else
        return e;
    }
  }

  NodePtr term() {
    NodePtr e = unary();
    for (;;) {
      if (eat('*'))
        e = make_node(Op::Mul, e, unary());
      else if (eat('/'))
        e = make_node(Op::Div, e, unary());
      else
        return e;
    }
  }

  NodePtr unary() {
    if (eat('-')) return make_node(Op::Neg, unary());
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (eat('^')) return make_node(Op::Pow, base, unary());  // right-associative
    return base;
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  NodePtr number() {
    const char* begin = src_.data() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) throw ParseError("malformed number", pos_);
    pos_ += static_cast<std::size_t>(end - begin);
    return make_node(Op::Num, nullptr, nullptr, v);
  }

  NodePtr identifier() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           std::isalpha(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    std::string_view name = src_.substr(start, pos_ - start);
    if (name == "t") return make_node(Op::VarT);
    if (name == "x") return make_node(Op::VarX);
    if (name == "pi") return make_node(Op::Num, nullptr, nullptr, M_PI);

    Op fn;
    if (name == "sin") fn = Op::Sin;
    else if (name == "cos") fn = Op::Cos;
    else if (name == "tan") fn = Op::Tan;
    else if (name == "exp") fn = Op::Exp;
    else if (name == "log") fn = Op::Log;
    else if (name == "abs") fn = Op::Abs;
    else if (name == "sqrt") fn = Op::Sqrt;
    else throw ParseError("unknown identifier '" + std::string(name) + "'", start);

    if (!eat('(')) throw ParseError("expected '(' after function name", pos_);
    NodePtr arg = expr();
    if (!eat(')')) throw ParseError("expected ')'", pos_);
    return make_node(fn, arg);
  }
};

double eval_node(const ScalarField::Node& n, double t, double x) {
  switch (n.op) {
    case Op::Num: return n.value;
    case Op::VarT: return t;
    case Op::VarX: return x;
    case Op::Add: return eval_node(*n.a, t, x) + eval_node(*n.b, t, x);
    case Op::Sub: return eval_node(*n.a, t, x) - eval_node(*n.b, t, x);
    case Op::Mul: return eval_node(*n.a, t, x) * eval_node(*n.b, t, x);
    case Op::Div: {
      double d = eval_node(*n.b, t, x);
      if (d == 0.0) throw EvalError("division by zero");
      return eval_node(*n.a, t, x) / d;
    }
    case Op::Pow: {
      double r = std::pow(eval_node(*n.a, t, x), eval_node(*n.b, t, x));
      if (!std::isfinite(r)) throw EvalError("pow out of real domain");
      return r;
    }
    case Op::Neg: return -eval_node(*n.a, t, x);
    case Op::Sin: return std::sin(eval_node(*n.a, t, x));
    case Op::Cos: return std::cos(eval_node(*n.a, t, x));
    case Op::Tan: return std::tan(eval_node(*n.a, t, x));
    case Op::Exp: return std::exp(eval_node(*n.a, t, x));
    case Op::Log: {
      double v = eval_node(*n.a, t, x);
      if (v <= 0.0) throw EvalError("log of nonpositive value");
      return std::log(v);
    }
    case Op::Abs: return std::abs(eval_node(*n.a, t, x));
    case Op::Sqrt: {
      double v = eval_node(*n.a, t, x);
      if (v < 0.0) throw EvalError("sqrt of negative value");
      return std::sqrt(v);
    }
  }
  throw EvalError("corrupt expression node");
}

void print_node(const ScalarField::Node& n, std::string& out) {
  if (n.op == Op::Num) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", n.value);
    out += buf;
    return;
  }
  if (n.op == Op::VarT) { out += 't'; return; }
  if (n.op == Op::VarX) { out += 'x'; return; }
  if (n.op == Op::Neg) {
    out += "(-";
    print_node(*n.a, out);
    out += ')';
    return;
  }
  if (is_binary(n.op)) {
    char sym = n.op == Op::Add ? '+' : n.op == Op::Sub ? '-'
             : n.op == Op::Mul ? '*' : n.op == Op::Div ? '/' : '^';
    out += '(';
    print_node(*n.a, out);
    out += sym;
    print_node(*n.b, out);
    out += ')';
    return;
  }
  out += func_name(n.op);
  out += '(';
  print_node(*n.a, out);
  out += ')';
}

}  // namespace

ScalarField ScalarField::parse(std::string_view src) {
  if (src.empty()) throw ParseError("empty expression", 0);
  return ScalarField(Parser(src).parse());
}

ScalarField ScalarField::constant(double c) {
  return ScalarField(make_node(Op::Num, nullptr, nullptr, c));
}

ScalarField ScalarField::sum_of_squares() {
  static const ScalarField f = parse("t^2 + x^2");
  return f;
}

double ScalarField::operator()(double t, double x) const {
  if (!root_) throw EvalError("empty scalar field");
  return eval_node(*root_, t, x);
}

std::string ScalarField::str() const {
  if (!root_) return "";
  std::string out;
  print_node(*root_, out);
  return out;
}

}  // namespace sig2d
