// Closed-form expression grammar used by the chart file format and custom
// q tensors: + - * / ^, exp, log, sin, cos, sinh, cosh, sqrt, pow(a,b),
// numeric literals, pi, and coordinates x1..x4.  Expressions evaluate over
// doubles or jets with the same AST.

#ifndef QSOLITON_EXPR_HPP
#define QSOLITON_EXPR_HPP

#include <cctype>
#include <cmath>
#include <memory>
#include <numbers>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "jet.hpp"

namespace qsoliton {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace expr_detail {

enum class Op {
  kNum,
  kVar,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kNeg,
  kPowInt,
  kPowReal,
  kExp,
  kLog,
  kSin,
  kCos,
  kSinh,
  kCosh,
  kSqrt,
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Op op;
  double num = 0.0;  // kNum value / kPowReal exponent
  int ivar = 0;      // kVar index / kPowInt exponent
  NodePtr a, b;
};

inline double dpowi(double x, int m) {
  if (m < 0) return 1.0 / dpowi(x, -m);
  double r = 1.0, base = x;
  while (m > 0) {
    if (m & 1) r *= base;
    m >>= 1;
    if (m) base *= base;
  }
  return r;
}

template <typename T>
T eval_node(const Node& nd, std::span<const T> x);

template <typename T>
struct EvalOps;

template <>
struct EvalOps<double> {
  static double num(const Node& nd, std::span<const double>) { return nd.num; }
  static double powi_(double a, int m) { return dpowi(a, m); }
  static double pow_(double a, double p) { return std::pow(a, p); }
  static double exp_(double a) { return std::exp(a); }
  static double log_(double a) { return std::log(a); }
  static double sin_(double a) { return std::sin(a); }
  static double cos_(double a) { return std::cos(a); }
  static double sinh_(double a) { return std::sinh(a); }
  static double cosh_(double a) { return std::cosh(a); }
  static double sqrt_(double a) { return std::sqrt(a); }
};

template <>
struct EvalOps<Jet> {
  static Jet num(const Node& nd, std::span<const Jet> x) {
    return Jet::constant(x[0].layout(), nd.num);
  }
  static Jet powi_(const Jet& a, int m) { return powi(a, m); }
  static Jet pow_(const Jet& a, double p) { return pow(a, p); }
  static Jet exp_(const Jet& a) { return exp(a); }
  static Jet log_(const Jet& a) { return log(a); }
  static Jet sin_(const Jet& a) { return sin(a); }
  static Jet cos_(const Jet& a) { return cos(a); }
  static Jet sinh_(const Jet& a) { return sinh(a); }
  static Jet cosh_(const Jet& a) { return cosh(a); }
  static Jet sqrt_(const Jet& a) { return sqrt(a); }
};

template <typename T>
T eval_node(const Node& nd, std::span<const T> x) {
  using O = EvalOps<T>;
  switch (nd.op) {
    case Op::kNum: return O::num(nd, x);
    case Op::kVar: return x[nd.ivar];
    case Op::kAdd: return eval_node<T>(*nd.a, x) + eval_node<T>(*nd.b, x);
    case Op::kSub: return eval_node<T>(*nd.a, x) - eval_node<T>(*nd.b, x);
    case Op::kMul: return eval_node<T>(*nd.a, x) * eval_node<T>(*nd.b, x);
    case Op::kDiv: return eval_node<T>(*nd.a, x) / eval_node<T>(*nd.b, x);
    case Op::kNeg: return -eval_node<T>(*nd.a, x);
    case Op::kPowInt: return O::powi_(eval_node<T>(*nd.a, x), nd.ivar);
    case Op::kPowReal: return O::pow_(eval_node<T>(*nd.a, x), nd.num);
    case Op::kExp: return O::exp_(eval_node<T>(*nd.a, x));
    case Op::kLog: return O::log_(eval_node<T>(*nd.a, x));
    case Op::kSin: return O::sin_(eval_node<T>(*nd.a, x));
    case Op::kCos: return O::cos_(eval_node<T>(*nd.a, x));
    case Op::kSinh: return O::sinh_(eval_node<T>(*nd.a, x));
    case Op::kCosh: return O::cosh_(eval_node<T>(*nd.a, x));
    case Op::kSqrt: return O::sqrt_(eval_node<T>(*nd.a, x));
  }
  throw std::logic_error("expr: bad node");
}

class Parser {
 public:
  Parser(const std::string& s, int dim) : s_(s), dim_(dim) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != s_.size())
      throw parse_error("trailing input in expression: '" + s_.substr(pos_) +
                        "'");
    return e;
  }

 private:
  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      skip_ws();
      if (match('+')) {
        lhs = make(Op::kAdd, lhs, term());
      } else if (match('-')) {
        lhs = make(Op::kSub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      skip_ws();
      if (match('*')) {
        lhs = make(Op::kMul, lhs, factor());
      } else if (match('/')) {
        lhs = make(Op::kDiv, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    skip_ws();
    if (match('-')) {
      auto n = std::make_shared<Node>();
      n->op = Op::kNeg;
      n->a = factor();
      return n;
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    skip_ws();
    if (!match('^')) return base;
    skip_ws();
    bool neg = match('-');
    NodePtr e = atom();
    if (e->op != Op::kNum)
      throw parse_error("exponent must be a numeric literal");
    double p = neg ? -e->num : e->num;
    auto n = std::make_shared<Node>();
    n->a = base;
    if (p == std::floor(p) && std::abs(p) < 64) {
      n->op = Op::kPowInt;
      n->ivar = int(p);
    } else {
      n->op = Op::kPowReal;
      n->num = p;
    }
    return n;
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw parse_error("unexpected end of expression");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      skip_ws();
      if (!match(')')) throw parse_error("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return ident();
    throw parse_error(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    size_t end = pos_;
    while (end < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[end])) ||
            s_[end] == '.' || s_[end] == 'e' || s_[end] == 'E' ||
            ((s_[end] == '+' || s_[end] == '-') && end > pos_ &&
             (s_[end - 1] == 'e' || s_[end - 1] == 'E'))))
      ++end;
    auto n = std::make_shared<Node>();
    n->op = Op::kNum;
    try {
      n->num = std::stod(s_.substr(pos_, end - pos_));
    } catch (const std::exception&) {
      throw parse_error("bad numeric literal: " + s_.substr(pos_, end - pos_));
    }
    pos_ = end;
    return n;
  }

  NodePtr ident() {
    size_t end = pos_;
    while (end < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[end])) ||
            s_[end] == '_'))
      ++end;
    std::string name = s_.substr(pos_, end - pos_);
    pos_ = end;
    if (name == "pi") {
      auto n = std::make_shared<Node>();
      n->op = Op::kNum;
      n->num = std::numbers::pi;
      return n;
    }
    if (name.size() == 2 && name[0] == 'x' && name[1] >= '1' &&
        name[1] <= '9') {
      int idx = name[1] - '1';
      if (idx >= dim_)
        throw parse_error("coordinate " + name + " beyond chart dimension");
      auto n = std::make_shared<Node>();
      n->op = Op::kVar;
      n->ivar = idx;
      return n;
    }
    static const struct {
      const char* name;
      Op op;
    } funcs[] = {{"exp", Op::kExp},   {"log", Op::kLog},   {"sin", Op::kSin},
                 {"cos", Op::kCos},   {"sinh", Op::kSinh}, {"cosh", Op::kCosh},
                 {"sqrt", Op::kSqrt}};
    for (const auto& f : funcs) {
      if (name == f.name) {
        skip_ws();
        if (!match('(')) throw parse_error("expected '(' after " + name);
        NodePtr a = expr();
        skip_ws();
        if (!match(')')) throw parse_error("expected ')'");
        auto n = std::make_shared<Node>();
        n->op = f.op;
        n->a = a;
        return n;
      }
    }
    if (name == "pow") {
      skip_ws();
      if (!match('(')) throw parse_error("expected '(' after pow");
      NodePtr a = expr();
      skip_ws();
      if (!match(',')) throw parse_error("expected ',' in pow");
      NodePtr b = expr();
      skip_ws();
      if (!match(')')) throw parse_error("expected ')'");
      if (b->op != Op::kNum)
        throw parse_error("pow exponent must be a numeric literal");
      auto n = std::make_shared<Node>();
      n->a = a;
      if (b->num == std::floor(b->num) && std::abs(b->num) < 64) {
        n->op = Op::kPowInt;
        n->ivar = int(b->num);
      } else {
        n->op = Op::kPowReal;
        n->num = b->num;
      }
      return n;
    }
    throw parse_error("unknown identifier: " + name);
  }

  NodePtr make(Op op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  void skip_ws() {
    while (pos_ < s_.size() &&
           std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool match(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string s_;
  int dim_;
  size_t pos_ = 0;
};

}  // namespace expr_detail

// A parsed closed-form expression over chart coordinates.
class Expression {
 public:
  Expression() = default;
  Expression(const std::string& text, int dim)
      : text_(text), dim_(dim),
        root_(expr_detail::Parser(text, dim).parse()) {}

  static Expression constant(double v, int dim) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return Expression(os.str(), dim);
  }

  bool valid() const { return root_ != nullptr; }
  const std::string& text() const { return text_; }
  int dim() const { return dim_; }

  double operator()(std::span<const double> x) const {
    return expr_detail::eval_node<double>(*root_, x);
  }
  Jet operator()(std::span<const Jet> x) const {
    return expr_detail::eval_node<Jet>(*root_, x);
  }
  double operator()(const std::vector<double>& x) const {
    return (*this)(std::span<const double>(x));
  }
  Jet operator()(const std::vector<Jet>& x) const {
    return (*this)(std::span<const Jet>(x));
  }

 private:
  std::string text_;
  int dim_ = 0;
  expr_detail::NodePtr root_;
};

}  // namespace qsoliton

#endif  // QSOLITON_EXPR_HPP
