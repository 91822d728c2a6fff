#include "steinbounds/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>
#include <variant>

#include "steinbounds/error.hpp"
#include "steinbounds/special.hpp"

namespace steinbounds {
namespace detail {

enum class Op { Add, Sub, Mul, Div, Pow, Neg, Exp, Log, Sqrt, Abs };

struct ExprNode {
  struct Constant {
    double value;
  };
  struct Variable {};
  struct Unary {
    Op op;
    std::shared_ptr<const ExprNode> arg;
  };
  struct Binary {
    Op op;
    std::shared_ptr<const ExprNode> lhs;
    std::shared_ptr<const ExprNode> rhs;
  };
  std::variant<Constant, Variable, Unary, Binary> node;

  double eval(double x) const {
    return std::visit(
        [x](const auto& n) -> double {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Constant>) {
            return n.value;
          } else if constexpr (std::is_same_v<T, Variable>) {
            return x;
          } else if constexpr (std::is_same_v<T, Unary>) {
            const double v = n.arg->eval(x);
            switch (n.op) {
              case Op::Neg: return -v;
              case Op::Exp: return std::exp(v);
              case Op::Log: return std::log(v);
              case Op::Sqrt: return std::sqrt(v);
              case Op::Abs: return std::abs(v);
              default: return std::nan("");
            }
          } else {
            const double l = n.lhs->eval(x);
            const double r = n.rhs->eval(x);
            switch (n.op) {
              case Op::Add: return l + r;
              case Op::Sub: return l - r;
              case Op::Mul: return l * r;
              case Op::Div: return l / r;
              case Op::Pow: return std::pow(l, r);
              default: return std::nan("");
            }
          }
        },
        node);
  }
};

}  // namespace detail

namespace {

using NodePtr = std::shared_ptr<const detail::ExprNode>;
using detail::ExprNode;
using detail::Op;

NodePtr make_unary(Op op, NodePtr arg) { return std::make_shared<ExprNode>(ExprNode{ExprNode::Unary{op, std::move(arg)}}); }
NodePtr make_binary(Op op, NodePtr l, NodePtr r) {
  return std::make_shared<ExprNode>(ExprNode{ExprNode::Binary{op, std::move(l), std::move(r)}});
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, what + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    while (true) {
      if (accept('+')) {
        lhs = make_binary(Op::Add, lhs, term());
      } else if (accept('-')) {
        lhs = make_binary(Op::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (true) {
      if (accept('*')) {
        lhs = make_binary(Op::Mul, lhs, unary());
      } else if (accept('/')) {
        lhs = make_binary(Op::Div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make_unary(Op::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make_binary(Op::Pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (accept('(')) {
      NodePtr inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view word = text_.substr(start, pos_ - start);
      if (word == "x") return std::make_shared<ExprNode>(ExprNode{ExprNode::Variable{}});
      if (word == "pi") return std::make_shared<ExprNode>(ExprNode{ExprNode::Constant{special::kPi}});
      Op op;
      if (word == "exp") {
        op = Op::Exp;
      } else if (word == "log") {
        op = Op::Log;
      } else if (word == "sqrt") {
        op = Op::Sqrt;
      } else if (word == "abs") {
        op = Op::Abs;
      } else {
        pos_ = start;
        fail("unknown identifier '" + std::string(word) + "'");
      }
      if (!accept('(')) fail("expected '(' after function name");
      NodePtr arg = expr();
      if (!accept(')')) fail("expected ')'");
      return make_unary(op, arg);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    return std::make_shared<ExprNode>(ExprNode{ExprNode::Constant{value}});
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression(std::shared_ptr<const detail::ExprNode> root, std::string text)
    : root_(std::move(root)), text_(std::move(text)) {}

Expression Expression::parse(std::string_view text) {
  Parser parser(text);
  return Expression(parser.parse(), std::string(text));
}

double Expression::operator()(double x) const { return root_->eval(x); }

}  // namespace steinbounds
