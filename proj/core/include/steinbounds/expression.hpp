#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace steinbounds {

namespace detail {
struct ExprNode;
}

/// A real function of one variable `x`, parsed from a small arithmetic
/// grammar:
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' unary)?
///   primary := number | 'x' | 'pi' | func '(' expr ')' | '(' expr ')'
///   func    := exp | log | sqrt | abs
///
/// `^` is right-associative and binds tighter than unary minus, so
/// `-x^2` is `-(x^2)`. Parse failures throw Error(ParseError).
class Expression {
 public:
  static Expression parse(std::string_view text);

  double operator()(double x) const;
  const std::string& text() const noexcept { return text_; }

 private:
  Expression(std::shared_ptr<const detail::ExprNode> root, std::string text);
  std::shared_ptr<const detail::ExprNode> root_;
  std::string text_;
};

}  // namespace steinbounds
