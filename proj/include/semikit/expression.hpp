#pragma once

#include <memory>
#include <stdexcept>
#include <string>

namespace semikit {

struct ExpressionError : std::invalid_argument
{
  using std::invalid_argument::invalid_argument;
};

/// Closed-form real function of x.
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' unary)?
///   primary := number | 'x' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
///   func    := 'sin' | 'cos' | 'exp'
///
/// '^' is right associative and binds tighter than unary minus: -x^2 = -(x^2).
class Expression
{
 public:
  /// Throws ExpressionError naming the offending position.
  static Expression parse(const std::string& text);

  double operator()(double x) const;
  bool depends_on_x() const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  Expression(std::string text, std::shared_ptr<const Node> root);

  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace semikit
