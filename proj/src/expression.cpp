#include "semikit/expression.hpp"

#include <fmt/format.h>

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

namespace semikit {

struct Expression::Node
{
  enum class Kind { number, variable, negate, add, sub, mul, div, pow, sin, cos, exp };

  Kind kind;
  double value = 0.0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;

  double eval(double x) const
  {
    switch (kind) {
      case Kind::number: return value;
      case Kind::variable: return x;
      case Kind::negate: return -lhs->eval(x);
      case Kind::add: return lhs->eval(x) + rhs->eval(x);
      case Kind::sub: return lhs->eval(x) - rhs->eval(x);
      case Kind::mul: return lhs->eval(x) * rhs->eval(x);
      case Kind::div: return lhs->eval(x) / rhs->eval(x);
      case Kind::pow: return std::pow(lhs->eval(x), rhs->eval(x));
      case Kind::sin: return std::sin(lhs->eval(x));
      case Kind::cos: return std::cos(lhs->eval(x));
      case Kind::exp: return std::exp(lhs->eval(x));
    }
    return 0.0;
  }

  bool uses_x() const
  {
    return kind == Kind::variable || (lhs && lhs->uses_x()) || (rhs && rhs->uses_x());
  }
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr, double value = 0.0)
{
  return std::make_shared<const Node>(Node{kind, value, std::move(lhs), std::move(rhs)});
}

class Parser
{
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  NodePtr parse()
  {
    auto root = expr();
    skip_space();
    if (pos_ != text_.size())
      fail("unexpected character");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const
  {
    throw ExpressionError(
        fmt::format("expression '{}': {} at position {}", text_, what, pos_));
  }

  void skip_space()
  {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c)
  {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr()
  {
    auto lhs = term();
    while (true) {
      if (accept('+'))
        lhs = make(Node::Kind::add, lhs, term());
      else if (accept('-'))
        lhs = make(Node::Kind::sub, lhs, term());
      else
        return lhs;
    }
  }

  NodePtr term()
  {
    auto lhs = unary();
    while (true) {
      if (accept('*'))
        lhs = make(Node::Kind::mul, lhs, unary());
      else if (accept('/'))
        lhs = make(Node::Kind::div, lhs, unary());
      else
        return lhs;
    }
  }

  NodePtr unary()
  {
    if (accept('-'))
      return make(Node::Kind::negate, unary());
    if (accept('+'))
      return unary();
    return power();
  }

  NodePtr power()
  {
    auto base = primary();
    if (accept('^'))
      return make(Node::Kind::pow, base, unary());
    return base;
  }

  NodePtr primary()
  {
    skip_space();
    if (pos_ >= text_.size())
      fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return number();
    if (std::isalpha(static_cast<unsigned char>(c)))
      return name();
    if (accept('(')) {
      auto inner = expr();
      if (!accept(')'))
        fail("expected ')'");
      return inner;
    }
    fail(fmt::format("unexpected '{}'", c));
  }

  NodePtr number()
  {
    double v = 0.0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc())
      fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return make(Node::Kind::number, nullptr, nullptr, v);
  }

  NodePtr name()
  {
    const auto start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    const auto id = text_.substr(start, pos_ - start);
    if (id == "x")
      return make(Node::Kind::variable);
    if (id == "pi")
      return make(Node::Kind::number, nullptr, nullptr, std::numbers::pi);
    if (id == "e")
      return make(Node::Kind::number, nullptr, nullptr, std::numbers::e);
    Node::Kind kind;
    if (id == "sin")
      kind = Node::Kind::sin;
    else if (id == "cos")
      kind = Node::Kind::cos;
    else if (id == "exp")
      kind = Node::Kind::exp;
    else {
      pos_ = start;
      fail(fmt::format("unknown name '{}'", id));
    }
    if (!accept('('))
      fail(fmt::format("expected '(' after {}", id));
    auto arg = expr();
    if (!accept(')'))
      fail("expected ')'");
    return make(kind, arg);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression(std::string text, std::shared_ptr<const Node> root)
    : text_(std::move(text)), root_(std::move(root))
{
}

Expression Expression::parse(const std::string& text)
{
  auto root = Parser(text).parse();
  return Expression(text, std::move(root));
}

double Expression::operator()(double x) const { return root_->eval(x); }

bool Expression::depends_on_x() const { return root_->uses_x(); }

}  // namespace semikit
