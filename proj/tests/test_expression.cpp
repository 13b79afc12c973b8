#include "doctest.h"

#include "semikit/expression.hpp"

#include <cmath>
#include <numbers>

using namespace semikit;

TEST_CASE("expressions evaluate like the equivalent C++")
{
  struct Case
  {
    const char* text;
    double (*f)(double);
  };
  const Case cases[] = {
      {"1", [](double) { return 1.0; }},
      {"x", [](double x) { return x; }},
      {"1 + 0.5*sin(x)", [](double x) { return 1.0 + 0.5 * std::sin(x); }},
      {"exp(sin(x))", [](double x) { return std::exp(std::sin(x)); }},
      {"cos(2*x) - x/3", [](double x) { return std::cos(2 * x) - x / 3; }},
      {"2^3^2", [](double) { return std::pow(2.0, 9.0); }},
      {"-x^2", [](double x) { return -(x * x); }},
      {"(1+cos(x))*exp(-x)", [](double x) { return (1 + std::cos(x)) * std::exp(-x); }},
      {"pi*e", [](double) { return std::numbers::pi * std::numbers::e; }},
      {"1.5e-1 * x", [](double x) { return 0.15 * x; }},
      {"--x", [](double x) { return x; }},
  };
  for (const auto& c : cases) {
    CAPTURE(c.text);
    const auto e = Expression::parse(c.text);
    for (double x : {-2.0, -0.3, 0.0, 0.7, 3.1})
      CHECK(e(x) == doctest::Approx(c.f(x)).epsilon(1e-15));
  }
}

TEST_CASE("depends_on_x")
{
  CHECK_FALSE(Expression::parse("2*pi").depends_on_x());
  CHECK(Expression::parse("sin(x)").depends_on_x());
  CHECK(Expression::parse(" cos( x ) ").text() == " cos( x ) ");
}

TEST_CASE("malformed expressions are rejected")
{
  for (const char* bad : {"", "1 +", "sin x", "foo(x)", "(1", "1)", "y", "2**3", "exp()"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Expression::parse(bad), ExpressionError);
  }
}
