#include "doctest.h"

#include "semikit/resolvent.hpp"
#include "test_support.hpp"

using namespace semikit;
using semikit::testing::periodic_grid;
using semikit::testing::relative_l2;

namespace {

GridFunction cosine(const SpatialGrid& g) { return sample_real(g, [](double x) { return std::cos(x); }); }

// (lambda - L)^{-1} g for constant coefficients, mode by mode.
GridFunction fourier_resolvent(const ConstantSymbols& sym, Complex lambda, const GridFunction& g)
{
  const auto& grid = g.grid();
  return apply_fourier_multiplier(g, [&](int k) {
    return 1.0 / (lambda - sym.a0 * grid.second_derivative_symbol(k) -
                  sym.b0 * grid.first_derivative_symbol(k) - sym.c0);
  });
}

OperatorCoefficients variable_coeffs(const SpatialGrid& g)
{
  return make_coefficients(
      g, [](double x) { return 1.0 + 0.5 * std::sin(x); }, [](double x) { return std::cos(x); },
      [](double) { return 0.0; });
}

}  // namespace

TEST_CASE("resolvent of L = 0 is g / lambda")
{
  const auto g = periodic_grid(32);
  const auto rhs = cosine(g);
  const auto zero = constant_coefficients(g, 0, 0, 0);
  ResolventRequest req{1.0, rhs, 8, {}};
  req.quadrature.t_max = 25.0;
  const auto f = resolvent_solve(shift_scheme(zero), req);
  CHECK(testing::max_abs_diff(f, rhs) <= 1e-10);
  CHECK(elliptic_residual(zero, 1.0, rhs, rhs) < 1e-15);

  req.g = GridFunction(g);
  CHECK(sup_norm(resolvent_solve(shift_scheme(zero), req)) == 0.0);
  CHECK(elliptic_residual(zero, 1.0, req.g, req.g) == 0.0);
}

TEST_CASE("constant-coefficient resolvent matches the Fourier solution")
{
  const auto g = periodic_grid(32);
  const ConstantSymbols heat(1.0, 0.0, 0.0);
  const ResolventRequest req{2.0, cosine(g), 64, {}};
  const auto f = resolvent_solve(exact_scheme(heat), req);
  CHECK(testing::max_abs_diff(f, Complex(1.0 / 3.0) * cosine(g)) <= 1e-6);
  CHECK(elliptic_residual(constant_coefficients(g, 1, 0, 0), 2.0, f, req.g) <= 1e-6);

  std::mt19937_64 rng(3);
  const auto rhs = testing::random_smooth(g, rng, 6, true);
  const ConstantSymbols drift(0.7, 0.4, -0.3);
  const Complex lambda(1.5, 0.8);
  const auto exact = fourier_resolvent(drift, lambda, rhs);
  CHECK(elliptic_residual(constant_coefficients(g, 0.7, 0.4, -0.3), lambda, exact, rhs) < 1e-12);

  double previous = std::numeric_limits<double>::infinity();
  for (int panels : {1, 2, 4, 8, 16}) {
    ResolventRequest r{lambda, rhs, 1, {}};
    r.quadrature.panels = panels;
    const double e = relative_l2(resolvent_solve(exact_scheme(drift), r), exact);
    CHECK((e < previous || e < 1e-12));
    previous = e;
  }
  // stiff high modes limit uniform panels
  CHECK(previous < 1e-5);
}

TEST_CASE("resolvent is linear in g")
{
  const auto grid = periodic_grid(32);
  std::mt19937_64 rng(4);
  const auto g1 = testing::random_smooth(grid, rng);
  const auto g2 = testing::random_smooth(grid, rng);
  const Complex alpha(0.5, 1.0), beta(-2.0, 0.0);
  const auto scheme = shift_scheme(variable_coeffs(grid));
  auto solve = [&](const GridFunction& g) {
    ResolventRequest req{3.0, g, 8, {}};
    req.quadrature.panels = 4;
    return resolvent_solve(scheme, req);
  };
  const auto lhs = solve(alpha * g1 + beta * g2);
  const auto rhs = alpha * solve(g1) + beta * solve(g2);
  CHECK(testing::max_abs_diff(lhs, rhs) <= 1e-9);
}

TEST_CASE("variable-coefficient residual decreases under refinement")
{
  const auto grid = periodic_grid(32);
  const auto coeffs = variable_coeffs(grid);
  const auto scheme = shift_scheme(coeffs);
  const auto g = cosine(grid);
  double previous = std::numeric_limits<double>::infinity();
  for (auto [panels, n] : {std::pair{4, 8}, {8, 32}, {16, 128}}) {
    ResolventRequest req{2.0, g, n, {}};
    req.quadrature.panels = panels;
    const double r = elliptic_residual(coeffs, 2.0, resolvent_solve(scheme, req), g);
    CHECK(r < previous);
    previous = r;
  }
  CHECK(previous <= 1e-3);
}

TEST_CASE("resolvent preconditions")
{
  const auto g = periodic_grid(16);
  const auto scheme = shift_scheme(constant_coefficients(g, 1, 0, 0.5));
  CHECK_THROWS(resolvent_solve(scheme, ResolventRequest{0.5, cosine(g), 8, {}}));
  ResolventRequest short_tail{1.0, cosine(g), 8, {}};
  short_tail.quadrature.t_max = 5.0;
  CHECK_THROWS(resolvent_solve(scheme, short_tail));
  CHECK(default_t_max(2.0, 0.0) == doctest::Approx(std::log(1e10) / 2.0));
}
