#include "doctest.h"

#include "semikit/chernoff.hpp"
#include "test_support.hpp"

using namespace semikit;
using semikit::testing::max_abs_diff;
using semikit::testing::periodic_grid;
using semikit::testing::relative_l2;

namespace {

GridFunction cosine(const SpatialGrid& g) { return sample_real(g, [](double x) { return std::cos(x); }); }

OperatorCoefficients tangency_coeffs(const SpatialGrid& g, bool with_reaction = false)
{
  return make_coefficients(
      g, [](double x) { return 1.0 + 0.5 * std::sin(x); }, [](double x) { return std::cos(x); },
      [with_reaction](double x) { return with_reaction ? std::sin(x) : 0.0; });
}

std::vector<double> decades(double hi, double lo, int count)
{
  std::vector<double> t;
  for (int i = 0; i < count; ++i)
    t.push_back(hi * std::pow(lo / hi, static_cast<double>(i) / (count - 1)));
  return t;
}

}  // namespace

TEST_CASE("schemes are the identity at t = 0")
{
  const auto g = periodic_grid(32);
  std::mt19937_64 rng(1);
  const auto f = testing::random_samples(g, rng);
  const auto coeffs = tangency_coeffs(g, true);
  for (const auto& scheme : {shift_scheme(coeffs), integral_scheme(coeffs, 20),
                             exact_scheme(ConstantSymbols(1.0, 0.3, 0.1))}) {
    CHECK(max_abs_diff(scheme.apply(0.0, f), f) < 1e-14);
  }
  CHECK(max_abs_diff(shift_scheme(coeffs).apply(0.0, f), f) == 0.0);
  CHECK_THROWS(shift_scheme(coeffs).apply(-0.1, f));
}

TEST_CASE("shift scheme closed forms")
{
  const auto g = periodic_grid(32);
  const double t = 0.3;
  const auto heat = shift_scheme(constant_coefficients(g, 1, 0, 0));
  // (cos(x + d) + cos(x - d)) / 2 = cos(d) cos(x)
  CHECK(max_abs_diff(heat.apply(t, cosine(g)), Complex(std::cos(std::sqrt(2 * t))) * cosine(g)) < 1e-13);

  std::mt19937_64 rng(2);
  const auto f = testing::random_samples(g, rng);
  const auto reaction = shift_scheme(constant_coefficients(g, 0, 0, -1.5));
  CHECK(max_abs_diff(reaction.apply(t, f), Complex(std::exp(-1.5 * t)) * f) < 1e-15);
  CHECK(reaction.growth_bound_hint == 0.0);
  CHECK(shift_scheme(constant_coefficients(g, 0, 0, 2)).growth_bound_hint == 2.0);

  CHECK_THROWS(shift_scheme(constant_coefficients(g, -0.1, 0, 0)));
}

TEST_CASE("degenerate diffusion reduces to drift and reaction")
{
  const auto g = periodic_grid(32);
  // a vanishes on the right half of the domain
  const auto coeffs = make_coefficients(
      g, [](double x) { return x < std::numbers::pi ? std::sin(x) * std::sin(x) : 0.0; },
      [](double) { return 0.0; }, [](double) { return 0.25; });
  std::mt19937_64 rng(3);
  const auto f = testing::random_smooth(g, rng);
  const auto out = shift_scheme(coeffs).apply(0.2, f);
  for (int j = g.size() / 2 + 1; j < g.size(); ++j)
    CHECK(out[j] == std::exp(0.2 * 0.25) * f[j]);
}

TEST_CASE("integral scheme closed forms")
{
  const auto g = periodic_grid(32);
  const double t = 0.5;
  const auto heat = integral_scheme(constant_coefficients(g, 1, 0, 0), 20);
  CHECK(max_abs_diff(heat.apply(t, cosine(g)), Complex(std::exp(-t)) * cosine(g)) < 1e-10);

  std::mt19937_64 rng(4);
  const auto f = testing::random_samples(g, rng);
  for (int m : {2, 5, 20}) {
    const auto reaction = integral_scheme(constant_coefficients(g, 0, 0, 0.7), m);
    CHECK(max_abs_diff(reaction.apply(t, f), Complex(std::exp(0.7 * t)) * f) < 1e-14);
  }
  CHECK_THROWS(integral_scheme(constant_coefficients(g, 1, 0, 0), 1));
  CHECK_THROWS(integral_scheme(constant_coefficients(g, -1, 0, 0), 4));
}

TEST_CASE("exact scheme")
{
  const auto g = periodic_grid(32);
  const auto scheme = exact_scheme(ConstantSymbols(1.0, 0.0, 0.0));
  CHECK(max_abs_diff(scheme.apply(1.0, cosine(g)), Complex(std::exp(-1.0)) * cosine(g)) < 1e-14);
  CHECK(scheme.is_symmetric);
  std::mt19937_64 rng(5);
  const auto f = testing::random_smooth(g, rng);
  const auto transport = exact_scheme(ConstantSymbols(0.5, 1.0, 0.0));
  CHECK_FALSE(transport.is_symmetric);
  for (int n : {1, 3, 17})
    CHECK(relative_l2(chernoff_iterate(transport, 0.8, n, f), transport.apply(0.8, f)) < 1e-13);
}

TEST_CASE("schemes are linear")
{
  const auto g = periodic_grid(32);
  std::mt19937_64 rng(6);
  const auto coeffs = tangency_coeffs(g, true);
  const Complex alpha(1.5, -0.5), beta(-0.25, 2.0);
  for (const auto& scheme : {shift_scheme(coeffs), integral_scheme(coeffs, 12)}) {
    const auto f = testing::random_samples(g, rng);
    const auto h = testing::random_samples(g, rng);
    const double t = 0.05;
    const auto lhs = scheme.apply(t, alpha * f + beta * h);
    const auto rhs = alpha * scheme.apply(t, f) + beta * scheme.apply(t, h);
    CHECK(max_abs_diff(lhs, rhs) < 1e-10);
  }
}

TEST_CASE("chernoff_iterate")
{
  const auto g = periodic_grid(32);
  std::mt19937_64 rng(7);
  const auto u0 = testing::random_smooth(g, rng);
  const auto coeffs = tangency_coeffs(g, true);
  const auto scheme = shift_scheme(coeffs);

  CHECK(max_abs_diff(chernoff_iterate(scheme, 0.4, 1, u0), scheme.apply(0.4, u0)) == 0.0);
  CHECK_THROWS(chernoff_iterate(scheme, 0.4, 0, u0));

  const auto reaction = shift_scheme(constant_coefficients(g, 0, 0, 0.9));
  for (int n : {1, 7, 64, 1000})
    CHECK(max_abs_diff(chernoff_iterate(reaction, 1.0, n, u0), Complex(std::exp(0.9)) * u0) < 1e-12);

  // Two half-intervals of n steps reuse exactly the step of one 2n-step run.
  const auto twice = chernoff_iterate(scheme, 0.6 / 2, 5, chernoff_iterate(scheme, 0.6 / 2, 5, u0));
  const auto once = chernoff_iterate(scheme, 0.6, 10, u0);
  for (int j = 0; j < g.size(); ++j)
    CHECK(twice[j] == once[j]);
}

TEST_CASE("shift scheme iterate on the heat eigenmode")
{
  // C(t/n)^n cos = cos(sqrt(2t/n))^n cos.
  const auto g = periodic_grid(64);
  const auto heat = shift_scheme(constant_coefficients(g, 1, 0, 0));
  const int n = 1024;
  const double prefactor = std::pow(std::cos(std::sqrt(2.0 / n)), n);
  CHECK(std::abs(prefactor - std::exp(-1.0)) <= 2e-3);
  const auto out = chernoff_iterate(heat, 1.0, n, cosine(g));
  CHECK(max_abs_diff(out, Complex(prefactor) * cosine(g)) < 1e-11);
}

TEST_CASE("verify_tangency")
{
  const auto g = periodic_grid(64);
  const auto t_values = decades(1e-1, 1e-3, 7);

  // exact heat semigroup on cos: r(t) = |exp(-t) - 1 + t|
  const auto heat = constant_coefficients(g, 1, 0, 0);
  const auto exact = verify_tangency(exact_scheme(ConstantSymbols(1.0, 0.0, 0.0)), heat, cosine(g), t_values);
  CHECK_FALSE(exact.degenerate);
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    const double t = t_values[i];
    CHECK(exact.residuals[i] == doctest::Approx(std::exp(-t) - 1 + t).epsilon(1e-6));
  }
  CHECK(exact.order == doctest::Approx(2.0).epsilon(0.05));

  const auto zero = constant_coefficients(g, 0, 0, 0);
  const auto none = verify_tangency(shift_scheme(zero), zero, cosine(g), t_values);
  CHECK(none.degenerate);
  for (double r : none.residuals)
    CHECK(r == 0.0);

  const auto coeffs = tangency_coeffs(g);
  const auto f = sample_real(g, [](double x) { return std::sin(x); });
  for (const auto& scheme : {shift_scheme(coeffs), integral_scheme(coeffs, 20)}) {
    const auto report = verify_tangency(scheme, coeffs, f, t_values);
    CHECK_FALSE(report.degenerate);
    CHECK(report.order >= 1.8);
    CHECK(report.order <= 2.2);
  }

  CHECK_THROWS(verify_tangency(shift_scheme(coeffs), coeffs, f, {1e-1, 1e-2, 1e-3}));
  CHECK_THROWS(verify_tangency(shift_scheme(coeffs), coeffs, f, {1e-1, 5e-2, 3e-2, 2e-2}));
  CHECK_THROWS(verify_tangency(shift_scheme(coeffs), coeffs, f, {1e-3, 1e-2, 1e-1, 1.0}));
}

TEST_CASE("verify_growth_bound")
{
  const auto g = periodic_grid(64);
  std::mt19937_64 rng(8);
  std::vector<GridFunction> trials;
  for (int i = 0; i < 4; ++i)
    trials.push_back(testing::random_smooth(g, rng, 4));
  const std::vector<double> ts{1.0, 0.5, 0.1, 0.01};

  const auto reaction = shift_scheme(constant_coefficients(g, 0, 0, 1));
  CHECK(std::abs(verify_growth_bound(reaction, trials, ts) - 1.0) < 1e-6);

  const auto heat = shift_scheme(constant_coefficients(g, 1, 0, 0));
  CHECK(std::abs(verify_growth_bound(heat, trials, ts)) < 1e-6);

  const auto sin_reaction = make_coefficients(
      g, [](double x) { return 1.0 + 0.5 * std::sin(x); }, [](double x) { return std::cos(x); },
      [](double x) { return std::sin(x); });
  for (const auto& scheme : {shift_scheme(sin_reaction), integral_scheme(sin_reaction)}) {
    const double w = verify_growth_bound(scheme, trials, ts);
    CHECK(w <= 1.0 + 0.1);
    CHECK(w <= scheme.growth_bound_hint + 0.1);
  }

  CHECK_THROWS(verify_growth_bound(heat, {}, ts));
  CHECK_THROWS(verify_growth_bound(heat, {GridFunction(g)}, ts));
}

TEST_CASE("sup-norm bound of the averaging schemes")
{
  const auto g = periodic_grid(64);
  std::mt19937_64 rng(10);
  const auto coeffs = tangency_coeffs(g, true);
  for (const auto& scheme : {shift_scheme(coeffs), integral_scheme(coeffs)}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto f = testing::random_smooth(g, rng, 5);
      for (double t : {1.0, 0.5, 0.1, 0.01}) {
        const double bound = std::exp(t * scheme.growth_bound_hint) * sup_norm(f) * (1 + 1e-10);
        CHECK(sup_norm(scheme.apply(t, f)) <= bound);
      }
    }
  }
}

TEST_CASE("iterates converge to the dense oracle")
{
  const auto g = periodic_grid(32);
  std::mt19937_64 rng(12);
  const auto u0 = testing::random_smooth(g, rng, 4);
  const auto coeffs = tangency_coeffs(g, true);
  const auto exact = oracle_evolve(coeffs, 0.5, u0);
  for (const auto& scheme : {shift_scheme(coeffs), integral_scheme(coeffs, 8)}) {
    double previous = std::numeric_limits<double>::infinity();
    for (int n = 8; n <= 256; n *= 2) {
      const double e = sup_norm(chernoff_iterate(scheme, 0.5, n, u0) - exact);
      CHECK(e < previous);
      previous = e;
    }
  }
}

TEST_CASE("scalar_chernoff")
{
  CHECK(scalar_chernoff(0.0, 3.0, 7) == 1.0);
  CHECK(scalar_chernoff(1.0, 1.0, 1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::abs(scalar_chernoff(1.0, 1.0, 1000000) - std::exp(1.0)) <= 2e-6);
  CHECK(scalar_chernoff(-3.0, 1.0, 1) == doctest::Approx(-2.0));
  CHECK_THROWS(scalar_chernoff(1.0, 1.0, 0));
}
