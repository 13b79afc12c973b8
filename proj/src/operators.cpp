#include "semikit/operators.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace semikit {

namespace {

void require_real(const GridFunction& f, const char* name)
{
  f.check_finite();
  for (int j = 0; j < f.size(); ++j) {
    if (f[j].imag() != 0.0)
      throw std::invalid_argument(fmt::format("coefficient {} must be real-valued", name));
  }
}

bool is_constant(const GridFunction& f)
{
  for (int j = 1; j < f.size(); ++j) {
    if (f[j] != f[0])
      return false;
  }
  return true;
}

double norm1(const DenseMatrix& m)
{
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace

OperatorCoefficients::OperatorCoefficients(GridFunction a_, GridFunction b_, GridFunction c_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_))
{
  require_same_grid(a.grid(), b.grid(), "coefficients");
  require_same_grid(a.grid(), c.grid(), "coefficients");
  require_real(a, "a");
  require_real(b, "b");
  require_real(c, "c");
}

double OperatorCoefficients::min_a() const
{
  double m = std::numeric_limits<double>::infinity();
  for (const auto& v : a.samples())
    m = std::min(m, v.real());
  return m;
}

double OperatorCoefficients::max_c() const
{
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& v : c.samples())
    m = std::max(m, v.real());
  return m;
}

OperatorCoefficients make_coefficients(const SpatialGrid& grid,
                                       const std::function<double(double)>& a,
                                       const std::function<double(double)>& b,
                                       const std::function<double(double)>& c)
{
  return {sample_real(grid, a), sample_real(grid, b), sample_real(grid, c)};
}

ConstantSymbols::ConstantSymbols(Complex a0_, Complex b0_, Complex c0_)
    : a0(a0_), b0(b0_), c0(c0_)
{
  if (a0.real() < 0.0)
    throw std::invalid_argument("constant symbols: Re(a0) must be nonnegative");
}

OperatorCoefficients constant_coefficients(const SpatialGrid& grid, double a0, double b0,
                                           double c0)
{
  return make_coefficients(
      grid, [a0](double) { return a0; }, [b0](double) { return b0; },
      [c0](double) { return c0; });
}

std::optional<ConstantSymbols> as_constant(const OperatorCoefficients& coeffs)
{
  if (!is_constant(coeffs.a) || !is_constant(coeffs.b) || !is_constant(coeffs.c))
    return std::nullopt;
  if (coeffs.a[0].real() < 0.0)
    return std::nullopt;
  return ConstantSymbols(coeffs.a[0], coeffs.b[0], coeffs.c[0]);
}

GridFunction apply_L(const OperatorCoefficients& coeffs, const GridFunction& f)
{
  const auto& grid = coeffs.grid();
  require_same_grid(grid, f.grid(), "apply_L");
  const auto fhat = dft(f);
  const int n = grid.size();
  std::vector<Complex> d1(n), d2(n);
  for (int k = 0; k < n; ++k) {
    d1[k] = grid.first_derivative_symbol(k) * fhat[k];
    d2[k] = grid.second_derivative_symbol(k) * fhat[k];
  }
  const auto f1 = idft(grid, d1);
  const auto f2 = idft(grid, d2);
  GridFunction out(grid);
  for (int j = 0; j < n; ++j)
    out[j] = coeffs.a[j] * f2[j] + coeffs.b[j] * f1[j] + coeffs.c[j] * f[j];
  return out;
}

DenseMatrix build_matrix(const OperatorCoefficients& coeffs)
{
  const auto& grid = coeffs.grid();
  const int n = grid.size();
  if (n > kDenseOracleMaxPoints)
    throw std::invalid_argument(fmt::format(
        "dense oracle limited to {} points, grid has {}", kDenseOracleMaxPoints, n));
  DenseMatrix m(n, n);
  GridFunction unit(grid);
  for (int j = 0; j < n; ++j) {
    unit[j] = 1.0;
    const auto column = apply_L(coeffs, unit);
    for (int i = 0; i < n; ++i)
      m(i, j) = column[i];
    unit[j] = 0.0;
  }
  return m;
}

DenseMatrix matrix_exponential(const DenseMatrix& m, double t)
{
  if (m.rows() != m.cols())
    throw std::invalid_argument("matrix_exponential: matrix must be square");
  if (!std::isfinite(t) || !m.allFinite())
    throw std::invalid_argument("matrix_exponential: non-finite entries");

  const DenseMatrix a = t * m;
  const double anorm = norm1(a);
  int squarings = 0;
  if (anorm > 0.5)
    squarings = static_cast<int>(std::ceil(std::log2(anorm / 0.5)));
  const DenseMatrix b = a / std::ldexp(1.0, squarings);

  // ||b|| <= 1/2, so the series terms fall below machine precision
  // after about fifteen terms.
  const auto n = m.rows();
  DenseMatrix sum = DenseMatrix::Identity(n, n);
  DenseMatrix term = DenseMatrix::Identity(n, n);
  for (int k = 1; k <= 60; ++k) {
    term = (term * b) / static_cast<double>(k);
    sum += term;
    if (norm1(term) <= 1e-18 * norm1(sum))
      break;
  }
  for (int s = 0; s < squarings; ++s)
    sum = sum * sum;
  return sum;
}

GridFunction multiplier_semigroup(const ConstantSymbols& sym, double t, const GridFunction& f)
{
  if (!(t >= 0.0))
    throw std::invalid_argument("multiplier_semigroup: t must be nonnegative");
  const auto& grid = f.grid();
  return apply_fourier_multiplier(f, [&](int k) {
    const Complex exponent = sym.a0 * grid.second_derivative_symbol(k) +
                             sym.b0 * grid.first_derivative_symbol(k) + sym.c0;
    return std::exp(t * exponent);
  });
}

GridFunction apply_matrix(const DenseMatrix& m, const GridFunction& f)
{
  Eigen::Map<const Eigen::VectorXcd> v(f.samples().data(), f.size());
  const Eigen::VectorXcd r = m * v;
  return GridFunction(f.grid(), std::vector<Complex>(r.data(), r.data() + r.size()));
}

DenseEvolution::DenseEvolution(const OperatorCoefficients& coeffs, Complex prefactor)
    : grid_(coeffs.grid()), generator_(prefactor * build_matrix(coeffs))
{
}

GridFunction DenseEvolution::operator()(double t, const GridFunction& u0) const
{
  if (!(t >= 0.0))
    throw std::invalid_argument("oracle_evolve: t must be nonnegative");
  require_same_grid(grid_, u0.grid(), "oracle_evolve");
  if (t == 0.0)
    return u0;
  return apply_matrix(matrix_exponential(generator_, t), u0);
}

GridFunction oracle_evolve(const OperatorCoefficients& coeffs, double t, const GridFunction& u0,
                           Complex prefactor)
{
  return DenseEvolution(coeffs, prefactor)(t, u0);
}

}  // namespace semikit
