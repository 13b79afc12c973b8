#pragma once

#include "semikit/grid.hpp"

#include <Eigen/Dense>

#include <optional>

namespace semikit {

using DenseMatrix = Eigen::MatrixXcd;

/// Largest grid for which the dense reference evolution is built.
inline constexpr int kDenseOracleMaxPoints = 1024;

/// Variable coefficients of L f = a f'' + b f' + c f, sampled on one grid.
/// All three must be real-valued. Nonnegativity of a is checked by the
/// parabolic scheme constructors, not here.
struct OperatorCoefficients
{
  OperatorCoefficients(GridFunction a, GridFunction b, GridFunction c);

  const SpatialGrid& grid() const { return a.grid(); }
  double min_a() const;
  double max_c() const;

  GridFunction a;
  GridFunction b;
  GridFunction c;
};

OperatorCoefficients make_coefficients(const SpatialGrid& grid,
                                       const std::function<double(double)>& a,
                                       const std::function<double(double)>& b,
                                       const std::function<double(double)>& c);

/// Constant-coefficient symbols (a0, b0, c0); Re(a0) >= 0 keeps the
/// multiplier bounded for t >= 0.
struct ConstantSymbols
{
  ConstantSymbols(Complex a0, Complex b0, Complex c0);

  Complex a0;
  Complex b0;
  Complex c0;
};

/// Coefficients with the given constant values sampled on grid.
OperatorCoefficients constant_coefficients(const SpatialGrid& grid, double a0, double b0,
                                           double c0);

/// The constant symbols when all three coefficient arrays are constant.
std::optional<ConstantSymbols> as_constant(const OperatorCoefficients& coeffs);

/// a f'' + b f' + c f with spectral derivatives.
GridFunction apply_L(const OperatorCoefficients& coeffs, const GridFunction& f);

/// Dense matrix whose column j is apply_L(e_j). Throws for N > 1024.
DenseMatrix build_matrix(const OperatorCoefficients& coeffs);

/// exp(t M) by scaling and squaring of the truncated power series.
DenseMatrix matrix_exponential(const DenseMatrix& m, double t);

/// Exact constant-coefficient semigroup: mode k is multiplied by
/// exp(t (-a0 xi_k^2 + i b0 xi_k + c0)).
GridFunction multiplier_semigroup(const ConstantSymbols& sym, double t, const GridFunction& f);

/// exp(t * prefactor * M) u0 with M = build_matrix(coeffs). A prefactor of -i
/// turns a real generator into a unitary group.
GridFunction oracle_evolve(const OperatorCoefficients& coeffs, double t, const GridFunction& u0,
                           Complex prefactor = 1.0);

/// Dense reference evolution with the generator matrix built once.
class DenseEvolution
{
 public:
  explicit DenseEvolution(const OperatorCoefficients& coeffs, Complex prefactor = 1.0);

  GridFunction operator()(double t, const GridFunction& u0) const;
  const DenseMatrix& generator() const { return generator_; }

 private:
  SpatialGrid grid_;
  DenseMatrix generator_;
};

GridFunction apply_matrix(const DenseMatrix& m, const GridFunction& f);

}  // namespace semikit
