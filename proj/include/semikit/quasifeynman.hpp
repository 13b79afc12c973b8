#pragma once

#include "semikit/chernoff.hpp"

namespace semikit {

/// Which of +H / -H the symmetric family S is Chernoff-tangent to.
enum class TangentSign { plus_h, minus_h };

/// Self-adjoint family S(t) together with the potential of
/// H = -d^2/dx^2 + V it was built from.
struct SymmetricScheme
{
  ChernoffScheme scheme;
  GridFunction potential;
  TangentSign tangent_sign = TangentSign::minus_h;

  /// H f = -f'' + V f, spectral.
  GridFunction apply_hamiltonian(const GridFunction& f) const;
  /// Coefficients of -H (a = 1, b = 0, c = -V), for the dense oracle.
  OperatorCoefficients minus_h_coefficients() const;
};

/// S(t) = exp(-t V / 2) exp(t d^2/dx^2) exp(-t V / 2), tangent to -H.
SymmetricScheme strang_heat_potential_scheme(const GridFunction& potential);

inline constexpr double kDefaultSeriesTol = 1e-12;
inline constexpr int kDefaultMaxTerms = 200;

/// Thrown when the exponential series has not converged within max_terms.
struct SeriesNotConverged : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

/// R(t) f = exp(i a (S(t) - I)) f by its power series, truncated once the
/// next term's L2 norm drops below tol * ||f||.
GridFunction remizov_exponential(const SymmetricScheme& s, double t, double a,
                                 const GridFunction& f, double tol = kDefaultSeriesTol,
                                 int max_terms = kDefaultMaxTerms);

/// R(t/n)^n u0. With S tangent to -H and a = 1 this approximates exp(-i t H) u0;
/// a < 0 runs time backwards.
GridFunction quasi_feynman_propagate(const SymmetricScheme& s, double a, double t, int n,
                                     const GridFunction& u0, double tol = kDefaultSeriesTol,
                                     int max_terms = kDefaultMaxTerms);

}  // namespace semikit
