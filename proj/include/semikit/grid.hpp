#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace semikit {

using Complex = std::complex<double>;

/// Uniform periodic grid x_j = x0 + j * period / n_points, j = 0..n_points-1.
class SpatialGrid
{
 public:
  SpatialGrid(double x0, double period, int n_points);

  double x0() const { return x0_; }
  double period() const { return period_; }
  int size() const { return n_points_; }
  double spacing() const { return period_ / n_points_; }
  double node(int j) const { return x0_ + j * spacing(); }
  std::vector<double> nodes() const;

  /// Angular wavenumber of DFT mode index k (0 <= k < N), folded to the
  /// symmetric range (-N/2, N/2].
  double wavenumber(int k) const;

  /// Fourier symbols of d/dx and d^2/dx^2 for mode index k. The first
  /// derivative symbol is zero on the Nyquist mode so that real data stays
  /// real.
  Complex first_derivative_symbol(int k) const;
  double second_derivative_symbol(int k) const;

  bool operator==(const SpatialGrid&) const = default;

 private:
  double x0_;
  double period_;
  int n_points_;
};

/// Throws std::invalid_argument on period <= 0 or n_points < 4.
SpatialGrid make_grid(double x0, double period, int n_points);

/// Complex samples of a function on a SpatialGrid.
class GridFunction
{
 public:
  explicit GridFunction(SpatialGrid grid);
  GridFunction(SpatialGrid grid, std::vector<Complex> samples);

  const SpatialGrid& grid() const { return grid_; }
  int size() const { return grid_.size(); }

  std::span<const Complex> samples() const { return samples_; }
  std::span<Complex> samples() { return samples_; }

  Complex operator[](int j) const { return samples_[j]; }
  Complex& operator[](int j) { return samples_[j]; }

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(Complex s);

  /// Throws std::invalid_argument when any sample is NaN or infinite.
  void check_finite() const;

 private:
  SpatialGrid grid_;
  std::vector<Complex> samples_;
};

GridFunction operator+(GridFunction lhs, const GridFunction& rhs);
GridFunction operator-(GridFunction lhs, const GridFunction& rhs);
GridFunction operator*(Complex s, GridFunction f);

/// Throws std::invalid_argument if the two grids differ.
void require_same_grid(const SpatialGrid& a, const SpatialGrid& b, const char* what);

GridFunction sample(const SpatialGrid& grid, const std::function<Complex(double)>& f);
GridFunction sample_real(const SpatialGrid& grid, const std::function<double(double)>& f);

/// Forward transform with the 1/N factor:
///   coeff[k] = (1/N) sum_j samples[j] exp(-2 pi i k j / N).
std::vector<Complex> dft(const GridFunction& f);
/// Inverse of dft (no scaling): samples[j] = sum_k coeff[k] exp(2 pi i k j / N).
GridFunction idft(const SpatialGrid& grid, std::span<const Complex> coeffs);

/// Multiply every Fourier mode k by symbol(k).
GridFunction apply_fourier_multiplier(const GridFunction& f,
                                      const std::function<Complex(int)>& symbol);

/// Values of the band-limited trigonometric interpolant of f at arbitrary
/// points (taken modulo the period). The Nyquist mode of an even grid is
/// split symmetrically, so real samples give a real interpolant.
std::vector<Complex> eval_interpolant(const GridFunction& f, std::span<const double> targets);

/// Same, from precomputed dft(f) coefficients; used in hot loops.
class TrigInterpolant
{
 public:
  explicit TrigInterpolant(const GridFunction& f);
  Complex operator()(double x) const;

 private:
  double x0_;
  double period_;
  int half_;  // highest |mode| carried with full weight
  std::vector<Complex> coeffs_;  // ordered from mode -half (or Nyquist) upward
};

double sup_norm(const GridFunction& f);
/// sqrt(period * mean |samples|^2).
double l2_norm(const GridFunction& f);
/// Discrete L2 inner product <f, g> = h * sum_j f_j conj(g_j).
Complex inner_product(const GridFunction& f, const GridFunction& g);

enum class NormKind { sup, l2 };
double norm(const GridFunction& f, NormKind kind);
std::string to_string(NormKind kind);
NormKind parse_norm_kind(const std::string& s);

/// CSV with header `x,re,im`, one row per node, 17 significant digits.
void write_csv(std::ostream& os, const GridFunction& f);
GridFunction read_csv(std::istream& is, const SpatialGrid& grid);

}  // namespace semikit
