#include "semikit/grid.hpp"

#include <fftw3.h>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace semikit {

SpatialGrid::SpatialGrid(double x0, double period, int n_points)
    : x0_(x0), period_(period), n_points_(n_points)
{
  if (!std::isfinite(x0))
    throw std::invalid_argument("grid: x0 must be finite");
  if (!(period > 0.0) || !std::isfinite(period))
    throw std::invalid_argument("grid: period must be positive");
  if (n_points < 4)
    throw std::invalid_argument("grid: n_points must be at least 4");
}

std::vector<double> SpatialGrid::nodes() const
{
  std::vector<double> x(n_points_);
  for (int j = 0; j < n_points_; ++j)
    x[j] = node(j);
  return x;
}

double SpatialGrid::wavenumber(int k) const
{
  const int folded = (2 * k > n_points_) ? k - n_points_ : k;
  return 2.0 * std::numbers::pi * folded / period_;
}

Complex SpatialGrid::first_derivative_symbol(int k) const
{
  if (n_points_ % 2 == 0 && 2 * k == n_points_)
    return {0.0, 0.0};
  return {0.0, wavenumber(k)};
}

double SpatialGrid::second_derivative_symbol(int k) const
{
  const double xi = wavenumber(k);
  return -xi * xi;
}

SpatialGrid make_grid(double x0, double period, int n_points)
{
  return SpatialGrid(x0, period, n_points);
}

// ---------------------------------------------------------------------------

GridFunction::GridFunction(SpatialGrid grid)
    : grid_(grid), samples_(static_cast<std::size_t>(grid.size()))
{
}

GridFunction::GridFunction(SpatialGrid grid, std::vector<Complex> samples)
    : grid_(grid), samples_(std::move(samples))
{
  if (static_cast<int>(samples_.size()) != grid_.size())
    throw std::invalid_argument(fmt::format(
        "grid function: expected {} samples, got {}", grid_.size(), samples_.size()));
}

void require_same_grid(const SpatialGrid& a, const SpatialGrid& b, const char* what)
{
  if (!(a == b))
    throw std::invalid_argument(fmt::format("{}: grid mismatch", what));
}

GridFunction& GridFunction::operator+=(const GridFunction& other)
{
  require_same_grid(grid_, other.grid_, "operator+=");
  for (std::size_t j = 0; j < samples_.size(); ++j)
    samples_[j] += other.samples_[j];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other)
{
  require_same_grid(grid_, other.grid_, "operator-=");
  for (std::size_t j = 0; j < samples_.size(); ++j)
    samples_[j] -= other.samples_[j];
  return *this;
}

GridFunction& GridFunction::operator*=(Complex s)
{
  for (auto& v : samples_)
    v *= s;
  return *this;
}

void GridFunction::check_finite() const
{
  for (std::size_t j = 0; j < samples_.size(); ++j) {
    if (!std::isfinite(samples_[j].real()) || !std::isfinite(samples_[j].imag()))
      throw std::invalid_argument(fmt::format("non-finite sample at node {}", j));
  }
}

GridFunction operator+(GridFunction lhs, const GridFunction& rhs) { return lhs += rhs; }
GridFunction operator-(GridFunction lhs, const GridFunction& rhs) { return lhs -= rhs; }
GridFunction operator*(Complex s, GridFunction f) { return f *= s; }

GridFunction sample(const SpatialGrid& grid, const std::function<Complex(double)>& f)
{
  GridFunction out(grid);
  for (int j = 0; j < grid.size(); ++j)
    out[j] = f(grid.node(j));
  out.check_finite();
  return out;
}

GridFunction sample_real(const SpatialGrid& grid, const std::function<double(double)>& f)
{
  return sample(grid, [&f](double x) { return Complex(f(x), 0.0); });
}

// ---------------------------------------------------------------------------
// FFTW plans are created once per (size, direction) and reused through the
// new-array execute interface, which is thread-safe. Planning itself is not.

namespace {

struct FftwBuffer
{
  explicit FftwBuffer(int n)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)))
  {
    if (!data)
      throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;

  fftw_complex* data;
};

fftw_plan cached_plan(int n, int sign)
{
  static std::mutex mutex;
  static std::map<std::pair<int, int>, fftw_plan> plans;
  std::lock_guard lock(mutex);
  auto it = plans.find({n, sign});
  if (it != plans.end())
    return it->second;
  FftwBuffer in(n), out(n);
  fftw_plan plan = fftw_plan_dft_1d(n, in.data, out.data, sign, FFTW_ESTIMATE);
  plans.emplace(std::pair{n, sign}, plan);
  return plan;
}

void transform(std::span<const Complex> in, std::span<Complex> out, int sign)
{
  const int n = static_cast<int>(in.size());
  FftwBuffer a(n), b(n);
  for (int j = 0; j < n; ++j) {
    a.data[j][0] = in[j].real();
    a.data[j][1] = in[j].imag();
  }
  fftw_execute_dft(cached_plan(n, sign), a.data, b.data);
  for (int j = 0; j < n; ++j)
    out[j] = {b.data[j][0], b.data[j][1]};
}

}  // namespace

std::vector<Complex> dft(const GridFunction& f)
{
  std::vector<Complex> coeffs(f.size());
  transform(f.samples(), coeffs, FFTW_FORWARD);
  const double scale = 1.0 / f.size();
  for (auto& c : coeffs)
    c *= scale;
  return coeffs;
}

GridFunction idft(const SpatialGrid& grid, std::span<const Complex> coeffs)
{
  if (static_cast<int>(coeffs.size()) != grid.size())
    throw std::invalid_argument("idft: coefficient count does not match grid");
  GridFunction out(grid);
  transform(coeffs, out.samples(), FFTW_BACKWARD);
  return out;
}

GridFunction apply_fourier_multiplier(const GridFunction& f,
                                      const std::function<Complex(int)>& symbol)
{
  auto coeffs = dft(f);
  for (int k = 0; k < f.size(); ++k)
    coeffs[k] *= symbol(k);
  return idft(f.grid(), coeffs);
}

// ---------------------------------------------------------------------------

TrigInterpolant::TrigInterpolant(const GridFunction& f)
    : x0_(f.grid().x0()), period_(f.grid().period())
{
  const int n = f.size();
  const auto c = dft(f);
  // Modes -half..half; on even grids the Nyquist coefficient is split
  // between -N/2 and +N/2.
  half_ = n / 2;
  coeffs_.assign(2 * half_ + 1, Complex{});
  for (int k = 0; k < n; ++k) {
    const int m = (2 * k > n) ? k - n : k;
    if (n % 2 == 0 && 2 * k == n) {
      coeffs_[0] += 0.5 * c[k];
      coeffs_[2 * half_] += 0.5 * c[k];
    } else {
      coeffs_[m + half_] += c[k];
    }
  }
}

Complex TrigInterpolant::operator()(double x) const
{
  double u = std::fmod(x - x0_, period_);
  if (u < 0.0)
    u += period_;
  const double theta = 2.0 * std::numbers::pi * u / period_;
  const Complex z = std::polar(1.0, theta);
  Complex acc = coeffs_.back();
  for (int p = 2 * half_ - 1; p >= 0; --p)
    acc = acc * z + coeffs_[p];
  return acc * std::polar(1.0, -half_ * theta);
}

std::vector<Complex> eval_interpolant(const GridFunction& f, std::span<const double> targets)
{
  for (double t : targets) {
    if (!std::isfinite(t))
      throw std::invalid_argument("eval_interpolant: non-finite target");
  }
  const TrigInterpolant interp(f);
  std::vector<Complex> values(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i)
    values[i] = interp(targets[i]);
  return values;
}

// ---------------------------------------------------------------------------

double sup_norm(const GridFunction& f)
{
  double m = 0.0;
  for (const auto& v : f.samples())
    m = std::max(m, std::abs(v));
  return m;
}

double l2_norm(const GridFunction& f)
{
  double s = 0.0;
  for (const auto& v : f.samples())
    s += std::norm(v);
  return std::sqrt(f.grid().period() * s / f.size());
}

Complex inner_product(const GridFunction& f, const GridFunction& g)
{
  require_same_grid(f.grid(), g.grid(), "inner_product");
  Complex s{};
  for (int j = 0; j < f.size(); ++j)
    s += f[j] * std::conj(g[j]);
  return s * f.grid().spacing();
}

double norm(const GridFunction& f, NormKind kind)
{
  return kind == NormKind::sup ? sup_norm(f) : l2_norm(f);
}

std::string to_string(NormKind kind)
{
  return kind == NormKind::sup ? "sup" : "l2";
}

NormKind parse_norm_kind(const std::string& s)
{
  if (s == "sup")
    return NormKind::sup;
  if (s == "l2")
    return NormKind::l2;
  throw std::invalid_argument("unknown norm kind '" + s + "' (expected sup or l2)");
}

void write_csv(std::ostream& os, const GridFunction& f)
{
  os << "x,re,im\n";
  for (int j = 0; j < f.size(); ++j)
    os << fmt::format("{:.17g},{:.17g},{:.17g}\n", f.grid().node(j), f[j].real(), f[j].imag());
}

GridFunction read_csv(std::istream& is, const SpatialGrid& grid)
{
  std::string line;
  if (!std::getline(is, line) || line != "x,re,im")
    throw std::invalid_argument("read_csv: missing header 'x,re,im'");
  std::vector<Complex> samples;
  while (std::getline(is, line)) {
    if (line.empty())
      continue;
    std::istringstream row(line);
    double x, re, im;
    char c1, c2;
    if (!(row >> x >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',')
      throw std::invalid_argument("read_csv: malformed row '" + line + "'");
    samples.emplace_back(re, im);
  }
  GridFunction f(grid, std::move(samples));
  f.check_finite();
  return f;
}

}  // namespace semikit
