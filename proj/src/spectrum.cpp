#include "fnlw/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.hpp"
#include "fnlw/error.hpp"
#include "fnlw/kernels.hpp"

namespace fnlw {

namespace {

bool is_power_of_two(std::int64_t m) { return m > 0 && (m & (m - 1)) == 0; }

std::span<double> as_doubles(std::span<cplx> v) {
  return {reinterpret_cast<double*>(v.data()), 2 * v.size()};
}

}  // namespace

Grid::Grid(std::int64_t points) : points_(points) {
  if (points < 8 || !is_power_of_two(points)) {
    throw ValidationError("M", "grid size must be a power of two >= 8, got " + std::to_string(points));
  }
}

CoeffVector::CoeffVector(Grid grid) : grid_(grid), half_(grid.half_size(), cplx{0.0, 0.0}) {}

CoeffVector CoeffVector::from_modes(Grid grid, std::span<const cplx> modes, double tol) {
  const auto m = static_cast<std::size_t>(grid.points());
  if (modes.size() != m) throw Error("from_modes: expected " + std::to_string(m) + " modes");
  double scale = 0.0;
  for (const cplx& c : modes) scale = std::max(scale, std::abs(c));
  const double limit = tol * scale;

  const std::size_t nyq = m / 2;
  double worst = std::max(std::abs(modes[0].imag()), std::abs(modes[nyq].imag()));
  for (std::size_t n = 1; n < nyq; ++n) {
    worst = std::max(worst, std::abs(modes[m - n] - std::conj(modes[n])));
  }
  if (worst > limit) {
    throw Error("hermitian symmetry violated: defect " + std::to_string(worst) +
                " exceeds tolerance " + std::to_string(limit));
  }

  CoeffVector out(grid);
  for (std::size_t n = 0; n <= nyq; ++n) out.half_[n] = modes[n];
  out.half_[0].imag(0.0);
  out.half_[nyq].imag(0.0);
  return out;
}

cplx CoeffVector::operator[](std::int64_t n) const {
  const std::int64_t nyq = grid_.nyquist();
  if (n <= -nyq || n > nyq) throw Error("mode index " + std::to_string(n) + " outside the grid band");
  return n >= 0 ? half_[static_cast<std::size_t>(n)] : std::conj(half_[static_cast<std::size_t>(-n)]);
}

void CoeffVector::set(std::int64_t n, cplx value) {
  const std::int64_t nyq = grid_.nyquist();
  if (n <= -nyq || n > nyq) throw Error("mode index " + std::to_string(n) + " outside the grid band");
  if ((n == 0 || n == nyq) && value.imag() != 0.0) {
    throw Error("mode " + std::to_string(n) + " of a real field must be real");
  }
  if (n >= 0) {
    half_[static_cast<std::size_t>(n)] = value;
  } else {
    half_[static_cast<std::size_t>(-n)] = std::conj(value);
  }
}

std::span<double> CoeffVector::raw() noexcept { return as_doubles(half_); }

std::span<const double> CoeffVector::raw() const noexcept {
  return {reinterpret_cast<const double*>(half_.data()), 2 * half_.size()};
}

std::vector<cplx> CoeffVector::modes() const {
  const auto m = static_cast<std::size_t>(grid_.points());
  std::vector<cplx> out(m);
  const std::size_t nyq = m / 2;
  for (std::size_t n = 0; n <= nyq; ++n) out[n] = half_[n];
  for (std::size_t n = 1; n < nyq; ++n) out[m - n] = std::conj(half_[n]);
  return out;
}

double CoeffVector::max_abs() const noexcept {
  double best = 0.0;
  for (const cplx& c : half_) best = std::max(best, std::abs(c));
  return best;
}

CoeffVector operator+(const CoeffVector& a, const CoeffVector& b) {
  if (!(a.grid() == b.grid())) throw Error("coefficient vectors live on different grids");
  CoeffVector out(a.grid());
  for (std::size_t k = 0; k < out.half().size(); ++k) out.half()[k] = a.half()[k] + b.half()[k];
  return out;
}

CoeffVector operator-(const CoeffVector& a, const CoeffVector& b) {
  if (!(a.grid() == b.grid())) throw Error("coefficient vectors live on different grids");
  CoeffVector out(a.grid());
  for (std::size_t k = 0; k < out.half().size(); ++k) out.half()[k] = a.half()[k] - b.half()[k];
  return out;
}

double japanese_bracket(std::int64_t n) {
  const double w = 2.0 * std::numbers::pi * static_cast<double>(n);
  return std::sqrt(w * w + 1.0);
}

double abs_frequency_pow(std::int64_t n, double p) {
  if (n == 0) return p == 0.0 ? 1.0 : 0.0;
  return std::pow(2.0 * std::numbers::pi * std::abs(static_cast<double>(n)), p);
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

CoeffVector forward_transform(std::span<const double> samples) {
  const Grid grid(static_cast<std::int64_t>(samples.size()));
  for (std::size_t q = 0; q < samples.size(); ++q) {
    if (!std::isfinite(samples[q])) throw Error("forward_transform: non-finite sample at index " + std::to_string(q));
  }
  CoeffVector out(grid);
  detail::fft_forward(samples, out.half());
  const double inv = 1.0 / static_cast<double>(grid.points());
  for (cplx& c : out.half()) c *= inv;
  out.half().front().imag(0.0);
  out.half().back().imag(0.0);
  return out;
}

std::vector<double> inverse_transform(const CoeffVector& c) {
  const double limit = 1e-10 * c.max_abs();
  const double defect = std::max(std::abs(c.half().front().imag()), std::abs(c.half().back().imag()));
  if (defect > limit) {
    throw Error("inverse_transform: hermitian symmetry violated (imaginary zero/Nyquist mode " +
                std::to_string(defect) + ")");
  }
  std::vector<double> out(static_cast<std::size_t>(c.grid().points()));
  detail::fft_backward(c.half(), out);
  return out;
}

CoeffVector fractional_multiplier(const CoeffVector& c, double beta, double power) {
  if (!(beta > 0.0)) throw ValidationError("beta", "must be > 0");
  if (power == 0.0) return c;
  const double p = beta * power;
  if (p < 0.0 && c.half().front() != cplx{0.0, 0.0}) {
    throw Error("fractional_multiplier: negative power applied to a nonzero zero mode");
  }
  CoeffVector out(c.grid());
  for (std::size_t k = 1; k < out.half().size(); ++k) {
    out.half()[k] = abs_frequency_pow(static_cast<std::int64_t>(k), p) * c.half()[k];
  }
  return out;
}

CoeffVector sinc_filter(const CoeffVector& c, double tau, double beta) {
  if (!(tau > 0.0)) throw ValidationError("tau", "must be > 0");
  if (!(beta > 0.0)) throw ValidationError("beta", "must be > 0");
  CoeffVector out(c.grid());
  for (std::size_t k = 0; k < out.half().size(); ++k) {
    const double omega = abs_frequency_pow(static_cast<std::int64_t>(k), beta);
    out.half()[k] = sinc(tau * omega) * c.half()[k];
  }
  return out;
}

DealiasedCube::DealiasedCube(Grid grid)
    : grid_(grid),
      padded_(static_cast<std::size_t>(grid.points()) + 1),
      physical_(2 * static_cast<std::size_t>(grid.points())) {}

void DealiasedCube::apply(const CoeffVector& in, CoeffVector& out, bool negate) {
  if (!(in.grid() == grid_) || !(out.grid() == grid_)) throw Error("DealiasedCube: grid mismatch");
  const auto nyq = static_cast<std::size_t>(grid_.nyquist());

  std::fill(padded_.begin(), padded_.end(), cplx{0.0, 0.0});
  std::copy_n(in.half().begin(), nyq, padded_.begin());
  detail::fft_backward(padded_, physical_);

  const kernels::Table& k = kernels::active();
  if (negate) {
    k.neg_cube(physical_);
  } else {
    k.cube(physical_);
  }

  detail::fft_forward(physical_, padded_);
  // 1/(2M) is a power of two, so the rescaling is exact.
  const double inv = 1.0 / static_cast<double>(physical_.size());
  for (std::size_t n = 0; n < nyq; ++n) out.half()[n] = padded_[n] * inv;
  out.half()[0].imag(0.0);
  out.half()[nyq] = cplx{0.0, 0.0};
}

CoeffVector dealiased_cube(const CoeffVector& c) {
  DealiasedCube cube(c.grid());
  CoeffVector out(c.grid());
  cube.apply(c, out);
  return out;
}

double sobolev_norm(const CoeffVector& c, double s) {
  const auto w = expanded_weights(
      c.grid(), [s](std::int64_t n) { return std::pow(japanese_bracket(n), 2.0 * s); }, true);
  return std::sqrt(kernels::active().weighted_sum_squares(w, c.raw()));
}

}  // namespace fnlw
