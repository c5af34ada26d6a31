#pragma once

// Fourier conventions on the unit torus [0, 1) sampled at M points.
//
//   c(n) = (1/M) sum_q u(x_q) exp(-2 pi i n q / M),   x_q = q / M
//   u(x_q) = sum_n c(n) exp(2 pi i n q / M),          n in (-M/2, M/2]
//
// Fields are real, so coefficients are stored for n = 0..M/2 only and
// c(-n) = conj(c(n)) holds by construction. The zero and Nyquist modes are
// kept real.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace fnlw {

using cplx = std::complex<double>;

class Grid {
 public:
  // M must be a power of two, at least 8.
  explicit Grid(std::int64_t points);

  std::int64_t points() const noexcept { return points_; }
  double spacing() const noexcept { return 1.0 / static_cast<double>(points_); }
  std::int64_t nyquist() const noexcept { return points_ / 2; }
  // Number of stored coefficients, n = 0..M/2.
  std::size_t half_size() const noexcept { return static_cast<std::size_t>(points_ / 2 + 1); }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::int64_t points_;
};

class CoeffVector {
 public:
  explicit CoeffVector(Grid grid);

  // Builds from a full spectrum in FFT order n = 0, 1, ..., M/2, -M/2+1, ..., -1.
  // Throws if hermitian symmetry is violated by more than tol * max|c|.
  static CoeffVector from_modes(Grid grid, std::span<const cplx> modes, double tol = 1e-12);

  const Grid& grid() const noexcept { return grid_; }

  // Coefficient of mode n, -M/2 < n <= M/2.
  cplx operator[](std::int64_t n) const;
  // Sets mode n and, implicitly, its conjugate partner -n. For n = 0 and
  // n = M/2 the value must be real.
  void set(std::int64_t n, cplx value);

  std::span<cplx> half() noexcept { return half_; }
  std::span<const cplx> half() const noexcept { return half_; }
  // Interleaved (re, im) view of the half spectrum, for the kernels.
  std::span<double> raw() noexcept;
  std::span<const double> raw() const noexcept;

  // Full spectrum in FFT order.
  std::vector<cplx> modes() const;
  double max_abs() const noexcept;

  friend bool operator==(const CoeffVector&, const CoeffVector&) = default;

 private:
  Grid grid_;
  std::vector<cplx> half_;
};

CoeffVector operator+(const CoeffVector& a, const CoeffVector& b);
CoeffVector operator-(const CoeffVector& a, const CoeffVector& b);

// <n> = sqrt((2 pi n)^2 + 1)
double japanese_bracket(std::int64_t n);
// |2 pi n|^p with 0^p = 0 for p > 0 and 0^0 = 1.
double abs_frequency_pow(std::int64_t n, double p);
// sin(x)/x with sinc(0) = 1.
double sinc(double x);

// Per-mode weights expanded for the interleaved half spectrum: entries 2n
// and 2n+1 both hold weight(n), times the number of modes represented by
// slot n (1 for n = 0 and n = M/2, 2 otherwise) when `count_pairs` is set.
template <class F>
std::vector<double> expanded_weights(const Grid& grid, F&& weight, bool count_pairs) {
  const std::size_t half = grid.half_size();
  std::vector<double> w(2 * half);
  for (std::size_t k = 0; k < half; ++k) {
    const auto n = static_cast<std::int64_t>(k);
    double value = weight(n);
    if (count_pairs && n != 0 && n != grid.nyquist()) value *= 2.0;
    w[2 * k] = value;
    w[2 * k + 1] = value;
  }
  return w;
}

// Throws on length that is not a valid grid size or on non-finite samples.
CoeffVector forward_transform(std::span<const double> samples);
// Throws if the zero or Nyquist mode has an imaginary part above 1e-10 * max|c|.
std::vector<double> inverse_transform(const CoeffVector& c);

// |2 pi n|^(beta * power) c(n). A negative power with c(0) != 0 is rejected.
CoeffVector fractional_multiplier(const CoeffVector& c, double beta, double power);
// sinc(tau |2 pi n|^beta) c(n); tau > 0.
CoeffVector sinc_filter(const CoeffVector& c, double tau, double beta);

// Pseudo-spectral evaluation of u^3 on a 2M grid. Reuses its buffers across
// calls; one instance per thread.
class DealiasedCube {
 public:
  explicit DealiasedCube(Grid grid);

  // out = coefficients of u^3 (or -u^3 when `negate`) on |n| < M/2. The
  // input Nyquist mode is ignored and the output Nyquist mode is zero.
  // `out` may alias `in`.
  void apply(const CoeffVector& in, CoeffVector& out, bool negate = false);

 private:
  Grid grid_;
  std::vector<cplx> padded_;
  std::vector<double> physical_;
};

CoeffVector dealiased_cube(const CoeffVector& c);

// sqrt(sum_n <n>^(2s) |c(n)|^2)
double sobolev_norm(const CoeffVector& c, double s);

}  // namespace fnlw
