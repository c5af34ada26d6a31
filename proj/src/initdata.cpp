#include "fnlw/initdata.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "fnlw/error.hpp"
#include "fnlw/philox.hpp"

namespace fnlw {

namespace {

enum Channel : std::uint32_t { kPosition = 0, kVelocity = 1 };

// Two independent standard normals from one Philox block (Box-Muller).
std::pair<double, double> normal_pair(std::uint64_t seed, std::uint32_t channel, std::int64_t n) {
  const auto un = static_cast<std::uint64_t>(n);
  const PhiloxKey key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  const PhiloxCounter ctr{static_cast<std::uint32_t>(un), static_cast<std::uint32_t>(un >> 32), channel, 0u};
  const PhiloxCounter out = philox4x32(ctr, key);
  const std::uint64_t b0 = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
  const std::uint64_t b1 = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
  const double radius = std::sqrt(-2.0 * std::log(uniform_open_closed(b0)));
  const double angle = 2.0 * std::numbers::pi * uniform_closed_open(b1);
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

cplx gaussian(std::uint64_t seed, std::uint32_t channel, std::int64_t n) {
  const auto [x, y] = normal_pair(seed, channel, n);
  if (n == 0) return {x, 0.0};
  return {x * std::numbers::sqrt2 / 2.0, y * std::numbers::sqrt2 / 2.0};
}

}  // namespace

ModePair mode_pair(std::uint64_t seed, std::int64_t n) {
  if (n < 0) throw Error("mode_pair: n must be >= 0 (negative modes are conjugates)");
  return {n, gaussian(seed, kPosition, n), gaussian(seed, kVelocity, n)};
}

InitialData build_truncated(const ModelParams& params) {
  validate(params);
  const Grid grid(params.M);
  CoeffVector u0(grid);
  CoeffVector v0(grid);
  for (std::int64_t n = 0; n <= params.N; ++n) {
    const ModePair d = mode_pair(params.seed, n);
    const double bracket = japanese_bracket(n);
    u0.set(n, d.g / std::pow(bracket, params.alpha));
    v0.set(n, d.h / std::pow(bracket, params.alpha - params.beta));
  }
  return {std::move(u0), std::move(v0), params, DataKind::truncated};
}

double bump_amplitude(std::int64_t N, double s) {
  if (N < 2) throw ValidationError("N", "bump requires N >= 2");
  const double n = static_cast<double>(N);
  return std::pow(n, 0.5 - s) / std::log(n);
}

CoeffVector bump_coefficients(std::int64_t N, double s, double a, const Grid& grid) {
  const double peak = bump_amplitude(N, s);
  if (!(a > 0.0)) throw ValidationError("a", "bump width parameter must be > 0");
  const double width = a * static_cast<double>(N);
  if (width > static_cast<double>(grid.points())) {
    throw ValidationError("a", "bump under-resolved: a*N = " + std::to_string(width) +
                                   " exceeds M = " + std::to_string(grid.points()));
  }
  const auto m = static_cast<std::size_t>(grid.points());
  std::vector<double> samples(m);
  for (std::size_t q = 0; q < m; ++q) {
    const double x = static_cast<double>(q) * grid.spacing();
    const double z = width * (x - 0.5);
    samples[q] = peak * std::exp(-z * z);
  }
  return forward_transform(samples);
}

InitialData build_pathological(const ModelParams& params) {
  InitialData data = build_truncated(params);
  data.u0 = data.u0 + bump_coefficients(params.N, params.s, params.a, data.u0.grid());
  data.kind = DataKind::pathological;
  return data;
}

InitialData build_initial(const ModelParams& params) {
  return params.kind == DataKind::pathological ? build_pathological(params) : build_truncated(params);
}

double riemann_zeta(double x) {
  if (!(x > 1.0)) throw ValidationError("x", "riemann_zeta requires x > 1");
  // Euler-Maclaurin: partial sum to K-1, integral tail, Bernoulli corrections.
  constexpr int K = 16;
  static constexpr double kBernoulliOverFactorial[] = {
      1.0 / 6.0 / 2.0,                 // B2 / 2!
      -1.0 / 30.0 / 24.0,              // B4 / 4!
      1.0 / 42.0 / 720.0,              // B6 / 6!
      -1.0 / 30.0 / 40320.0,           // B8 / 8!
      5.0 / 66.0 / 3628800.0,          // B10 / 10!
      -691.0 / 2730.0 / 479001600.0,   // B12 / 12!
  };
  double sum = 0.0;
  for (int n = K - 1; n >= 1; --n) sum += std::pow(static_cast<double>(n), -x);
  const double k = K;
  sum += std::pow(k, 1.0 - x) / (x - 1.0) + 0.5 * std::pow(k, -x);
  // rising = x (x+1) ... (x+2j-2), power = K^(-x-2j+1)
  double rising = x;
  double power = std::pow(k, -x - 1.0);
  for (int j = 0; j < 6; ++j) {
    sum += kBernoulliOverFactorial[j] * rising * power;
    rising *= (x + 2.0 * j + 1.0) * (x + 2.0 * j + 2.0);
    power /= k * k;
  }
  return sum;
}

}  // namespace fnlw
