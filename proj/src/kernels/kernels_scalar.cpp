#include "kernels/kernels_impl.hpp"

#include <cmath>

namespace fnlw::kernels::scalar_impl {

void scale(std::span<const double> m, std::span<const double> x, std::span<double> out) {
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) out[i] = m[i] * x[i];
}

void combine3(std::span<const double> a, std::span<const double> x,
              std::span<const double> b, std::span<const double> y,
              std::span<const double> c, std::span<const double> z,
              std::span<double> out) {
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double ax = a[i] * x[i];
    const double by = b[i] * y[i];
    const double cz = c[i] * z[i];
    out[i] = (ax + by) + cz;
  }
}

void accumulate(std::span<const double> a, std::span<const double> y, std::span<double> out) {
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) out[i] = out[i] + a[i] * y[i];
}

void neg_cube(std::span<double> x) {
  for (double& v : x) {
    const double sq = v * v;
    v = -(sq * v);
  }
}

void cube(std::span<double> x) {
  for (double& v : x) {
    const double sq = v * v;
    v = sq * v;
  }
}

double weighted_sum_squares(std::span<const double> w, std::span<const double> x) {
  double acc[kLanes] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n = x.size();
  const std::size_t body = n - n % kLanes;
  for (std::size_t i = 0; i < body; i += kLanes) {
    for (std::size_t j = 0; j < kLanes; ++j) {
      const double sq = x[i + j] * x[i + j];
      acc[j] = acc[j] + w[i + j] * sq;
    }
  }
  for (std::size_t i = body; i < n; ++i) {
    const double sq = x[i] * x[i];
    acc[i - body] = acc[i - body] + w[i] * sq;
  }
  return fold(acc);
}

double sum_fourth(std::span<const double> x) {
  double acc[kLanes] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n = x.size();
  const std::size_t body = n - n % kLanes;
  for (std::size_t i = 0; i < body; i += kLanes) {
    for (std::size_t j = 0; j < kLanes; ++j) {
      const double sq = x[i + j] * x[i + j];
      acc[j] = acc[j] + sq * sq;
    }
  }
  for (std::size_t i = body; i < n; ++i) {
    const double sq = x[i] * x[i];
    acc[i - body] = acc[i - body] + sq * sq;
  }
  return fold(acc);
}

bool all_finite(std::span<const double> x) {
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace fnlw::kernels::scalar_impl
