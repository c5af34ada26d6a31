// Compiled with -mavx2 only; never called unless the CPU reports AVX2.
// No FMA: every product and sum is rounded separately, matching scalar_impl.

#include "kernels/kernels_impl.hpp"

#include <immintrin.h>

namespace fnlw::kernels::avx2_impl {

namespace {
constexpr std::size_t kWidth = 4;

inline std::size_t body_of(std::size_t n) { return n - n % kWidth; }
}  // namespace

void scale(std::span<const double> m, std::span<const double> x, std::span<double> out) {
  const std::size_t n = out.size();
  const std::size_t body = body_of(n);
  for (std::size_t i = 0; i < body; i += kWidth) {
    const __m256d r = _mm256_mul_pd(_mm256_loadu_pd(&m[i]), _mm256_loadu_pd(&x[i]));
    _mm256_storeu_pd(&out[i], r);
  }
  for (std::size_t i = body; i < n; ++i) out[i] = m[i] * x[i];
}

void combine3(std::span<const double> a, std::span<const double> x,
              std::span<const double> b, std::span<const double> y,
              std::span<const double> c, std::span<const double> z,
              std::span<double> out) {
  const std::size_t n = out.size();
  const std::size_t body = body_of(n);
  for (std::size_t i = 0; i < body; i += kWidth) {
    const __m256d ax = _mm256_mul_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&x[i]));
    const __m256d by = _mm256_mul_pd(_mm256_loadu_pd(&b[i]), _mm256_loadu_pd(&y[i]));
    const __m256d cz = _mm256_mul_pd(_mm256_loadu_pd(&c[i]), _mm256_loadu_pd(&z[i]));
    _mm256_storeu_pd(&out[i], _mm256_add_pd(_mm256_add_pd(ax, by), cz));
  }
  for (std::size_t i = body; i < n; ++i) {
    const double ax = a[i] * x[i];
    const double by = b[i] * y[i];
    const double cz = c[i] * z[i];
    out[i] = (ax + by) + cz;
  }
}

void accumulate(std::span<const double> a, std::span<const double> y, std::span<double> out) {
  const std::size_t n = out.size();
  const std::size_t body = body_of(n);
  for (std::size_t i = 0; i < body; i += kWidth) {
    const __m256d ay = _mm256_mul_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&y[i]));
    _mm256_storeu_pd(&out[i], _mm256_add_pd(_mm256_loadu_pd(&out[i]), ay));
  }
  for (std::size_t i = body; i < n; ++i) out[i] = out[i] + a[i] * y[i];
}

void neg_cube(std::span<double> x) {
  const std::size_t n = x.size();
  const std::size_t body = body_of(n);
  const __m256d sign = _mm256_set1_pd(-0.0);
  for (std::size_t i = 0; i < body; i += kWidth) {
    const __m256d v = _mm256_loadu_pd(&x[i]);
    const __m256d c = _mm256_mul_pd(_mm256_mul_pd(v, v), v);
    _mm256_storeu_pd(&x[i], _mm256_xor_pd(c, sign));
  }
  for (std::size_t i = body; i < n; ++i) {
    const double sq = x[i] * x[i];
    x[i] = -(sq * x[i]);
  }
}

void cube(std::span<double> x) {
  const std::size_t n = x.size();
  const std::size_t body = body_of(n);
  for (std::size_t i = 0; i < body; i += kWidth) {
    const __m256d v = _mm256_loadu_pd(&x[i]);
    _mm256_storeu_pd(&x[i], _mm256_mul_pd(_mm256_mul_pd(v, v), v));
  }
  for (std::size_t i = body; i < n; ++i) {
    const double sq = x[i] * x[i];
    x[i] = sq * x[i];
  }
}

double weighted_sum_squares(std::span<const double> w, std::span<const double> x) {
  const std::size_t n = x.size();
  const std::size_t body = body_of(n);
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += kWidth) {
    const __m256d v = _mm256_loadu_pd(&x[i]);
    const __m256d term = _mm256_mul_pd(_mm256_loadu_pd(&w[i]), _mm256_mul_pd(v, v));
    acc = _mm256_add_pd(acc, term);
  }
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, acc);
  for (std::size_t i = body; i < n; ++i) {
    const double sq = x[i] * x[i];
    lanes[i - body] = lanes[i - body] + w[i] * sq;
  }
  return fold(lanes);
}

double sum_fourth(std::span<const double> x) {
  const std::size_t n = x.size();
  const std::size_t body = body_of(n);
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += kWidth) {
    const __m256d v = _mm256_loadu_pd(&x[i]);
    const __m256d sq = _mm256_mul_pd(v, v);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(sq, sq));
  }
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, acc);
  for (std::size_t i = body; i < n; ++i) {
    const double sq = x[i] * x[i];
    lanes[i - body] = lanes[i - body] + sq * sq;
  }
  return fold(lanes);
}

bool all_finite(std::span<const double> x) {
  const std::size_t n = x.size();
  const std::size_t body = body_of(n);
  for (std::size_t i = 0; i < body; i += kWidth) {
    const __m256d v = _mm256_loadu_pd(&x[i]);
    // v - v is 0 for finite entries and NaN for inf/NaN.
    const __m256d d = _mm256_sub_pd(v, v);
    if (_mm256_movemask_pd(_mm256_cmp_pd(d, d, _CMP_ORD_Q)) != 0xF) return false;
  }
  for (std::size_t i = body; i < n; ++i) {
    const double d = x[i] - x[i];
    if (d != d) return false;
  }
  return true;
}

}  // namespace fnlw::kernels::avx2_impl
