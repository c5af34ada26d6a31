#pragma once

// Data-parallel inner loops of the solver. Every kernel has a scalar
// reference implementation and, where the CPU supports it, an AVX2 variant
// picked at runtime. Both variants perform the same IEEE operations in the
// same order (reductions use four interleaved partial sums in both), so their
// results are bit-identical and a run does not depend on the selected backend.
//
// All spans of a single call must have equal length; complex arrays are
// passed as interleaved (re, im) doubles.

#include <span>
#include <string_view>

namespace fnlw::kernels {

enum class Backend { scalar, avx2 };

struct Table {
  Backend backend;
  // out = m * x
  void (*scale)(std::span<const double> m, std::span<const double> x, std::span<double> out);
  // out = (a*x + b*y) + c*z
  void (*combine3)(std::span<const double> a, std::span<const double> x,
                   std::span<const double> b, std::span<const double> y,
                   std::span<const double> c, std::span<const double> z,
                   std::span<double> out);
  // out += a * y
  void (*accumulate)(std::span<const double> a, std::span<const double> y, std::span<double> out);
  // x = -(x*x*x)
  void (*neg_cube)(std::span<double> x);
  // x = x*x*x
  void (*cube)(std::span<double> x);
  // sum of w[i] * x[i]^2
  double (*weighted_sum_squares)(std::span<const double> w, std::span<const double> x);
  // sum of x[i]^4
  double (*sum_fourth)(std::span<const double> x);
  // true iff every entry is finite
  bool (*all_finite)(std::span<const double> x);
};

const Table& scalar_table();
bool avx2_available();
// Throws fnlw::Error if the backend is not compiled in or unsupported here.
const Table& table(Backend backend);

// The table used by the solver. Chosen once from CPU features; the
// FNLW_SIMD environment variable ("scalar" or "avx2") overrides the choice.
const Table& active();
void set_active(Backend backend);

std::string_view name(Backend backend);

}  // namespace fnlw::kernels
