#pragma once

#include <cstddef>
#include <span>

namespace fnlw::kernels {

// Reductions keep one partial sum per lane of a 256-bit double vector.
inline constexpr std::size_t kLanes = 4;

inline double fold(const double (&acc)[kLanes]) {
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

#define FNLW_KERNEL_DECLS                                                                     \
  void scale(std::span<const double> m, std::span<const double> x, std::span<double> out);    \
  void combine3(std::span<const double> a, std::span<const double> x,                         \
                std::span<const double> b, std::span<const double> y,                         \
                std::span<const double> c, std::span<const double> z, std::span<double> out); \
  void accumulate(std::span<const double> a, std::span<const double> y,                       \
                  std::span<double> out);                                                     \
  void neg_cube(std::span<double> x);                                                         \
  void cube(std::span<double> x);                                                             \
  double weighted_sum_squares(std::span<const double> w, std::span<const double> x);          \
  double sum_fourth(std::span<const double> x);                                               \
  bool all_finite(std::span<const double> x);

namespace scalar_impl {
FNLW_KERNEL_DECLS
}

#ifdef FNLW_HAVE_AVX2
namespace avx2_impl {
FNLW_KERNEL_DECLS
}
#endif

#undef FNLW_KERNEL_DECLS

}  // namespace fnlw::kernels
