#include "fnlw/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "fnlw/error.hpp"
#include "kernels/kernels_impl.hpp"

namespace fnlw::kernels {

namespace {

constexpr Table kScalar{Backend::scalar,
                        scalar_impl::scale,
                        scalar_impl::combine3,
                        scalar_impl::accumulate,
                        scalar_impl::neg_cube,
                        scalar_impl::cube,
                        scalar_impl::weighted_sum_squares,
                        scalar_impl::sum_fourth,
                        scalar_impl::all_finite};

#ifdef FNLW_HAVE_AVX2
constexpr Table kAvx2{Backend::avx2,
                      avx2_impl::scale,
                      avx2_impl::combine3,
                      avx2_impl::accumulate,
                      avx2_impl::neg_cube,
                      avx2_impl::cube,
                      avx2_impl::weighted_sum_squares,
                      avx2_impl::sum_fourth,
                      avx2_impl::all_finite};
#endif

const Table* initial_choice() {
  if (const char* env = std::getenv("FNLW_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return &kScalar;
    if (want == "avx2" && avx2_available()) return &table(Backend::avx2);
  }
  return avx2_available() ? &table(Backend::avx2) : &kScalar;
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> ptr{initial_choice()};
  return ptr;
}

}  // namespace

const Table& scalar_table() { return kScalar; }

bool avx2_available() {
#if defined(FNLW_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const Table& table(Backend backend) {
  switch (backend) {
    case Backend::scalar:
      return kScalar;
    case Backend::avx2:
#ifdef FNLW_HAVE_AVX2
      if (avx2_available()) return kAvx2;
#endif
      throw Error("AVX2 kernels are not available on this build or CPU");
  }
  throw Error("unknown kernel backend");
}

const Table& active() { return *current().load(std::memory_order_acquire); }

void set_active(Backend backend) { current().store(&table(backend), std::memory_order_release); }

std::string_view name(Backend backend) {
  return backend == Backend::avx2 ? "avx2" : "scalar";
}

}  // namespace fnlw::kernels
