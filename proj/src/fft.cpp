#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "fnlw/error.hpp"

namespace fnlw::detail {

namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  PlanPair() = default;
  PlanPair(const PlanPair&) = delete;
  PlanPair& operator=(const PlanPair&) = delete;
  ~PlanPair() {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

// FFTW_UNALIGNED keeps the chosen codelets independent of buffer alignment,
// so a given size always runs the same arithmetic.
constexpr unsigned kFlags = FFTW_ESTIMATE | FFTW_UNALIGNED;

const PlanPair& plans_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<PlanPair>> cache;

  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;

  std::vector<double> real(n);
  std::vector<std::complex<double>> spec(n / 2 + 1);
  auto* spec_ptr = reinterpret_cast<fftw_complex*>(spec.data());
  auto pair = std::make_unique<PlanPair>();
  const int size = static_cast<int>(n);
  pair->forward = fftw_plan_dft_r2c_1d(size, real.data(), spec_ptr, kFlags);
  pair->backward = fftw_plan_dft_c2r_1d(size, spec_ptr, real.data(), kFlags | FFTW_PRESERVE_INPUT);
  if (!pair->forward || !pair->backward) throw Error("FFTW planning failed");
  return *cache.emplace(n, std::move(pair)).first->second;
}

}  // namespace

void fft_forward(std::span<const double> in, std::span<std::complex<double>> out) {
  if (out.size() != in.size() / 2 + 1) throw Error("fft_forward: size mismatch");
  const PlanPair& p = plans_for(in.size());
  fftw_execute_dft_r2c(p.forward, const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void fft_backward(std::span<const std::complex<double>> in, std::span<double> out) {
  if (in.size() != out.size() / 2 + 1) throw Error("fft_backward: size mismatch");
  const PlanPair& p = plans_for(out.size());
  fftw_execute_dft_c2r(p.backward,
                       reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data())),
                       out.data());
}

}  // namespace fnlw::detail
