#pragma once

// Thin wrapper over FFTW's real-data transforms. Plans are created once per
// size (FFTW_ESTIMATE, so planning is deterministic) and shared between
// threads; execution uses the new-array interface, which is thread-safe.

#include <complex>
#include <cstddef>
#include <span>

namespace fnlw::detail {

// Unnormalized: out[k] = sum_q in[q] exp(-2 pi i k q / n), k = 0..n/2.
void fft_forward(std::span<const double> in, std::span<std::complex<double>> out);
// Unnormalized: out[q] = sum over the full hermitian spectrum. `in` holds
// k = 0..n/2 and is left untouched.
void fft_backward(std::span<const std::complex<double>> in, std::span<double> out);

}  // namespace fnlw::detail
