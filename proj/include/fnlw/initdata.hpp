#pragma once

// Random initial data
//
//   u0(n) = g(n) / <n>^alpha,   v0(n) = h(n) / <n>^(alpha - beta),   |n| <= N
//
// with g, h complex standard normals (E|g|^2 = 1) drawn per mode from a
// counter-based generator. Because a mode's draw depends only on
// (seed, channel, |n|), the data at N is a restriction of the data at any
// N' > N. The pathological approximation adds a Gaussian bump
//
//   p(x) = N^(1/2 - s) / log N * exp(-(a N (x - 1/2))^2)
//
// to u0.

#include <cstdint>

#include "fnlw/model.hpp"

namespace fnlw {

struct ModePair {
  std::int64_t n = 0;
  cplx g;  // position channel
  cplx h;  // velocity channel
};

// n >= 0. For n = 0 both draws are real.
ModePair mode_pair(std::uint64_t seed, std::int64_t n);

struct InitialData {
  CoeffVector u0;
  CoeffVector v0;
  ModelParams params;
  DataKind kind;
};

InitialData build_truncated(const ModelParams& params);
CoeffVector bump_coefficients(std::int64_t N, double s, double a, const Grid& grid);
InitialData build_pathological(const ModelParams& params);
// Dispatches on params.kind.
InitialData build_initial(const ModelParams& params);

// Peak value N^(1/2 - s) / log N of the bump.
double bump_amplitude(std::int64_t N, double s);

// Riemann zeta for x > 1, absolute error below 1e-10.
double riemann_zeta(double x);

}  // namespace fnlw
