#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fnlw/spectrum.hpp"

namespace fnlw {

// How the random initial field is approximated at truncation N.
enum class DataKind {
  truncated,     // Fourier truncation |n| <= N
  pathological,  // truncation plus a concentrating Gaussian bump in u0
};

std::string_view to_string(DataKind kind);
// Throws ValidationError("kind", ...) for unknown names.
DataKind parse_data_kind(std::string_view name);

inline constexpr std::uint64_t kDefaultSeed = 2024;

// Every scalar knob of a single run.
struct ModelParams {
  double alpha = 0.6;            // spectral decay of the random field
  double beta = 1.0 / 3.0;       // dispersion exponent
  double s = 0.1 / 3.0;          // Sobolev index of the diagnostics
  std::int64_t N = 64;           // Fourier truncation
  std::int64_t M = 1024;         // collocation points
  double t_s = 1e-2;             // final time
  double tau = 0.0;              // requested step; 0 selects the N-dependent rule
  double tau_factor = 1.0;       // scales the rounded step (0.5 = refined)
  double a = 16.0;               // bump width parameter
  std::uint64_t seed = kDefaultSeed;
  DataKind kind = DataKind::truncated;
  std::int64_t snapshots = 100;  // J uniform output intervals
  bool nonlinear = true;         // false drops the cubic term (linear flow)

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// Throws ValidationError naming the first offending field.
void validate(const ModelParams& p);

struct SpectralState {
  CoeffVector u;  // position
  CoeffVector v;  // velocity, du/dt
  double t = 0.0;

  explicit SpectralState(Grid grid) : u(grid), v(grid) {}
  SpectralState(CoeffVector u0, CoeffVector v0, double time = 0.0)
      : u(std::move(u0)), v(std::move(v0)), t(time) {}

  const Grid& grid() const noexcept { return u.grid(); }
};

// Snapshot series of one run.
struct RunRecord {
  ModelParams params;
  double tau = 0.0;                     // step actually used
  std::int64_t steps_per_snapshot = 0;
  std::int64_t steps = 0;               // P
  std::vector<double> times;            // J+1 entries, times[0] = 0, times[J] = t_s
  std::vector<double> S;                // pair norm per snapshot
  std::vector<double> H;                // discrete Hamiltonian per snapshot
  std::vector<SpectralState> states;    // empty unless requested
  std::optional<double> e_inf;          // undefined when H[0] == 0
  double S_sup = 0.0;
};

}  // namespace fnlw
