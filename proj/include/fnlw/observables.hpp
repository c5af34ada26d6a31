#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fnlw/model.hpp"

namespace fnlw {

// sqrt(sum <n>^(2s-2beta) |v(n)|^2) + sqrt(sum <n>^(2s) |u(n)|^2)
double pair_norm(const SpectralState& state, double s, double beta);

// sum |v(n)|^2 + sum |2 pi n|^(2 beta) |u(n)|^2 + 1/(2M) sum_q u(x_q)^4
double discrete_hamiltonian(const SpectralState& state, double beta);

// Precomputed weights for repeated evaluation on one grid.
class PairNorm {
 public:
  PairNorm(const Grid& grid, double s, double beta);
  double operator()(const SpectralState& state) const;

 private:
  std::vector<double> u_weight_;
  std::vector<double> v_weight_;
};

// With quartic = false only the quadratic part is evaluated, which is the
// conserved energy of the linear flow.
class Hamiltonian {
 public:
  Hamiltonian(const Grid& grid, double beta, bool quartic = true);
  double operator()(const SpectralState& state) const;

 private:
  std::vector<double> kinetic_;
  std::vector<double> potential_;
  double quartic_scale_;
};

// max_p |H[p]/H[0] - 1|; nullopt when H[0] == 0.
std::optional<double> relative_energy_error(std::span<const double> H);
std::optional<double> relative_energy_error(const RunRecord& record);

double sup_norm(const RunRecord& record);

// Pair norm of a - b for states on possibly different grids. Modes are
// matched by index; a mode missing from one grid counts as zero.
double pair_norm_difference(const SpectralState& a, const SpectralState& b, double s, double beta);

// max over snapshots of pair_norm_difference. Both records must store
// states on identical snapshot times.
double trajectory_difference(const RunRecord& a, const RunRecord& b, double s, double beta);

enum class Regime { probabilistic, deterministic };

std::string_view to_string(Regime regime);
// deterministic iff alpha - 1/2 > 1/2 - beta
Regime classify_regime(double alpha, double beta);
// gamma = 1/3 (probabilistic) or the midpoint rule (deterministic).
double sobolev_gamma(double alpha, double beta, Regime regime);
// s = gamma (alpha - 1/2)
double sobolev_index(double alpha, double beta, Regime regime);

}  // namespace fnlw
