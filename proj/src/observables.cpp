#include "fnlw/observables.hpp"

#include <algorithm>
#include <cmath>

#include "fnlw/error.hpp"
#include "fnlw/kernels.hpp"

namespace fnlw {

PairNorm::PairNorm(const Grid& grid, double s, double beta)
    : u_weight_(expanded_weights(
          grid, [s](std::int64_t n) { return std::pow(japanese_bracket(n), 2.0 * s); }, true)),
      v_weight_(expanded_weights(
          grid, [s, beta](std::int64_t n) { return std::pow(japanese_bracket(n), 2.0 * (s - beta)); }, true)) {}

double PairNorm::operator()(const SpectralState& state) const {
  const kernels::Table& k = kernels::active();
  return std::sqrt(k.weighted_sum_squares(v_weight_, state.v.raw())) +
         std::sqrt(k.weighted_sum_squares(u_weight_, state.u.raw()));
}

Hamiltonian::Hamiltonian(const Grid& grid, double beta, bool quartic)
    : kinetic_(expanded_weights(grid, [](std::int64_t) { return 1.0; }, true)),
      potential_(expanded_weights(
          grid, [beta](std::int64_t n) { return abs_frequency_pow(n, 2.0 * beta); }, true)),
      quartic_scale_(quartic ? 0.5 / static_cast<double>(grid.points()) : 0.0) {}

double Hamiltonian::operator()(const SpectralState& state) const {
  const kernels::Table& k = kernels::active();
  const double quadratic =
      k.weighted_sum_squares(kinetic_, state.v.raw()) + k.weighted_sum_squares(potential_, state.u.raw());
  if (quartic_scale_ == 0.0) return quadratic;
  return quadratic + quartic_scale_ * k.sum_fourth(inverse_transform(state.u));
}

double pair_norm(const SpectralState& state, double s, double beta) {
  return PairNorm(state.grid(), s, beta)(state);
}

double discrete_hamiltonian(const SpectralState& state, double beta) {
  return Hamiltonian(state.grid(), beta)(state);
}

std::optional<double> relative_energy_error(std::span<const double> H) {
  if (H.empty() || H.front() == 0.0) return std::nullopt;
  double worst = 0.0;
  for (double h : H) worst = std::max(worst, std::abs(h / H.front() - 1.0));
  return worst;
}

std::optional<double> relative_energy_error(const RunRecord& record) {
  return relative_energy_error(record.H);
}

double sup_norm(const RunRecord& record) {
  if (record.S.empty()) throw Error("sup_norm: record has no snapshots");
  return *std::max_element(record.S.begin(), record.S.end());
}

namespace {

// Coefficient of mode n (any sign) or zero when the grid does not carry it.
cplx mode_or_zero(const CoeffVector& c, std::int64_t n) {
  const std::int64_t nyq = c.grid().nyquist();
  if (n <= -nyq || n > nyq) return {0.0, 0.0};
  return c[n];
}

double weighted_difference_sq(const CoeffVector& a, const CoeffVector& b, double exponent) {
  const std::int64_t top = std::max(a.grid().nyquist(), b.grid().nyquist());
  double sum = 0.0;
  for (std::int64_t n = -top + 1; n <= top; ++n) {
    const cplx d = mode_or_zero(a, n) - mode_or_zero(b, n);
    const double mag = std::norm(d);
    if (mag != 0.0) sum += std::pow(japanese_bracket(n), exponent) * mag;
  }
  return sum;
}

}  // namespace

double pair_norm_difference(const SpectralState& a, const SpectralState& b, double s, double beta) {
  if (a.grid() == b.grid()) {
    const SpectralState diff(a.u - b.u, a.v - b.v, a.t);
    return pair_norm(diff, s, beta);
  }
  return std::sqrt(weighted_difference_sq(a.v, b.v, 2.0 * (s - beta))) +
         std::sqrt(weighted_difference_sq(a.u, b.u, 2.0 * s));
}

double trajectory_difference(const RunRecord& a, const RunRecord& b, double s, double beta) {
  if (a.times != b.times) throw Error("trajectory_difference: records use different snapshot times");
  if (a.states.size() != a.times.size() || b.states.size() != b.times.size()) {
    throw Error("trajectory_difference: both records must store their states");
  }
  double worst = 0.0;
  for (std::size_t j = 0; j < a.states.size(); ++j) {
    worst = std::max(worst, pair_norm_difference(a.states[j], b.states[j], s, beta));
  }
  return worst;
}

std::string_view to_string(Regime regime) {
  return regime == Regime::deterministic ? "deterministic" : "probabilistic";
}

Regime classify_regime(double alpha, double beta) {
  return alpha - 0.5 > 0.5 - beta ? Regime::deterministic : Regime::probabilistic;
}

double sobolev_gamma(double alpha, double beta, Regime regime) {
  if (!(alpha > 0.5)) throw ValidationError("alpha", "must be > 1/2");
  if (regime == Regime::probabilistic) return 1.0 / 3.0;
  const double excess = alpha - 0.5;
  const double critical = 0.5 - beta;
  if (!(excess > critical)) {
    throw ValidationError("alpha", "deterministic regime needs alpha - 1/2 > 1/2 - beta");
  }
  return 0.5 * (1.0 + critical / excess);
}

double sobolev_index(double alpha, double beta, Regime regime) {
  return sobolev_gamma(alpha, beta, regime) * (alpha - 0.5);
}

}  // namespace fnlw
