#pragma once

// Time integration of
//
//   u_tt + |D|^(2 beta) u + u^3 = 0   on the unit torus,
//
// by a symplectic trigonometric scheme with filtered nonlinearity. With
// Omega = |2 pi n|^beta, filters sinc(tau Omega) and f(u) = -u^3:
//
//   ft(u) = sinc^2 . f(sinc . u)
//   u+ = cos u + tau sinc v + tau^2/2 sinc ft(u)
//   v+ = -Omega sin u + cos v + tau/2 (cos ft(u) + ft(u+))
//
// The linear part is propagated exactly, mode by mode.

#include <cstdint>

#include "fnlw/initdata.hpp"
#include "fnlw/model.hpp"

namespace fnlw {

enum class Nonlinearity { cubic, none };

// tau_d = M^(-beta)
double dispersive_timescale(std::int64_t M, double beta);
// 1 / (sqrt(zeta(2 alpha)) + N^(1/2 - s) / log N); requires N >= 2.
double nonlinear_timescale(double alpha, double s, std::int64_t N);

struct TimestepPlan {
  double tau_rule = 0.0;             // min(tau_d/5, tau_NL^3/2) times tau_factor, or the requested tau
  double tau = 0.0;                  // rounded so each snapshot interval is an integer step count
  std::int64_t steps_per_snapshot = 0;
  std::int64_t steps = 0;            // P = J * steps_per_snapshot
};

TimestepPlan select_timestep(const ModelParams& params);

// sinc^2(tau |D|^beta) f(sinc(tau |D|^beta) u), f(u) = -u^3.
CoeffVector filtered_nonlinearity(const CoeffVector& u, double tau, double beta);

SpectralState trig_step(const SpectralState& state, double tau, double beta,
                        Nonlinearity nl = Nonlinearity::cubic);
// Kick-drift-kick leapfrog for v' = -Omega^2 u - u^3, unfiltered.
SpectralState verlet_step(const SpectralState& state, double tau, double beta,
                          Nonlinearity nl = Nonlinearity::cubic);

// Stateful stepper for long runs: precomputes the per-mode propagator and
// reuses transform buffers.
class TrigIntegrator {
 public:
  TrigIntegrator(Grid grid, double tau, double beta, Nonlinearity nl);

  // Advances in place by one step.
  void step(SpectralState& state);

  double tau() const noexcept { return tau_; }

 private:
  void filtered(const CoeffVector& u, CoeffVector& out);

  Grid grid_;
  double tau_;
  Nonlinearity nl_;
  std::vector<double> cos_;        // cos(tau Omega)
  std::vector<double> tau_sinc_;   // tau sinc(tau Omega)
  std::vector<double> half_tau2_sinc_;
  std::vector<double> neg_omega_sin_;
  std::vector<double> half_tau_cos_;
  std::vector<double> half_tau_;
  std::vector<double> sinc_;
  std::vector<double> sinc2_;
  DealiasedCube cube_;
  CoeffVector scratch_;
  CoeffVector f_now_;
  CoeffVector f_next_;
  CoeffVector u_next_;
};

class VerletIntegrator {
 public:
  VerletIntegrator(Grid grid, double tau, double beta, Nonlinearity nl);
  void step(SpectralState& state);

 private:
  void acceleration(const CoeffVector& u, CoeffVector& out);

  Grid grid_;
  double tau_;
  Nonlinearity nl_;
  std::vector<double> neg_omega2_;
  std::vector<double> half_tau_;
  std::vector<double> tau_full_;
  DealiasedCube cube_;
  CoeffVector accel_;
};

struct RunOptions {
  bool store_states = false;
  bool store_endpoints = false;  // keep only the first and last state
};

// Iterates the trigonometric scheme from the initial data and records the
// pair norm and Hamiltonian at each of the J+1 snapshot times. Throws
// InstabilityError on non-finite values.
RunRecord run(const ModelParams& params, const InitialData& init, RunOptions options = {});

}  // namespace fnlw
