#include <doctest.h>

#include <cmath>
#include <random>

#include "fnlw/error.hpp"
#include "fnlw/integrator.hpp"
#include "fnlw/observables.hpp"
#include "oracles.hpp"

using namespace fnlw;
using oracle::kPi;

namespace {

double omega(std::int64_t n, double beta) { return std::pow(2.0 * kPi * std::abs(static_cast<double>(n)), beta); }

SpectralState random_state(std::int64_t m, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::vector<cplx> u = oracle::random_hermitian(static_cast<std::size_t>(m), rng);
  std::vector<cplx> v = oracle::random_hermitian(static_cast<std::size_t>(m), rng);
  for (cplx& c : u) c *= scale;
  for (cplx& c : v) c *= scale;
  return SpectralState(oracle::to_coeffs(u), oracle::to_coeffs(v), 0.0);
}

SpectralState smooth_state(std::int64_t N, std::int64_t M) {
  ModelParams p;
  p.N = N;
  p.M = M;
  const InitialData d = build_truncated(p);
  return SpectralState(d.u0, d.v0, 0.0);
}

double state_error(const SpectralState& a, const SpectralState& b) {
  return std::max(oracle::max_abs_diff(a.u.modes(), b.u.modes()), oracle::max_abs_diff(a.v.modes(), b.v.modes()));
}

SpectralState advance_trig(SpectralState s, double tau, int steps, double beta, Nonlinearity nl) {
  TrigIntegrator it(s.grid(), tau, beta, nl);
  for (int i = 0; i < steps; ++i) it.step(s);
  return s;
}

SpectralState advance_verlet(SpectralState s, double tau, int steps, double beta, Nonlinearity nl) {
  VerletIntegrator it(s.grid(), tau, beta, nl);
  for (int i = 0; i < steps; ++i) it.step(s);
  return s;
}

}  // namespace

TEST_CASE("dispersive timescale") {
  CHECK(dispersive_timescale(1 << 12, 1.0 / 3.0) == doctest::Approx(0.0625).epsilon(1e-14));
  CHECK(dispersive_timescale(1 << 12, 1e-9) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(dispersive_timescale(1 << 23, 0.125) == doctest::Approx(std::pow(2.0, -23.0 / 8.0)).epsilon(1e-14));
  CHECK(dispersive_timescale(1 << 23, 0.125) == doctest::Approx(0.1364).epsilon(1e-3));
}

TEST_CASE("nonlinear timescale") {
  const double inv = 1.0 / nonlinear_timescale(0.6, 1.0 / 30.0, 1 << 10);
  CHECK(inv == doctest::Approx(std::sqrt(5.591582441177753) + std::pow(1024.0, 0.5 - 1.0 / 30.0) / std::log(1024.0))
                   .epsilon(1e-10));
  CHECK(inv == doctest::Approx(6.03).epsilon(2e-3));
  CHECK(nonlinear_timescale(0.6, 1.0 / 30.0, 1 << 10) == doctest::Approx(0.166).epsilon(3e-3));
  // s = 1/2: the bump term is 1/log N
  CHECK(1.0 / nonlinear_timescale(0.6, 0.5, 256) ==
        doctest::Approx(std::sqrt(5.591582441177753) + 1.0 / std::log(256.0)).epsilon(1e-10));
  // large N: tau ~ log N N^(s - 1/2)
  const double N = std::ldexp(1.0, 40);
  CHECK(nonlinear_timescale(0.6, 0.1, static_cast<std::int64_t>(N)) * std::pow(N, 0.4) / std::log(N) ==
        doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("timestep rule and snapshot rounding") {
  ModelParams p;
  p.alpha = 0.6;
  p.s = 1.0 / 30.0;
  p.N = 1 << 10;
  p.M = 1 << 12;
  p.beta = 1.0 / 3.0;
  p.snapshots = 1;
  p.t_s = 1.0;
  const TimestepPlan plan = select_timestep(p);
  const double tnl = nonlinear_timescale(0.6, 1.0 / 30.0, 1 << 10);
  CHECK(plan.tau_rule == doctest::Approx(std::min(0.0125, tnl * tnl * tnl / 2.0)).epsilon(1e-14));
  CHECK(plan.tau_rule == doctest::Approx(0.00228).epsilon(5e-3));
  CHECK(plan.tau <= plan.tau_rule);
  CHECK(plan.tau * plan.steps_per_snapshot == doctest::Approx(1.0).epsilon(1e-14));

  ModelParams q;
  q.N = 16;
  q.M = 256;
  q.snapshots = 1;
  q.t_s = 1e-2;
  q.tau = 3e-3;
  const TimestepPlan fixed = select_timestep(q);
  CHECK(fixed.steps_per_snapshot == 4);
  CHECK(fixed.tau == doctest::Approx(2.5e-3).epsilon(1e-15));

  // a step that already divides the interval is kept
  q.tau = 2.5e-3;
  CHECK(select_timestep(q).steps_per_snapshot == 4);
}

TEST_CASE("property: rounding never increases tau") {
  for (std::int64_t k = 2; k <= 11; ++k) {
    for (std::int64_t J : {1, 7, 100}) {
      ModelParams p;
      p.N = std::int64_t{1} << k;
      p.M = std::int64_t{1} << (k + 2);
      p.snapshots = J;
      p.t_s = 0.37;
      const TimestepPlan plan = select_timestep(p);
      CHECK(plan.tau <= plan.tau_rule);
      CHECK(plan.steps == plan.steps_per_snapshot * J);
    }
  }
}

TEST_CASE("refined runs take exactly half the step") {
  ModelParams p;
  p.N = 256;
  p.M = 4096;
  const TimestepPlan base = select_timestep(p);
  p.tau_factor = 0.5;
  p.M = 8192;
  const TimestepPlan fine = select_timestep(p);
  CHECK(fine.steps_per_snapshot == 2 * base.steps_per_snapshot);
  CHECK(fine.tau == 0.5 * base.tau);
}

TEST_CASE("filtered nonlinearity") {
  CoeffVector zero(Grid(16));
  CHECK(filtered_nonlinearity(zero, 0.01, 0.3) == zero);

  CoeffVector c(Grid(16));
  c.set(0, {1.5, 0.0});
  CHECK(filtered_nonlinearity(c, 0.01, 0.3)[0].real() == doctest::Approx(-3.375).epsilon(1e-15));

  // sinc^2 . (-(sinc . u)^3) composed by hand from the convolution oracle
  std::mt19937_64 rng(5);
  const std::vector<cplx> u = oracle::random_hermitian(16, rng);
  const double tau = 0.05, beta = 1.0 / 3.0;
  std::vector<cplx> inner(16);
  for (std::size_t k = 0; k < 16; ++k) {
    const double x = tau * omega(oracle::mode_of_slot(k, 16), beta);
    inner[k] = u[k] * (x == 0.0 ? 1.0 : std::sin(x) / x);
  }
  std::vector<cplx> want = oracle::triple_convolution(inner);
  for (std::size_t k = 0; k < 16; ++k) {
    const double x = tau * omega(oracle::mode_of_slot(k, 16), beta);
    const double f = x == 0.0 ? 1.0 : std::sin(x) / x;
    want[k] *= -f * f;
  }
  const std::vector<cplx> got = filtered_nonlinearity(oracle::to_coeffs(u), tau, beta).modes();
  CHECK(oracle::max_abs_diff(got, want) <= 1e-12 * oracle::max_abs(want));
}

TEST_CASE("linear step of a single mode is the exact rotation") {
  for (double beta : {0.125, 1.0 / 3.0}) {
    CoeffVector u(Grid(16));
    u.set(1, {1.0, 0.0});
    SpectralState s(u, CoeffVector(Grid(16)), 0.0);
    const double tau = 1e-3;
    const int p = 1000;
    s = advance_trig(s, tau, p, beta, Nonlinearity::none);
    CHECK(s.u[1].real() == doctest::Approx(std::cos(p * tau * std::pow(2.0 * kPi, beta))).epsilon(1e-12));
    CHECK(std::abs(s.u[1].imag()) < 1e-15);
  }
}

TEST_CASE("zero mode drifts freely without the nonlinearity") {
  CoeffVector v(Grid(16));
  v.set(0, {1.0, 0.0});
  SpectralState s(CoeffVector(Grid(16)), v, 0.0);
  s = advance_trig(s, 1e-3, 250, 1.0 / 3.0, Nonlinearity::none);
  CHECK(s.u[0].real() == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(s.v[0].real() == 1.0);
}

TEST_CASE("property: linear exactness on every mode") {
  for (double beta : {0.125, 1.0 / 3.0}) {
    const SpectralState s0 = random_state(256, 31);
    const double tau = 1e-3;
    const int steps = 1000;
    const SpectralState s = advance_trig(s0, tau, steps, beta, Nonlinearity::none);
    const double t = tau * steps;
    double worst = 0.0;
    for (std::int64_t n = 0; n < 128; ++n) {
      const double w = omega(n, beta);
      const cplx u = n == 0 ? s0.u[n] + t * s0.v[n] : std::cos(w * t) * s0.u[n] + std::sin(w * t) / w * s0.v[n];
      const cplx v = n == 0 ? s0.v[n] : -w * std::sin(w * t) * s0.u[n] + std::cos(w * t) * s0.v[n];
      worst = std::max(worst, std::abs(s.u[n] - u) / std::max(std::abs(u), 1e-300));
      worst = std::max(worst, std::abs(s.v[n] - v) / std::max(std::abs(v), 1e-300));
    }
    CAPTURE(beta);
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("property: linear time reversal") {
  const SpectralState s0 = random_state(64, 32);
  SpectralState s = advance_trig(s0, 2e-3, 100, 1.0 / 3.0, Nonlinearity::none);
  s = advance_trig(s, -2e-3, 100, 1.0 / 3.0, Nonlinearity::none);
  CHECK(state_error(s, s0) <= 1e-12 * s0.u.max_abs());
}

TEST_CASE("property: second order convergence of the nonlinear scheme") {
  const SpectralState s0 = smooth_state(8, 32);
  const double t = 1e-3, beta = 1.0 / 3.0;
  const int base_steps = 10;
  const SpectralState ref = advance_trig(s0, t / (base_steps * 1000), base_steps * 1000, beta, Nonlinearity::cubic);
  std::vector<double> err;
  for (int h = 0; h < 4; ++h) {
    const int steps = base_steps << h;
    err.push_back(state_error(advance_trig(s0, t / steps, steps, beta, Nonlinearity::cubic), ref));
  }
  for (int h = 0; h < 3; ++h) {
    CAPTURE(h);
    CHECK(err[h] / err[h + 1] >= 3.5);
    CHECK(err[h] / err[h + 1] <= 4.5);
  }
}

TEST_CASE("property: steps keep the zero and Nyquist modes real") {
  SpectralState s = random_state(32, 33);
  s = advance_trig(s, 1e-3, 20, 0.125, Nonlinearity::cubic);
  CHECK(s.u.half().front().imag() == 0.0);
  CHECK(s.u.half().back().imag() == 0.0);
  CHECK(s.v.half().front().imag() == 0.0);
  CHECK(s.v.half().back().imag() == 0.0);
}

TEST_CASE("trig_step matches one stateful step and rejects a zero step") {
  const SpectralState s0 = smooth_state(8, 32);
  const SpectralState a = trig_step(s0, 1e-3, 0.3);
  const SpectralState b = advance_trig(s0, 1e-3, 1, 0.3, Nonlinearity::cubic);
  CHECK(a.u == b.u);
  CHECK(a.v == b.v);
  CHECK(a.t == doctest::Approx(1e-3));
  CHECK_THROWS_AS(trig_step(s0, 0.0, 0.3), ValidationError);
}

TEST_CASE("Verlet: linear frequency error is second order") {
  const double beta = 0.5;
  const double w = omega(1, beta);
  std::vector<double> err;
  for (double tau : {0.02, 0.01, 0.005}) {
    CoeffVector u(Grid(16));
    u.set(1, {1.0, 0.0});
    const int steps = static_cast<int>(std::lround(1.0 / tau));
    const SpectralState s = advance_verlet(SpectralState(u, CoeffVector(Grid(16)), 0.0), tau, steps, beta,
                                           Nonlinearity::none);
    err.push_back(std::abs(s.u[1].real() - std::cos(w * 1.0)));
  }
  CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.1));
  CHECK(err[1] / err[2] == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("Verlet: harmonic energy drift stays bounded") {
  const double beta = 1.0 / 3.0;
  SpectralState s = random_state(32, 34, 0.1);
  const Hamiltonian energy(s.grid(), beta, false);
  const double h0 = energy(s);
  VerletIntegrator it(s.grid(), 1e-3, beta, Nonlinearity::none);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    it.step(s);
    if (i % 100 == 99) worst = std::max(worst, std::abs(energy(s) / h0 - 1.0));
  }
  CHECK(worst < 1e-3);
}

TEST_CASE("Verlet and the trigonometric scheme converge to each other") {
  const SpectralState s0 = smooth_state(8, 32);
  const double t = 1e-3, beta = 1.0 / 3.0;
  std::vector<double> gap;
  for (int steps : {10, 20, 40}) {
    gap.push_back(state_error(advance_trig(s0, t / steps, steps, beta, Nonlinearity::cubic),
                              advance_verlet(s0, t / steps, steps, beta, Nonlinearity::cubic)));
  }
  CHECK(gap[0] / gap[1] == doctest::Approx(4.0).epsilon(0.15));
  CHECK(gap[1] / gap[2] == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("run with t_s = 0 records the initial snapshot only") {
  ModelParams p;
  p.N = 8;
  p.M = 64;
  p.t_s = 0.0;
  const RunRecord r = run(p, build_initial(p));
  CHECK(r.times.size() == 1);
  CHECK(r.S.size() == 1);
  CHECK(r.S_sup == r.S[0]);
  CHECK(r.steps == 0);
}

TEST_CASE("run from zero data stays zero") {
  ModelParams p;
  p.N = 8;
  p.M = 64;
  p.t_s = 1e-3;
  p.snapshots = 5;
  const InitialData zero{CoeffVector(Grid(64)), CoeffVector(Grid(64)), p, DataKind::truncated};
  const RunRecord r = run(p, zero, {.store_states = true});
  CHECK(r.times.size() == 6);
  for (double s : r.S) CHECK(s == 0.0);
  for (double h : r.H) CHECK(h == 0.0);
  CHECK_FALSE(r.e_inf.has_value());
  CHECK(r.times.back() == p.t_s);
}

TEST_CASE("run conserves the Hamiltonian at N = 64, M = 1024") {
  ModelParams p;
  p.N = 64;
  p.M = 1024;
  const RunRecord r = run(p, build_initial(p));
  REQUIRE(r.e_inf.has_value());
  CHECK(*r.e_inf <= 1e-4);
  CHECK(r.times.size() == static_cast<std::size_t>(p.snapshots + 1));
}

TEST_CASE("property: runs are deterministic") {
  ModelParams p;
  p.N = 32;
  p.M = 512;
  p.kind = DataKind::pathological;
  p.snapshots = 10;
  const RunRecord a = run(p, build_initial(p), {.store_states = true});
  const RunRecord b = run(p, build_initial(p), {.store_states = true});
  CHECK(a.S == b.S);
  CHECK(a.H == b.H);
  CHECK(a.states.back().u == b.states.back().u);
}

TEST_CASE("endpoint storage keeps the first and last state") {
  ModelParams p;
  p.N = 8;
  p.M = 64;
  p.snapshots = 4;
  const RunRecord all = run(p, build_initial(p), {.store_states = true});
  const RunRecord ends = run(p, build_initial(p), {.store_endpoints = true});
  REQUIRE(ends.states.size() == 2);
  CHECK(ends.states.front().u == all.states.front().u);
  CHECK(ends.states.back().v == all.states.back().v);
  CHECK(ends.states.back().t == p.t_s);
}

TEST_CASE("unstable runs report the failing step") {
  ModelParams p;
  p.N = 8;
  p.M = 32;
  p.t_s = 10.0;
  p.snapshots = 1;
  p.tau = 0.5;
  InitialData init = build_initial(p);
  for (cplx& c : init.u0.half()) c *= 1e3;
  init.u0.half().back() = 0.0;
  try {
    run(p, init);
    FAIL("expected an instability");
  } catch (const InstabilityError& e) {
    CHECK(e.step() >= 1);
    CHECK(e.step() <= 20);
  }
}

TEST_CASE("run rejects a grid mismatch") {
  ModelParams p;
  p.N = 8;
  p.M = 64;
  InitialData init = build_initial(p);
  p.M = 128;
  CHECK_THROWS_AS(run(p, init), ValidationError);
}
