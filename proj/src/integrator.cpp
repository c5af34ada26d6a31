#include "fnlw/integrator.hpp"

#include <algorithm>
#include <cmath>

#include "fnlw/error.hpp"
#include "fnlw/kernels.hpp"
#include "fnlw/observables.hpp"

namespace fnlw {

std::string_view to_string(DataKind kind) {
  return kind == DataKind::pathological ? "pathological" : "truncated";
}

DataKind parse_data_kind(std::string_view name) {
  if (name == "truncated") return DataKind::truncated;
  if (name == "pathological") return DataKind::pathological;
  throw ValidationError("kind", "expected 'truncated' or 'pathological', got '" + std::string(name) + "'");
}

void validate(const ModelParams& p) {
  if (!(p.alpha > 0.5)) throw ValidationError("alpha", "must be > 1/2, got " + std::to_string(p.alpha));
  if (!(p.beta > 0.0)) throw ValidationError("beta", "must be > 0");
  if (!(p.s > 0.0)) throw ValidationError("s", "must be > 0");
  (void)Grid(p.M);
  if (p.N < 0) throw ValidationError("N", "must be >= 0");
  if (p.N > p.M / 2 - 1) {
    throw ValidationError("N", "truncation " + std::to_string(p.N) + " needs N <= M/2 - 1 = " +
                                   std::to_string(p.M / 2 - 1));
  }
  if (!(p.t_s >= 0.0) || !std::isfinite(p.t_s)) throw ValidationError("t_s", "must be finite and >= 0");
  if (!(p.tau >= 0.0) || !std::isfinite(p.tau)) throw ValidationError("tau", "must be finite and >= 0 (0 = automatic)");
  if (p.tau > 0.0 && p.t_s > 0.0 && p.tau > p.t_s) throw ValidationError("tau", "must not exceed t_s");
  if (!(p.tau_factor > 0.0) || p.tau_factor > 1.0) throw ValidationError("tau_factor", "must lie in (0, 1]");
  if (!(p.a > 0.0)) throw ValidationError("a", "must be > 0");
  if (p.snapshots < 1) throw ValidationError("snapshots", "must be >= 1");
  if (p.kind == DataKind::pathological) {
    if (p.N < 2) throw ValidationError("N", "pathological data requires N >= 2");
    if (p.a * static_cast<double>(p.N) > static_cast<double>(p.M)) {
      throw ValidationError("a", "bump under-resolved: a*N must not exceed M");
    }
  }
}

double dispersive_timescale(std::int64_t M, double beta) {
  if (M < 2) throw ValidationError("M", "must be >= 2");
  return std::pow(static_cast<double>(M), -beta);
}

double nonlinear_timescale(double alpha, double s, std::int64_t N) {
  if (!(alpha > 0.5)) throw ValidationError("alpha", "must be > 1/2");
  return 1.0 / (std::sqrt(riemann_zeta(2.0 * alpha)) + bump_amplitude(N, s));
}

TimestepPlan select_timestep(const ModelParams& params) {
  validate(params);
  TimestepPlan plan;
  if (params.tau > 0.0) {
    plan.tau_rule = params.tau;
  } else {
    const double tau_d = dispersive_timescale(params.M, params.beta);
    // With N < 2 there is no bump and the amplitude is the Gaussian part alone.
    const double tau_nl = params.N >= 2 ? nonlinear_timescale(params.alpha, params.s, params.N)
                                        : 1.0 / std::sqrt(riemann_zeta(2.0 * params.alpha));
    plan.tau_rule = std::min(tau_d / 5.0, tau_nl * tau_nl * tau_nl / 2.0);
  }
  if (params.t_s == 0.0) {
    plan.tau_rule *= params.tau_factor;
    plan.tau = plan.tau_rule;
    return plan;
  }
  const double interval = params.t_s / static_cast<double>(params.snapshots);
  // The slack keeps a step that already divides the interval from picking up
  // an extra step through rounding of interval/tau.
  auto steps_for = [](double ratio) {
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(ratio * (1.0 - 1e-12))));
  };
  plan.steps_per_snapshot = steps_for(interval / plan.tau_rule);
  // The factor applies after rounding, so tau_factor = 1/2 halves the step
  // actually taken even when the snapshot interval is the binding limit.
  if (params.tau_factor != 1.0) {
    plan.steps_per_snapshot = steps_for(static_cast<double>(plan.steps_per_snapshot) / params.tau_factor);
  }
  plan.tau_rule *= params.tau_factor;
  plan.tau = interval / static_cast<double>(plan.steps_per_snapshot);
  plan.steps = plan.steps_per_snapshot * params.snapshots;
  return plan;
}

namespace {

std::vector<double> per_mode(const Grid& grid, auto&& f) {
  return expanded_weights(grid, std::forward<decltype(f)>(f), false);
}

}  // namespace

TrigIntegrator::TrigIntegrator(Grid grid, double tau, double beta, Nonlinearity nl)
    : grid_(grid),
      tau_(tau),
      nl_(nl),
      cube_(grid),
      scratch_(grid),
      f_now_(grid),
      f_next_(grid),
      u_next_(grid) {
  if (tau == 0.0 || !std::isfinite(tau)) throw ValidationError("tau", "step must be finite and nonzero");
  if (!(beta > 0.0)) throw ValidationError("beta", "must be > 0");
  auto omega = [beta](std::int64_t n) { return abs_frequency_pow(n, beta); };
  cos_ = per_mode(grid, [&](std::int64_t n) { return std::cos(tau * omega(n)); });
  sinc_ = per_mode(grid, [&](std::int64_t n) { return sinc(tau * omega(n)); });
  sinc2_ = per_mode(grid, [&](std::int64_t n) {
    const double f = sinc(tau * omega(n));
    return f * f;
  });
  tau_sinc_ = per_mode(grid, [&](std::int64_t n) { return tau * sinc(tau * omega(n)); });
  half_tau2_sinc_ = per_mode(grid, [&](std::int64_t n) { return 0.5 * tau * tau * sinc(tau * omega(n)); });
  neg_omega_sin_ = per_mode(grid, [&](std::int64_t n) { return -omega(n) * std::sin(tau * omega(n)); });
  half_tau_cos_ = per_mode(grid, [&](std::int64_t n) { return 0.5 * tau * std::cos(tau * omega(n)); });
  half_tau_ = per_mode(grid, [&](std::int64_t) { return 0.5 * tau; });
}

void TrigIntegrator::filtered(const CoeffVector& u, CoeffVector& out) {
  if (nl_ == Nonlinearity::none) {
    std::fill(out.half().begin(), out.half().end(), cplx{0.0, 0.0});
    return;
  }
  const kernels::Table& k = kernels::active();
  k.scale(sinc_, u.raw(), scratch_.raw());
  cube_.apply(scratch_, out, /*negate=*/true);
  k.scale(sinc2_, out.raw(), out.raw());
}

void TrigIntegrator::step(SpectralState& state) {
  if (!(state.grid() == grid_)) throw Error("TrigIntegrator: state grid mismatch");
  const kernels::Table& k = kernels::active();
  filtered(state.u, f_now_);
  k.combine3(cos_, state.u.raw(), tau_sinc_, state.v.raw(), half_tau2_sinc_, f_now_.raw(), u_next_.raw());
  k.combine3(neg_omega_sin_, state.u.raw(), cos_, state.v.raw(), half_tau_cos_, f_now_.raw(), state.v.raw());
  filtered(u_next_, f_next_);
  k.accumulate(half_tau_, f_next_.raw(), state.v.raw());
  std::swap(state.u, u_next_);
  state.t += tau_;
}

CoeffVector filtered_nonlinearity(const CoeffVector& u, double tau, double beta) {
  const CoeffVector inner = sinc_filter(u, tau, beta);
  CoeffVector cubed(u.grid());
  DealiasedCube(u.grid()).apply(inner, cubed, /*negate=*/true);
  return sinc_filter(sinc_filter(cubed, tau, beta), tau, beta);
}

SpectralState trig_step(const SpectralState& state, double tau, double beta, Nonlinearity nl) {
  SpectralState next = state;
  TrigIntegrator(state.grid(), tau, beta, nl).step(next);
  return next;
}

VerletIntegrator::VerletIntegrator(Grid grid, double tau, double beta, Nonlinearity nl)
    : grid_(grid), tau_(tau), nl_(nl), cube_(grid), accel_(grid) {
  if (tau == 0.0 || !std::isfinite(tau)) throw ValidationError("tau", "step must be finite and nonzero");
  if (!(beta > 0.0)) throw ValidationError("beta", "must be > 0");
  neg_omega2_ = per_mode(grid, [beta](std::int64_t n) { return -abs_frequency_pow(n, 2.0 * beta); });
  half_tau_ = per_mode(grid, [tau](std::int64_t) { return 0.5 * tau; });
  tau_full_ = per_mode(grid, [tau](std::int64_t) { return tau; });
}

void VerletIntegrator::acceleration(const CoeffVector& u, CoeffVector& out) {
  if (nl_ == Nonlinearity::cubic) {
    cube_.apply(u, out, /*negate=*/true);
  } else {
    std::fill(out.half().begin(), out.half().end(), cplx{0.0, 0.0});
  }
  kernels::active().accumulate(neg_omega2_, u.raw(), out.raw());
}

void VerletIntegrator::step(SpectralState& state) {
  if (!(state.grid() == grid_)) throw Error("VerletIntegrator: state grid mismatch");
  const kernels::Table& k = kernels::active();
  acceleration(state.u, accel_);
  k.accumulate(half_tau_, accel_.raw(), state.v.raw());
  k.accumulate(tau_full_, state.v.raw(), state.u.raw());
  acceleration(state.u, accel_);
  k.accumulate(half_tau_, accel_.raw(), state.v.raw());
  state.t += tau_;
}

SpectralState verlet_step(const SpectralState& state, double tau, double beta, Nonlinearity nl) {
  SpectralState next = state;
  VerletIntegrator(state.grid(), tau, beta, nl).step(next);
  return next;
}

RunRecord run(const ModelParams& params, const InitialData& init, RunOptions options) {
  const TimestepPlan plan = select_timestep(params);
  const Grid grid(params.M);
  if (!(init.u0.grid() == grid) || !(init.v0.grid() == grid)) {
    throw ValidationError("M", "initial data grid does not match the run grid");
  }

  RunRecord rec;
  rec.params = params;
  rec.tau = plan.tau;
  rec.steps_per_snapshot = plan.steps_per_snapshot;
  rec.steps = plan.steps;

  const PairNorm norm(grid, params.s, params.beta);
  const Hamiltonian energy(grid, params.beta, params.nonlinear);
  const std::int64_t snapshots = params.t_s == 0.0 ? 0 : params.snapshots;

  SpectralState state(init.u0, init.v0, 0.0);
  auto record = [&](double t, bool endpoint) {
    state.t = t;
    rec.times.push_back(t);
    rec.S.push_back(norm(state));
    rec.H.push_back(energy(state));
    if (options.store_states || (options.store_endpoints && endpoint)) rec.states.push_back(state);
  };
  record(0.0, true);

  if (snapshots > 0) {
    TrigIntegrator stepper(grid, plan.tau, params.beta,
                           params.nonlinear ? Nonlinearity::cubic : Nonlinearity::none);
    const kernels::Table& k = kernels::active();
    std::int64_t step = 0;
    for (std::int64_t j = 1; j <= snapshots; ++j) {
      for (std::int64_t i = 0; i < plan.steps_per_snapshot; ++i) {
        stepper.step(state);
        ++step;
        if (!k.all_finite(state.u.raw()) || !k.all_finite(state.v.raw())) {
          throw InstabilityError(step, "non-finite coefficient encountered (unstable step)");
        }
      }
      const double t = j == snapshots ? params.t_s
                                      : params.t_s * static_cast<double>(j) / static_cast<double>(snapshots);
      record(t, j == snapshots);
    }
  }

  rec.e_inf = relative_energy_error(rec.H);
  rec.S_sup = *std::max_element(rec.S.begin(), rec.S.end());
  return rec;
}

}  // namespace fnlw
