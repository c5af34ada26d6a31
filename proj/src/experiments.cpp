#include "fnlw/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <set>
#include <thread>

#include "fnlw/error.hpp"
#include "fnlw/initdata.hpp"
#include "fnlw/integrator.hpp"
#include "fnlw/observables.hpp"

namespace fnlw {

std::string_view to_string(SweepRegime regime) {
  switch (regime) {
    case SweepRegime::pwp: return "pwp";
    case SweepRegime::norm_inflation: return "norm_inflation";
    case SweepRegime::deterministic_wp: return "deterministic_wp";
    case SweepRegime::energy_check: return "energy_check";
  }
  return "pwp";
}

SweepRegime parse_sweep_regime(std::string_view name) {
  if (name == "pwp") return SweepRegime::pwp;
  if (name == "norm_inflation") return SweepRegime::norm_inflation;
  if (name == "deterministic_wp") return SweepRegime::deterministic_wp;
  if (name == "energy_check") return SweepRegime::energy_check;
  throw ValidationError("preset", "unknown preset '" + std::string(name) +
                                      "' (pwp, norm_inflation, deterministic_wp, energy_check)");
}

std::string_view to_string(Refinement refinement) {
  return refinement == Refinement::refined ? "refined" : "baseline";
}

Refinement parse_refinement(std::string_view name) {
  if (name == "baseline") return Refinement::baseline;
  if (name == "refined") return Refinement::refined;
  throw ValidationError("refinement", "expected 'baseline' or 'refined'");
}

std::int64_t SweepConfig::grid_points(int k) const {
  int log2m = std::min(k + m_offset, m_max_log2);
  if (auto it = m_table.find(k); it != m_table.end()) log2m = it->second;
  if (refinement == Refinement::refined) ++log2m;
  if (log2m < 3 || log2m > 40) throw ValidationError("m_table", "log2 M out of range for k = " + std::to_string(k));
  return std::int64_t{1} << log2m;
}

ModelParams SweepConfig::params_for(int k, DataKind kind) const {
  ModelParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.s = s;
  p.N = std::int64_t{1} << k;
  p.M = grid_points(k);
  p.t_s = t_s;
  p.tau = 0.0;
  p.tau_factor = refinement == Refinement::refined ? 0.5 : 1.0;
  p.a = a;
  p.seed = seed;
  p.kind = kind;
  p.snapshots = snapshots;
  p.nonlinear = nonlinear;
  return p;
}

void validate(const SweepConfig& c) {
  if (!(c.alpha > 0.5)) throw ValidationError("alpha", "must be > 1/2");
  if (!(c.beta > 0.0)) throw ValidationError("beta", "must be > 0");
  if (!(c.s > 0.0)) throw ValidationError("s", "must be > 0");
  if (c.k_min < 1) throw ValidationError("k_min", "must be >= 1");
  if (c.k_max < c.k_min) throw ValidationError("k_max", "must be >= k_min");
  if (c.k_max > 30) throw ValidationError("k_max", "must be <= 30");
  if (c.m_offset < 1) throw ValidationError("m_offset", "must be >= 1");
  if (c.m_max_log2 < 3) throw ValidationError("m_max_log2", "must be >= 3");
  if (!(c.t_s >= 0.0)) throw ValidationError("t_s", "must be >= 0");
  if (c.snapshots < 1) throw ValidationError("snapshots", "must be >= 1");
  if (!(c.a > 0.0)) throw ValidationError("a", "must be > 0");
  if (c.kinds.empty()) throw ValidationError("kinds", "at least one data kind is required");
  if (std::set<DataKind>(c.kinds.begin(), c.kinds.end()).size() != c.kinds.size()) {
    throw ValidationError("kinds", "duplicate data kind");
  }
}

SweepConfig preset(SweepRegime regime, const SweepOverrides& o) {
  SweepConfig c;
  c.regime = regime;
  switch (regime) {
    case SweepRegime::pwp:
      c.alpha = 0.6;
      c.kinds = {DataKind::truncated};
      break;
    case SweepRegime::norm_inflation:
      c.alpha = 0.6;
      c.kinds = {DataKind::pathological};
      break;
    case SweepRegime::deterministic_wp:
      c.alpha = 0.98;
      c.kinds = {DataKind::truncated, DataKind::pathological};
      break;
    case SweepRegime::energy_check:
      c.alpha = 0.6;
      c.kinds = {DataKind::truncated, DataKind::pathological};
      break;
  }
  if (o.alpha) c.alpha = *o.alpha;
  if (o.beta) c.beta = *o.beta;
  if (o.k_min) c.k_min = *o.k_min;
  if (o.k_max) c.k_max = *o.k_max;
  if (o.m_offset) c.m_offset = *o.m_offset;
  if (o.m_max_log2) c.m_max_log2 = *o.m_max_log2;
  if (o.m_table) c.m_table = *o.m_table;
  if (o.t_s) c.t_s = *o.t_s;
  if (o.snapshots) c.snapshots = *o.snapshots;
  if (o.seed) c.seed = *o.seed;
  if (o.a) c.a = *o.a;
  if (o.refinement) c.refinement = *o.refinement;
  if (o.kinds) c.kinds = *o.kinds;
  if (o.nonlinear) c.nonlinear = *o.nonlinear;

  if (!(c.alpha > 0.5)) throw ValidationError("alpha", "must be > 1/2");
  if (!(c.beta > 0.0)) throw ValidationError("beta", "must be > 0");
  const Regime natural = classify_regime(c.alpha, c.beta);
  Regime rule = natural;
  if (regime == SweepRegime::pwp || regime == SweepRegime::norm_inflation) {
    if (natural != Regime::probabilistic) {
      throw ValidationError("alpha", std::string(to_string(regime)) +
                                         " studies the low-regularity regime alpha - 1/2 <= 1/2 - beta");
    }
    rule = Regime::probabilistic;
  } else if (regime == SweepRegime::deterministic_wp) {
    rule = Regime::deterministic;  // sobolev_index rejects alpha - 1/2 <= 1/2 - beta
  }
  c.s = o.s ? *o.s : sobolev_index(c.alpha, c.beta, rule);
  validate(c);
  return c;
}

RateFit fit_rate(std::span<const double> N_values, std::span<const double> y_values) {
  if (N_values.size() != y_values.size()) throw Error("fit_rate: size mismatch");
  const std::size_t n = N_values.size();
  if (n < 3) throw Error("fit_rate: need at least 3 points");
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(N_values[i] > 0.0) || !(y_values[i] > 0.0)) throw Error("fit_rate: values must be positive");
    x[i] = std::log(N_values[i]);
    y[i] = std::log(y_values[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error("fit_rate: N values must not all coincide");
  RateFit fit;
  fit.exponent = sxy / sxx;
  fit.points = n;
  const double intercept = my - fit.exponent * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (intercept + fit.exponent * x[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(n));
  return fit;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("FNLW_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

const SweepRun* SweepResult::find(DataKind kind, int k) const {
  for (const SweepRun& r : runs) {
    if (r.kind == kind && r.k == k) return &r;
  }
  return nullptr;
}

std::vector<SeriesRate> sweep_rates(const std::vector<SweepRun>& runs, const std::vector<DataKind>& kinds) {
  std::vector<SeriesRate> out;
  for (DataKind kind : kinds) {
    std::vector<double> n_sup, sup, n_delta, delta;
    for (const SweepRun& r : runs) {
      if (r.kind != kind) continue;
      n_sup.push_back(static_cast<double>(r.N));
      sup.push_back(r.record.S_sup);
      if (r.delta && *r.delta > 0.0) {
        n_delta.push_back(static_cast<double>(r.N));
        delta.push_back(*r.delta);
      }
    }
    if (n_sup.size() >= 3) out.push_back({kind, "S_sup", fit_rate(n_sup, sup)});
    if (n_delta.size() >= 3) out.push_back({kind, "delta", fit_rate(n_delta, delta)});
  }
  return out;
}

SweepResult run_sweep(const SweepConfig& config, const SweepOptions& options) {
  validate(config);

  struct Job {
    int k;
    DataKind kind;
  };
  std::vector<Job> jobs;
  for (DataKind kind : config.kinds) {
    for (int k = config.k_min; k <= config.k_max; ++k) jobs.push_back({k, kind});
  }

  std::vector<std::optional<RunRecord>> records(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
      try {
        const ModelParams p = config.params_for(jobs[i].k, jobs[i].kind);
        const InitialData init = build_initial(p);
        records[i] = run(p, init, RunOptions{.store_states = options.differences});
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const unsigned threads =
      std::min<std::size_t>(options.threads ? options.threads : default_thread_count(), jobs.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  SweepResult result;
  result.config = config;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const std::int64_t N = std::int64_t{1} << jobs[i].k;
    if (!records[i]) {
      result.failures.push_back({N, jobs[i].kind, errors[i]});
      continue;
    }
    std::optional<double> delta;
    if (options.differences && i > 0 && jobs[i - 1].kind == jobs[i].kind && records[i - 1]) {
      delta = trajectory_difference(*records[i], *records[i - 1], config.s, config.beta);
    }
    result.runs.push_back({jobs[i].k, N, jobs[i].kind, {}, delta});
  }
  // Move records in after all differences are taken, then drop states.
  std::size_t r = 0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!records[i]) continue;
    result.runs[r].record = std::move(*records[i]);
    if (!options.keep_states) {
      result.runs[r].record.states.clear();
      result.runs[r].record.states.shrink_to_fit();
    }
    ++r;
  }
  result.rates = sweep_rates(result.runs, config.kinds);
  return result;
}

double bracket_power_tail(std::int64_t R, double q) {
  if (R < 16) throw ValidationError("R", "tail expansion needs R >= 16");
  if (!(2.0 * q > 1.0)) throw ValidationError("q", "tail sum diverges unless 2q > 1");
  const double two_pi = 2.0 * std::numbers::pi;
  const double r = static_cast<double>(R);
  const double p = 2.0 * q;
  // Integral over [R, inf) of ((2 pi x)^2 + 1)^(-q), expanded in (2 pi x)^-2.
  const double integral = std::pow(two_pi, -p) * std::pow(r, 1.0 - p) / (p - 1.0) -
                          q * std::pow(two_pi, -p - 2.0) * std::pow(r, -1.0 - p) / (p + 1.0) +
                          0.5 * q * (q + 1.0) * std::pow(two_pi, -p - 4.0) * std::pow(r, -3.0 - p) / (p + 3.0);
  const double w = two_pi * r;
  const double f = std::pow(w * w + 1.0, -q);
  const double df = -q * std::pow(w * w + 1.0, -q - 1.0) * 2.0 * two_pi * two_pi * r;
  const double d3f = -std::pow(two_pi, -p) * p * (p + 1.0) * (p + 2.0) * std::pow(r, -p - 3.0);
  // Euler-Maclaurin for the sum over n = R+1, R+2, ...
  return integral - 0.5 * f - df / 12.0 + d3f / 720.0;
}

std::vector<std::pair<std::int64_t, double>> mc_initial_convergence(
    double alpha, double beta, double s, std::span<const std::int64_t> N_values, int R,
    const McOptions& options) {
  if (R < 8) throw ValidationError("R", "need at least 8 realizations");
  if (N_values.empty()) throw ValidationError("N_values", "empty");
  const std::int64_t n_max = *std::max_element(N_values.begin(), N_values.end());
  const std::int64_t n_ref = options.reference_N > 0 ? options.reference_N : 4 * n_max;
  if (n_ref < n_max) throw ValidationError("reference_N", "must be >= max(N_values)");

  std::int64_t m = 8;
  while (m < 2 * n_ref + 2) m *= 2;
  if (options.kind == DataKind::pathological) {
    while (static_cast<double>(m) < options.a * static_cast<double>(n_max)) m *= 2;
  }

  ModelParams base;
  base.alpha = alpha;
  base.beta = beta;
  base.s = s;
  base.M = m;
  base.a = options.a;
  const double tail = options.tail_completion && n_ref >= 16 ? 2.0 * bracket_power_tail(n_ref, alpha - s) : 0.0;

  std::vector<double> sum_sq(N_values.size(), 0.0);
  for (int r = 0; r < R; ++r) {
    ModelParams ref = base;
    ref.seed = options.seed_base + static_cast<std::uint64_t>(r);
    ref.N = n_ref;
    ref.kind = DataKind::truncated;
    const InitialData limit = build_truncated(ref);
    for (std::size_t i = 0; i < N_values.size(); ++i) {
      ModelParams p = ref;
      p.N = N_values[i];
      p.kind = options.kind;
      const InitialData approx = build_initial(p);
      const double du = sobolev_norm(limit.u0 - approx.u0, s);
      const double dv = sobolev_norm(limit.v0 - approx.v0, s - beta);
      const double d = std::sqrt(dv * dv + tail) + std::sqrt(du * du + tail);
      sum_sq[i] += d * d;
    }
  }
  std::vector<std::pair<std::int64_t, double>> out;
  for (std::size_t i = 0; i < N_values.size(); ++i) {
    out.emplace_back(N_values[i], std::sqrt(sum_sq[i] / R));
  }
  return out;
}

std::vector<EnergyRow> energy_study(const SweepConfig& config, const SweepOptions& options) {
  std::vector<EnergyRow> rows;
  SweepOptions opts = options;
  opts.differences = false;
  opts.keep_states = false;
  for (Refinement refinement : {Refinement::baseline, Refinement::refined}) {
    SweepConfig c = config;
    c.refinement = refinement;
    const SweepResult res = run_sweep(c, opts);
    if (!res.failures.empty()) {
      const SweepFailure& f = res.failures.front();
      throw Error("energy_study: run N=" + std::to_string(f.N) + " kind=" + std::string(to_string(f.kind)) +
                  " failed: " + f.message);
    }
    for (const SweepRun& r : res.runs) rows.push_back({r.N, r.kind, refinement, r.record.e_inf});
  }
  return rows;
}

}  // namespace fnlw
