#pragma once

// N-sweeps over truncations N = 2^k, pairwise trajectory differences,
// Monte-Carlo convergence of the initial data and power-law fits.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fnlw/model.hpp"

namespace fnlw {

enum class SweepRegime { pwp, norm_inflation, deterministic_wp, energy_check };
enum class Refinement { baseline, refined };  // refined: tau/2 and 2M

std::string_view to_string(SweepRegime regime);
SweepRegime parse_sweep_regime(std::string_view name);
std::string_view to_string(Refinement refinement);
Refinement parse_refinement(std::string_view name);

struct SweepConfig {
  SweepRegime regime = SweepRegime::pwp;
  double alpha = 0.6;
  double beta = 1.0 / 3.0;
  double s = 0.1 / 3.0;
  int k_min = 4;
  int k_max = 12;
  // M = 2^min(k + m_offset, m_max_log2) unless k appears in m_table, which
  // maps k to log2 M directly.
  int m_offset = 4;
  int m_max_log2 = 16;
  std::map<int, int> m_table;
  double t_s = 1e-2;
  std::int64_t snapshots = 100;
  std::uint64_t seed = kDefaultSeed;
  double a = 16.0;
  Refinement refinement = Refinement::baseline;
  std::vector<DataKind> kinds{DataKind::truncated};
  bool nonlinear = true;

  std::int64_t grid_points(int k) const;
  ModelParams params_for(int k, DataKind kind) const;

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

// Values left unset keep the preset default.
struct SweepOverrides {
  std::optional<double> alpha, beta, s;
  std::optional<int> k_min, k_max, m_offset, m_max_log2;
  std::optional<std::map<int, int>> m_table;
  std::optional<double> t_s;
  std::optional<std::int64_t> snapshots;
  std::optional<std::uint64_t> seed;
  std::optional<double> a;
  std::optional<Refinement> refinement;
  std::optional<std::vector<DataKind>> kinds;
  std::optional<bool> nonlinear;
};

// Resolves a preset plus overrides; s follows the regime rule unless given.
// Throws ValidationError on invalid combinations.
SweepConfig preset(SweepRegime regime, const SweepOverrides& overrides = {});
void validate(const SweepConfig& config);

struct RateFit {
  double exponent = 0.0;
  double residual = 0.0;  // RMS misfit in log space
  std::size_t points = 0;
};

// Least-squares slope of log y against log N. Needs >= 3 points, all positive.
RateFit fit_rate(std::span<const double> N_values, std::span<const double> y_values);

struct SweepRun {
  int k = 0;
  std::int64_t N = 0;
  DataKind kind = DataKind::truncated;
  RunRecord record;             // states are released after differencing
  std::optional<double> delta;  // trajectory difference to the run at N/2
};

struct SweepFailure {
  std::int64_t N = 0;
  DataKind kind = DataKind::truncated;
  std::string message;
};

struct SeriesRate {
  DataKind kind = DataKind::truncated;
  std::string series;  // "S_sup" or "delta"
  RateFit fit;
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepRun> runs;  // ordered by kind (config order), then k
  std::vector<SeriesRate> rates;
  std::vector<SweepFailure> failures;

  const SweepRun* find(DataKind kind, int k) const;
};

struct SweepOptions {
  unsigned threads = 0;        // 0: FNLW_THREADS or hardware concurrency
  bool differences = true;     // compute pairwise trajectory differences
  bool keep_states = false;    // keep stored states in the returned records
};

// Worker-pool execution; results do not depend on scheduling.
SweepResult run_sweep(const SweepConfig& config, const SweepOptions& options = {});

// Fits of S_sup and delta against N for each kind.
std::vector<SeriesRate> sweep_rates(const std::vector<SweepRun>& runs, const std::vector<DataKind>& kinds);

unsigned default_thread_count();

struct McOptions {
  DataKind kind = DataKind::truncated;
  std::uint64_t seed_base = kDefaultSeed;
  double a = 16.0;
  std::int64_t reference_N = 0;  // 0: 4 * max(N_values)
  // Adds the expected energy of the modes beyond the reference truncation,
  // so the reference stands in for the untruncated field.
  bool tail_completion = true;
};

// For each N, the RMS over R seeds of the pair-norm distance between the
// data at N and the reference field (truncated at reference_N).
std::vector<std::pair<std::int64_t, double>> mc_initial_convergence(
    double alpha, double beta, double s, std::span<const std::int64_t> N_values, int R,
    const McOptions& options = {});

// sum_{n > R} <n>^(-2q), by an asymptotic expansion valid for R >= 16.
double bracket_power_tail(std::int64_t R, double q);

struct EnergyRow {
  std::int64_t N = 0;
  DataKind kind = DataKind::truncated;
  Refinement refinement = Refinement::baseline;
  std::optional<double> e_inf;
};

// Relative Hamiltonian error per run, at baseline and refined resolution.
std::vector<EnergyRow> energy_study(const SweepConfig& config, const SweepOptions& options = {});

}  // namespace fnlw
