#pragma once

// JSON configuration for single runs and sweeps, plus run manifests.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fnlw/experiments.hpp"
#include "fnlw/model.hpp"

namespace fnlw {

inline constexpr std::string_view kToolVersion = "1.0.0";

// Run config: a flat object of ModelParams fields. Missing fields keep their
// defaults; s, when absent, follows the regime rule for (alpha, beta). A run
// manifest is accepted too (its "params" object is used).
ModelParams run_config_from_json(const nlohmann::json& j);
ModelParams parse_run_config(std::string_view text);
nlohmann::json to_json(const ModelParams& p);

// Sweep config: {"preset": name, ...overrides}.
SweepConfig sweep_config_from_json(const nlohmann::json& j);
SweepConfig parse_sweep_config(std::string_view text);
nlohmann::json to_json(const SweepConfig& c);  // fully explicit, round-trips

std::string read_text_file(const std::string& path);
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);
// FNV-1a of the canonical (sorted-key, compact) serialization of p.
std::string config_checksum(const ModelParams& p);

// Resolved params, derived scalars, results, file inventory, version and
// checksum. The params object alone reproduces the run.
nlohmann::json run_manifest(const RunRecord& record, const std::vector<std::string>& files);

}  // namespace fnlw
