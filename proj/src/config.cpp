#include "fnlw/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "fnlw/error.hpp"
#include "fnlw/integrator.hpp"
#include "fnlw/observables.hpp"

namespace fnlw {

using nlohmann::json;

namespace {

double get_double(const json& j, const std::string& key) {
  if (!j.is_number()) throw ValidationError(key, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ValidationError(key, "must be finite");
  return v;
}

std::int64_t get_int(const json& j, const std::string& key) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.0e15) return static_cast<std::int64_t>(v);
  }
  throw ValidationError(key, "expected an integer");
}

std::uint64_t get_seed(const json& j, const std::string& key) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
  throw ValidationError(key, "expected a non-negative integer");
}

bool get_bool(const json& j, const std::string& key) {
  if (!j.is_boolean()) throw ValidationError(key, "expected true or false");
  return j.get<bool>();
}

std::string get_string(const json& j, const std::string& key) {
  if (!j.is_string()) throw ValidationError(key, "expected a string");
  return j.get<std::string>();
}

int get_small_int(const json& j, const std::string& key) {
  const std::int64_t v = get_int(j, key);
  if (v < -1000000 || v > 1000000) throw ValidationError(key, "out of range");
  return static_cast<int>(v);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ValidationError("config", std::string("malformed JSON: ") + e.what());
  }
}

void require_object(const json& j) {
  if (!j.is_object()) throw ValidationError("config", "expected a JSON object");
}

}  // namespace

ModelParams run_config_from_json(const json& input) {
  require_object(input);
  if (input.contains("params")) return run_config_from_json(input.at("params"));
  const json& j = input;
  ModelParams p;
  bool have_s = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "alpha") p.alpha = get_double(value, key);
    else if (key == "beta") p.beta = get_double(value, key);
    else if (key == "s") { p.s = get_double(value, key); have_s = true; }
    else if (key == "N") p.N = get_int(value, key);
    else if (key == "M") p.M = get_int(value, key);
    else if (key == "t_s") p.t_s = get_double(value, key);
    else if (key == "tau") p.tau = get_double(value, key);
    else if (key == "tau_factor") p.tau_factor = get_double(value, key);
    else if (key == "a") p.a = get_double(value, key);
    else if (key == "seed") p.seed = get_seed(value, key);
    else if (key == "kind") p.kind = parse_data_kind(get_string(value, key));
    else if (key == "snapshots") p.snapshots = get_int(value, key);
    else if (key == "nonlinear") p.nonlinear = get_bool(value, key);
    else throw ValidationError(key, "unknown field");
  }
  if (!(p.alpha > 0.5)) throw ValidationError("alpha", "must be > 1/2");
  if (!(p.beta > 0.0)) throw ValidationError("beta", "must be > 0");
  if (!have_s) p.s = sobolev_index(p.alpha, p.beta, classify_regime(p.alpha, p.beta));
  validate(p);
  return p;
}

ModelParams parse_run_config(std::string_view text) { return run_config_from_json(parse_json(text)); }

json to_json(const ModelParams& p) {
  return json{{"alpha", p.alpha}, {"beta", p.beta},   {"s", p.s},
              {"N", p.N},         {"M", p.M},         {"t_s", p.t_s},
              {"tau", p.tau},     {"tau_factor", p.tau_factor}, {"a", p.a},
              {"seed", p.seed},   {"kind", std::string(to_string(p.kind))},
              {"snapshots", p.snapshots}, {"nonlinear", p.nonlinear}};
}

SweepConfig sweep_config_from_json(const json& j) {
  require_object(j);
  if (!j.contains("preset")) throw ValidationError("preset", "missing (pwp, norm_inflation, deterministic_wp, energy_check)");
  const SweepRegime regime = parse_sweep_regime(get_string(j.at("preset"), "preset"));
  SweepOverrides o;
  for (const auto& [key, value] : j.items()) {
    if (key == "preset") continue;
    if (key == "alpha") o.alpha = get_double(value, key);
    else if (key == "beta") o.beta = get_double(value, key);
    else if (key == "s") o.s = get_double(value, key);
    else if (key == "k_min") o.k_min = get_small_int(value, key);
    else if (key == "k_max") o.k_max = get_small_int(value, key);
    else if (key == "m_offset") o.m_offset = get_small_int(value, key);
    else if (key == "m_max_log2") o.m_max_log2 = get_small_int(value, key);
    else if (key == "m_table") {
      if (!value.is_object()) throw ValidationError(key, "expected an object mapping k to log2 M");
      std::map<int, int> table;
      for (const auto& [k, m] : value.items()) {
        int kk = 0;
        try {
          std::size_t used = 0;
          kk = std::stoi(k, &used);
          if (used != k.size()) throw std::invalid_argument(k);
        } catch (const std::exception&) {
          throw ValidationError(key, "keys must be integers, got '" + k + "'");
        }
        table[kk] = get_small_int(m, key);
      }
      o.m_table = table;
    } else if (key == "t_s") o.t_s = get_double(value, key);
    else if (key == "snapshots") o.snapshots = get_int(value, key);
    else if (key == "seed") o.seed = get_seed(value, key);
    else if (key == "a") o.a = get_double(value, key);
    else if (key == "refinement") o.refinement = parse_refinement(get_string(value, key));
    else if (key == "kinds") {
      if (!value.is_array()) throw ValidationError(key, "expected an array of kind names");
      std::vector<DataKind> kinds;
      for (const json& v : value) kinds.push_back(parse_data_kind(get_string(v, key)));
      o.kinds = kinds;
    } else if (key == "nonlinear") o.nonlinear = get_bool(value, key);
    else throw ValidationError(key, "unknown field");
  }
  return preset(regime, o);
}

SweepConfig parse_sweep_config(std::string_view text) { return sweep_config_from_json(parse_json(text)); }

json to_json(const SweepConfig& c) {
  json table = json::object();
  for (const auto& [k, m] : c.m_table) table[std::to_string(k)] = m;
  json kinds = json::array();
  for (DataKind k : c.kinds) kinds.push_back(std::string(to_string(k)));
  return json{{"preset", std::string(to_string(c.regime))},
              {"alpha", c.alpha},
              {"beta", c.beta},
              {"s", c.s},
              {"k_min", c.k_min},
              {"k_max", c.k_max},
              {"m_offset", c.m_offset},
              {"m_max_log2", c.m_max_log2},
              {"m_table", table},
              {"t_s", c.t_s},
              {"snapshots", c.snapshots},
              {"seed", c.seed},
              {"a", c.a},
              {"refinement", std::string(to_string(c.refinement))},
              {"kinds", kinds},
              {"nonlinear", c.nonlinear}};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error("error while reading '" + path + "'");
  return ss.str();
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string config_checksum(const ModelParams& p) { return hex64(fnv1a64(to_json(p).dump())); }

json run_manifest(const RunRecord& record, const std::vector<std::string>& files) {
  const ModelParams& p = record.params;
  const TimestepPlan plan = select_timestep(p);
  json derived{{"tau", record.tau},
               {"tau_rule", plan.tau_rule},
               {"steps", record.steps},
               {"steps_per_snapshot", record.steps_per_snapshot},
               {"s", p.s},
               {"gamma", p.s / (p.alpha - 0.5)},
               {"regime", std::string(to_string(classify_regime(p.alpha, p.beta)))}};
  json results{{"S_sup", record.S_sup}, {"e_inf", record.e_inf ? json(*record.e_inf) : json(nullptr)}};
  return json{{"tool", "fnlw"},
              {"version", std::string(kToolVersion)},
              {"params", to_json(p)},
              {"derived", derived},
              {"results", results},
              {"files", files},
              {"config_checksum", config_checksum(p)}};
}

}  // namespace fnlw
