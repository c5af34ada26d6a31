#include <iostream>

#include <CLI11.hpp>

#include "fnlw/commands.hpp"
#include "fnlw/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral simulator for the fractional cubic wave equation on the torus"};
  app.set_version_flag("--version", std::string(fnlw::kToolVersion));
  app.require_subcommand(1);

  std::string config_path, out_dir;
  bool store_snapshots = false;
  CLI::App* run = app.add_subcommand("run", "Execute one run from a JSON config (or manifest)");
  run->add_option("--config", config_path, "Run config path")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_flag("--store-snapshots", store_snapshots, "Write every snapshot state, not just the endpoints");

  fnlw::SweepCommand sweep_cmd;
  std::string preset_name, sweep_config;
  CLI::App* sweep = app.add_subcommand("sweep", "Run an N-sweep from a preset or a JSON sweep config");
  auto* preset_opt = sweep->add_option("--preset", preset_name, "pwp, norm_inflation, deterministic_wp, energy_check");
  auto* config_opt = sweep->add_option("--config", sweep_config, "Sweep config path");
  preset_opt->excludes(config_opt);
  sweep->add_option("--out", sweep_cmd.out_dir, "Output directory")->required();
  sweep->add_flag("--refined", sweep_cmd.refined, "Halve tau and double M");

  std::string summary_path;
  CLI::App* rates = app.add_subcommand("rates", "Refit power laws from a sweep summary CSV");
  rates->add_option("--summary", summary_path, "summary.csv path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fnlw::kExitInvalid;
  }

  if (run->parsed()) return fnlw::cmd_run(config_path, out_dir, store_snapshots, std::cout, std::cerr);
  if (sweep->parsed()) {
    if (preset_opt->count()) sweep_cmd.preset_name = preset_name;
    if (config_opt->count()) sweep_cmd.config_path = sweep_config;
    return fnlw::cmd_sweep(sweep_cmd, std::cout, std::cerr);
  }
  return fnlw::cmd_rates(summary_path, std::cout, std::cerr);
}
