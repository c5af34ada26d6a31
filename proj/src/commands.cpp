#include "fnlw/commands.hpp"

#include <filesystem>
#include <ostream>

#include "fnlw/config.hpp"
#include "fnlw/csv.hpp"
#include "fnlw/error.hpp"
#include "fnlw/initdata.hpp"
#include "fnlw/integrator.hpp"
#include "fnlw/snapshot_io.hpp"

namespace fnlw {

namespace fs = std::filesystem;

namespace {

void make_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Error("cannot create output directory '" + dir + "': " + ec.message());
}

std::string join(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

// Maps exceptions to exit codes with a one-line message.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    err << "fnlw: invalid config: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const FormatError& e) {
    err << "fnlw: " << e.what() << '\n';
    return kExitFormat;
  } catch (const InstabilityError& e) {
    err << "fnlw: run failed at " << e.what() << '\n';
    return kExitFailure;
  } catch (const fs::filesystem_error& e) {
    err << "fnlw: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "fnlw: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "fnlw: unexpected error: " << e.what() << '\n';
    return kExitFailure;
  }
}

void write_run_outputs(const RunRecord& rec, const std::string& dir, bool with_snapshots) {
  make_dir(dir);
  std::vector<std::string> files{"manifest.json", "timeseries.csv"};
  if (with_snapshots) files.push_back("snapshots.bin");
  write_text_file(join(dir, "timeseries.csv"), timeseries_csv(rec));
  if (with_snapshots) write_snapshots(join(dir, "snapshots.bin"), rec.states);
  write_text_file(join(dir, "manifest.json"), run_manifest(rec, files).dump(2) + '\n');
}

}  // namespace

int cmd_run(const std::string& config_path, const std::string& out_dir, bool store_snapshots, std::ostream& out,
            std::ostream& err) {
  return guarded(err, [&] {
    const ModelParams params = parse_run_config(read_text_file(config_path));
    const InitialData init = build_initial(params);
    RunOptions options;
    options.store_states = store_snapshots;
    options.store_endpoints = !store_snapshots;
    const RunRecord rec = run(params, init, options);
    write_run_outputs(rec, out_dir, true);
    out << "N=" << params.N << " M=" << params.M << " tau=" << format_double(rec.tau) << " steps=" << rec.steps
        << " S_sup=" << format_double(rec.S_sup)
        << " e_inf=" << (rec.e_inf ? format_double(*rec.e_inf) : std::string("undefined")) << '\n';
    return int{kExitOk};
  });
}

int cmd_sweep(const SweepCommand& command, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (command.preset_name.has_value() == command.config_path.has_value()) {
      throw ValidationError("preset", "give exactly one of --preset or --config");
    }
    SweepConfig config = command.preset_name
                             ? preset(parse_sweep_regime(*command.preset_name))
                             : parse_sweep_config(read_text_file(*command.config_path));
    if (command.refined) config.refinement = Refinement::refined;
    validate(config);

    SweepOptions options;
    options.threads = command.threads;
    const SweepResult result = run_sweep(config, options);

    make_dir(command.out_dir);
    for (const SweepRun& r : result.runs) {
      const std::string name = std::string(to_string(r.kind)) + "_k" + std::to_string(r.k);
      write_run_outputs(r.record, join(join(command.out_dir, "runs"), name), false);
    }
    const std::vector<SummaryRow> rows = summary_rows(result);
    write_text_file(join(command.out_dir, "summary.csv"), summary_csv(rows));
    write_text_file(join(command.out_dir, "rates.csv"), rates_csv(result.rates));

    nlohmann::json failures = nlohmann::json::array();
    for (const SweepFailure& f : result.failures) {
      failures.push_back({{"N", f.N}, {"kind", std::string(to_string(f.kind))}, {"message", f.message}});
    }
    nlohmann::json rates = nlohmann::json::array();
    for (const SeriesRate& r : result.rates) {
      rates.push_back({{"kind", std::string(to_string(r.kind))},
                       {"series", r.series},
                       {"exponent", r.fit.exponent},
                       {"residual", r.fit.residual},
                       {"points", r.fit.points}});
    }
    const nlohmann::json doc{{"tool", "fnlw"},
                             {"version", std::string(kToolVersion)},
                             {"config", to_json(config)},
                             {"rates", rates},
                             {"failures", failures}};
    write_text_file(join(command.out_dir, "sweep.json"), doc.dump(2) + '\n');

    for (const SeriesRate& r : result.rates) {
      out << to_string(r.kind) << ' ' << r.series << ": exponent " << format_double(r.fit.exponent) << " +- "
          << format_double(r.fit.residual) << '\n';
    }
    if (!result.failures.empty()) {
      for (const SweepFailure& f : result.failures) {
        err << "fnlw: run N=" << f.N << " kind=" << to_string(f.kind) << " failed: " << f.message << '\n';
      }
      return int{kExitPartial};
    }
    return int{kExitOk};
  });
}

int cmd_rates(const std::string& summary_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::vector<SummaryRow> rows = parse_summary_csv(read_text_file(summary_path));
    const std::vector<SeriesRate> rates = summary_rates(rows);
    if (rates.empty()) throw FormatError("'" + summary_path + "' has no series with at least 3 positive points");
    for (const SeriesRate& r : rates) {
      out << to_string(r.kind) << ' ' << r.series << ": exponent " << format_double(r.fit.exponent) << " +- "
          << format_double(r.fit.residual) << '\n';
    }
    return int{kExitOk};
  });
}

}  // namespace fnlw
