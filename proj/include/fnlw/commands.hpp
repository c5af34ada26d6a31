#pragma once

// Subcommands behind the fnlw executable. Each returns a process exit status
// and reports through the given streams.

#include <iosfwd>
#include <optional>
#include <string>

namespace fnlw {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,     // unexpected error
  kExitInvalid = 2,     // config validation or usage
  kExitIo = 3,          // file system errors
  kExitPartial = 4,     // sweep finished with failed runs
  kExitFormat = 5,      // malformed input file
};

int cmd_run(const std::string& config_path, const std::string& out_dir, bool store_snapshots, std::ostream& out,
            std::ostream& err);

struct SweepCommand {
  std::optional<std::string> preset_name;
  std::optional<std::string> config_path;
  std::string out_dir;
  bool refined = false;
  unsigned threads = 0;  // 0: FNLW_THREADS or hardware concurrency
};

int cmd_sweep(const SweepCommand& command, std::ostream& out, std::ostream& err);

int cmd_rates(const std::string& summary_path, std::ostream& out, std::ostream& err);

}  // namespace fnlw
