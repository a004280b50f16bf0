#pragma once
// Implementations behind the CLI subcommands; factored out of main so they
// are directly testable. All of them throw (ConfigError/IoError/
// InvariantError) instead of exiting.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sos/baselines.hpp"
#include "sos/numerics.hpp"

namespace sos {

// Command-line overrides applied on top of the config file.
struct CliOverrides {
  std::optional<std::vector<Policy>> policies;
  std::optional<Scheme> precision;
  std::optional<std::uint64_t> seed;
  std::optional<bool> noise;
};

// Generate a workload trace (JSON lines). Prints job count and seed.
void cmd_gen(const std::string& config_path, const std::string& out_path,
             const CliOverrides& overrides = {});

// Run every configured policy over a stored trace until drained; writes
// <policy>_trace.csv, <policy>_metrics.csv, <policy>_metrics.json, and
// <policy>_heatmap.csv into the output directory.
void cmd_run(const std::string& config_path, const std::string& trace_path,
             const std::string& out_dir, const CliOverrides& overrides = {});

// Precision study across all five schemes; writes quant_errors.csv,
// job_share.csv, and quant_summary.json.
void cmd_quantstudy(const std::string& config_path, const std::string& out_dir,
                    std::uint64_t draws, const CliOverrides& overrides = {});

// Monte-Carlo experiment over varied workloads; writes metrics.csv,
// summary.json, and heatmap_<policy>.csv.
void cmd_montecarlo(const std::string& config_path, const std::string& out_dir,
                    std::uint64_t draws, const CliOverrides& overrides = {});

}  // namespace sos
