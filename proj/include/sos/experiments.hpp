#pragma once
// Monte-Carlo experiment harness and the precision study. Each draw varies
// the workload knobs (composition, burst factor/type, idle timing) within
// declared ranges, reruns the selected schedulers, and aggregates the four
// comparison metrics. Deterministic per seed.

#include <cstdint>
#include <vector>

#include "sos/config.hpp"
#include "sos/metrics.hpp"
#include "sos/trace.hpp"

namespace sos {

struct RunMetrics {
  std::uint64_t run_id = 0;
  Policy policy = Policy::sos;
  std::vector<std::uint64_t> jobs_per_machine;
  std::vector<double> latency_per_machine;
  double avg_latency = 0.0;
  double cv = 0.0;
  double throughput = 0.0;
};

RunMetrics compute_run_metrics(const SimTrace& trace, std::size_t machines,
                               std::uint64_t cv_interval, Policy policy,
                               std::uint64_t run_id);

struct PolicySummary {
  Policy policy = Policy::sos;
  double mean_throughput = 0.0;
  double cv_throughput = 0.0;  // across runs
  double mean_latency = 0.0;
  double mean_cv = 0.0;
  std::vector<std::vector<double>> heatmap;  // averaged machine x checkpoint
};

struct MonteCarloReport {
  std::vector<RunMetrics> runs;  // one row per draw per policy
  std::vector<PolicySummary> summaries;
};

// Draw workload variations from the config's declared ranges, run every
// configured policy on each, and aggregate. draws >= 1.
MonteCarloReport monte_carlo(const ExperimentConfig& base, std::uint64_t draws,
                             std::uint64_t seed);

// Sampled workload parameters for draw `index` (exposed for tests).
WorkloadConfig sample_workload(const ExperimentConfig& base,
                               std::uint64_t seed, std::uint64_t index);

struct ErrorStats {
  double mean = 0.0;
  double max = 0.0;
  double p50 = 0.0;
  double p95 = 0.0;
  std::uint64_t count = 0;
};

ErrorStats summarize_errors(std::vector<double>& samples);

struct QuantSchemeResult {
  Scheme scheme = Scheme::fp32;
  ErrorStats wspt_error;   // percent, vs the full-precision ratio
  ErrorStats alpha_error;  // percent, vs the full-precision release point
  std::vector<double> job_share;            // mean per-machine share
  std::vector<double> mean_abs_share_delta; // mean per-draw |share - fp32|
};

// Run identical workload draws under every precision scheme and compare
// against fp32: relative errors of the stored WSPT ratio and of the
// alpha release point, plus per-machine job-share deltas.
std::vector<QuantSchemeResult> quant_study(const ExperimentConfig& base,
                                           std::uint64_t draws,
                                           std::uint64_t seed);

}  // namespace sos
