#pragma once
// Comparison metrics, all pure functions of a SimTrace: fairness heatmaps,
// load-balancing CV, per-machine latency, and throughput.

#include <cstdint>
#include <span>
#include <vector>

#include "sos/trace.hpp"

namespace sos {

// Cumulative ASSIGNED counts per machine at each checkpoint fraction of the
// trace's final tick. One row per machine.
std::vector<std::vector<double>> fairness_heatmap(
    const SimTrace& trace, std::size_t machine_count,
    std::span<const double> checkpoints);

// Element-wise average over several runs.
std::vector<std::vector<double>> fairness_heatmap(
    std::span<const SimTrace> traces, std::size_t machine_count,
    std::span<const double> checkpoints);

// Coefficient of variation (population std / mean) over the pooled
// per-machine, per-interval assignment counts. Lower is better.
double load_cv(const SimTrace& trace, std::size_t machine_count,
               std::uint64_t interval);

struct LatencyReport {
  std::vector<double> per_machine;  // mean release-creation delay; 0 if unused
  std::vector<std::uint64_t> jobs_per_machine;
  double overall = 0.0;
};

// Scheduling latency: RELEASED tick minus CREATED tick, per job, grouped by
// the machine the job was released to. Every created job must have been
// released (run traces to drain).
LatencyReport avg_latency(const SimTrace& trace, std::size_t machine_count);

// RELEASED events per tick over the trace's full event span.
double throughput(const SimTrace& trace);

}  // namespace sos
