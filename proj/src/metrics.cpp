#include "sos/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "sos/errors.hpp"

namespace sos {

namespace {

std::uint64_t last_tick(const SimTrace& trace) {
  std::uint64_t t = 0;
  for (const TraceEvent& e : trace.events) t = std::max(t, e.tick);
  return t;
}

void check_checkpoints(std::span<const double> checkpoints) {
  for (double c : checkpoints) {
    if (!(c > 0.0 && c <= 1.0)) {
      throw InvariantError("fairness_heatmap: checkpoints must lie in (0, 1]");
    }
  }
}

}  // namespace

std::vector<std::vector<double>> fairness_heatmap(
    const SimTrace& trace, std::size_t machine_count,
    std::span<const double> checkpoints) {
  if (trace.empty()) throw InvariantError("fairness_heatmap: empty trace");
  check_checkpoints(checkpoints);
  const double t_end = static_cast<double>(last_tick(trace));
  std::vector<std::vector<double>> counts(
      machine_count, std::vector<double>(checkpoints.size(), 0.0));
  for (const TraceEvent& e : trace.events) {
    if (e.kind != EventKind::assigned || e.machine < 0) continue;
    const auto m = static_cast<std::size_t>(e.machine);
    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
      if (static_cast<double>(e.tick) <= checkpoints[c] * t_end) {
        counts[m][c] += 1.0;
      }
    }
  }
  return counts;
}

std::vector<std::vector<double>> fairness_heatmap(
    std::span<const SimTrace> traces, std::size_t machine_count,
    std::span<const double> checkpoints) {
  if (traces.empty()) throw InvariantError("fairness_heatmap: no traces");
  std::vector<std::vector<double>> avg(
      machine_count, std::vector<double>(checkpoints.size(), 0.0));
  for (const SimTrace& trace : traces) {
    const auto one = fairness_heatmap(trace, machine_count, checkpoints);
    for (std::size_t m = 0; m < machine_count; ++m) {
      for (std::size_t c = 0; c < checkpoints.size(); ++c) {
        avg[m][c] += one[m][c];
      }
    }
  }
  const double n = static_cast<double>(traces.size());
  for (auto& row : avg) {
    for (double& v : row) v /= n;
  }
  return avg;
}

double load_cv(const SimTrace& trace, std::size_t machine_count,
               std::uint64_t interval) {
  if (interval < 1) throw InvariantError("load_cv: interval must be >= 1");
  const std::uint64_t windows = last_tick(trace) / interval + 1;
  std::vector<double> cells(machine_count * windows, 0.0);
  std::uint64_t assigned = 0;
  for (const TraceEvent& e : trace.events) {
    if (e.kind != EventKind::assigned || e.machine < 0) continue;
    const std::uint64_t w = e.tick / interval;
    cells[static_cast<std::size_t>(e.machine) * windows + w] += 1.0;
    ++assigned;
  }
  if (assigned == 0) throw InvariantError("load_cv: no assignments in trace");

  double mean = 0.0;
  for (double c : cells) mean += c;
  mean /= static_cast<double>(cells.size());
  double var = 0.0;
  for (double c : cells) var += (c - mean) * (c - mean);
  var /= static_cast<double>(cells.size());  // population variance
  return std::sqrt(var) / mean;
}

LatencyReport avg_latency(const SimTrace& trace, std::size_t machine_count) {
  std::unordered_map<std::uint32_t, std::uint64_t> created;
  LatencyReport report;
  report.per_machine.assign(machine_count, 0.0);
  report.jobs_per_machine.assign(machine_count, 0);
  double total = 0.0;
  std::uint64_t jobs = 0;

  for (const TraceEvent& e : trace.events) {
    if (e.kind == EventKind::created) created.emplace(e.job_id, e.tick);
  }
  for (const TraceEvent& e : trace.events) {
    if (e.kind != EventKind::released) continue;
    const auto it = created.find(e.job_id);
    if (it == created.end()) {
      throw InvariantError("avg_latency: release without creation");
    }
    const double latency = static_cast<double>(e.tick - it->second);
    const auto m = static_cast<std::size_t>(e.machine);
    report.per_machine[m] += latency;
    ++report.jobs_per_machine[m];
    total += latency;
    ++jobs;
    created.erase(it);
  }
  if (!created.empty()) {
    throw InvariantError("avg_latency: trace not drained; jobs never released");
  }
  if (jobs == 0) throw InvariantError("avg_latency: no jobs in trace");

  for (std::size_t m = 0; m < machine_count; ++m) {
    if (report.jobs_per_machine[m] > 0) {
      report.per_machine[m] /= static_cast<double>(report.jobs_per_machine[m]);
    }
  }
  report.overall = total / static_cast<double>(jobs);
  return report;
}

double throughput(const SimTrace& trace) {
  if (trace.empty()) throw InvariantError("throughput: empty trace");
  std::uint64_t first = trace.events.front().tick;
  std::uint64_t last = first;
  std::uint64_t released = 0;
  for (const TraceEvent& e : trace.events) {
    first = std::min(first, e.tick);
    last = std::max(last, e.tick);
    released += e.kind == EventKind::released;
  }
  return static_cast<double>(released) / static_cast<double>(last - first + 1);
}

}  // namespace sos
