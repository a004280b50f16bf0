#pragma once
// Full-precision reference implementations used as correctness oracles and
// as the software baseline. Everything here is recomputed from first
// principles on every decision -- no incremental state is shared with the
// engine, so the two sides fail independently.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sos/domain.hpp"
#include "sos/engine.hpp"

namespace sos::oracle {

// Tick intervals [start, end) during which one job occupied the head of its
// machine's virtual schedule.
class HeadHistory {
 public:
  // Record one tick of head occupancy at `tick`; extends the last interval
  // when contiguous.
  void add_tick(std::uint64_t tick);
  // Total occupancy measure in [0, t).
  double measure_until(double t) const;
  double measure() const;  // all recorded ticks
  const std::vector<std::pair<std::uint64_t, std::uint64_t>>& intervals() const {
    return intervals_;
  }

 private:
  std::vector<std::pair<std::uint64_t, std::uint64_t>> intervals_;
};

// Remaining fraction of virtual work: 1 - (head occupancy up to t_J) / ept.
double iota_continuous(const HeadHistory& history, double k_ept_i, double t_j);

struct ContendingJob {
  double weight = 0;
  double ept_i = 0;
  double iota = 1.0;
};

// Continuous-time assignment cost of placing `job` on the machine currently
// holding `incumbents`. Partitioned by the WSPT comparison: jobs with a
// ratio >= the candidate's delay it (high set); the rest get delayed by it
// (low set).
double cost_continuous(double job_weight, double job_ept_i,
                       std::span<const ContendingJob> incumbents);

struct DiscreteSums {
  double sum_h = 0;
  double sum_l = 0;
};

// Direct evaluation of the discretized per-job terms after n_k cycles of
// virtual work: sum_h = ept - n_k, sum_l = weight - n_k * (weight / ept).
DiscreteSums naive_discrete_sums(double weight, double ept_i, double n_k);
// Same, with the priority ratio supplied explicitly (the incremental
// updater subtracts the *stored* ratio, which quantized schemes round).
DiscreteSums naive_discrete_sums(double weight, double ept_i, double n_k,
                                 double ratio);

// Discretized cost built entirely from naive sums; mirrors the engine's
// masking and full-schedule sentinel without touching its code path.
struct NaiveIncumbent {
  double weight = 0;
  double ept_i = 0;
  double n_k = 0;
};
double cost_discrete_naive(double job_weight, double job_ept_i,
                           std::span<const NaiveIncumbent> incumbents);

// Event log entry comparable one-for-one with the engine's output.
struct RefEvent {
  std::uint64_t tick = 0;
  bool release = false;  // false = assignment
  std::uint32_t job_id = 0;
  std::size_t machine = 0;
};

// Double-precision re-implementation of the whole scheduling procedure:
// identical phase order, tie-breaks, and capacity handling, but every cost
// recomputed from HeadHistory on every decision (O(M*N) per event).
class ReferenceScheduler {
 public:
  ReferenceScheduler(std::size_t machine_count, std::size_t vs_capacity,
                     double alpha);

  // Same phase sequence as the engine: virtual work, releases, then at most
  // one admission. Appends to the event log.
  void tick(std::span<const Job> arrivals);
  bool idle() const;
  std::uint64_t now() const { return tick_; }
  const std::vector<RefEvent>& events() const { return events_; }

 private:
  struct Slot {
    Job job;
    double ept = 0;
    double ratio = 0;
    std::uint32_t release_at = 0;  // head-ticks until release
    HeadHistory history;
  };
  struct MachineState {
    std::vector<Slot> schedule;  // head at index 0, nonincreasing ratio
  };

  double head_ticks(const Slot& s) const { return s.history.measure(); }

  std::size_t machine_count_;
  std::size_t vs_capacity_;
  double alpha_;
  std::vector<MachineState> machines_;
  std::deque<Job> input_fifo_;
  std::uint64_t tick_ = 0;
  std::vector<RefEvent> events_;
};

// Convenience: run a whole arrival trace (plus drain ticks) and return the
// assignment/release log.
std::vector<RefEvent> reference_schedule(std::span<const Job> jobs,
                                         std::size_t machine_count,
                                         std::size_t vs_capacity, double alpha,
                                         std::uint64_t max_ticks = 0);

}  // namespace sos::oracle
