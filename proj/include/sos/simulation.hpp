#pragma once
// End-to-end simulation loops: feed a job trace through a scheduling policy
// and its machines until everything drains, producing one SimTrace.
//
// Per-tick order, identical for every policy where applicable:
//   1. arrivals enter (CREATED); the policy assigns what it can this tick
//   2. scheduler releases enter the machines' execution queues (ENQUEUED)
//   3. work-stealing policies rebalance (STOLEN)
//   4. every machine executes one tick (COMPLETED)
// Baselines have no admission limit or virtual schedule, so their ASSIGNED,
// RELEASED, and ENQUEUED events coincide.

#include <cstdint>
#include <vector>

#include "sos/baselines.hpp"
#include "sos/domain.hpp"
#include "sos/numerics.hpp"
#include "sos/trace.hpp"

namespace sos {

struct RunParams {
  std::vector<MachineProfile> machines;
  NumericFormat format = NumericFormat::make(Scheme::fp32);
  double alpha = 0.5;
  std::size_t vs_capacity = 10;
  bool noise = false;
  std::uint64_t noise_seed = 1;
  std::uint64_t max_ticks = 0;  // 0: derived from the jobs' total EPT
};

SimTrace run_sos(const std::vector<Job>& jobs, const RunParams& params);
SimTrace run_baseline(Policy policy, const std::vector<Job>& jobs,
                      const RunParams& params);
SimTrace run_policy(Policy policy, const std::vector<Job>& jobs,
                    const RunParams& params);

}  // namespace sos
