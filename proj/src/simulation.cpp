#include "sos/simulation.hpp"

#include <algorithm>

#include "sos/engine.hpp"
#include "sos/errors.hpp"
#include "sos/rng.hpp"

namespace sos {

namespace {

std::uint64_t default_tick_bound(const std::vector<Job>& jobs) {
  std::uint64_t total = 1000;
  for (const Job& j : jobs) {
    total += 2ull * *std::max_element(j.ept.begin(), j.ept.end()) + 4;
  }
  return total;
}

bool any_busy(const std::vector<ExecQueue>& queues) {
  return std::any_of(queues.begin(), queues.end(),
                     [](const ExecQueue& q) { return q.busy(); });
}

}  // namespace

SimTrace run_sos(const std::vector<Job>& jobs, const RunParams& params) {
  SimTrace trace;
  Scheduler sched(params.machines, params.vs_capacity, params.format,
                  params.alpha);
  std::vector<ExecQueue> queues(params.machines.size());
  auto noise_rng = make_stream(params.noise_seed, Stream::exec_noise);
  const std::uint64_t bound =
      params.max_ticks ? params.max_ticks : default_tick_bound(jobs);

  std::size_t next = 0;
  std::vector<Job> arrivals;
  while (next < jobs.size() || !sched.idle() || any_busy(queues)) {
    const std::uint64_t t = sched.now();
    if (t > bound) throw InvariantError("run_sos: exceeded tick bound");

    arrivals.clear();
    while (next < jobs.size() && jobs[next].created_at == t) {
      arrivals.push_back(jobs[next]);
      trace.add(t, EventKind::created, jobs[next].id);
      ++next;
    }

    const TickResult result = sched.tick(arrivals);
    // Trace order mirrors the phase order: releases (phase 2) before the
    // admission (phase 3).
    for (const Release& r : result.releases) {
      trace.add(t, EventKind::released, r.job.id,
                static_cast<std::int32_t>(r.machine));
      queues[r.machine].enqueue(r.job, r.machine, params.noise, noise_rng);
      trace.add(t, EventKind::enqueued, r.job.id,
                static_cast<std::int32_t>(r.machine));
    }
    if (result.admitted) {
      const auto& a = *result.admitted;
      trace.add(t, EventKind::admitted, a.job.id);
      trace.add(t, EventKind::assigned, a.job.id,
                static_cast<std::int32_t>(a.machine));
    }
    for (std::size_t i = 0; i < queues.size(); ++i) {
      if (const auto done = queues[i].advance()) {
        trace.add(t, EventKind::completed, done->job_id,
                  static_cast<std::int32_t>(i));
      }
    }
  }
  return trace;
}

SimTrace run_baseline(Policy policy, const std::vector<Job>& jobs,
                      const RunParams& params) {
  if (policy == Policy::sos) {
    throw InvariantError("run_baseline: sos is not a baseline policy");
  }
  SimTrace trace;
  const std::size_t machine_count = params.machines.size();
  BaselineScheduler base(policy, machine_count);
  std::vector<ExecQueue> queues(machine_count);
  auto noise_rng = make_stream(params.noise_seed, Stream::exec_noise);
  const std::uint64_t bound =
      params.max_ticks ? params.max_ticks : default_tick_bound(jobs);

  // Dense id -> job lookup for steal re-derivation.
  std::uint32_t max_id = 0;
  for (const Job& j : jobs) max_id = std::max(max_id, j.id);
  std::vector<Job> jobs_by_id(max_id);
  for (const Job& j : jobs) jobs_by_id[j.id - 1] = j;

  std::size_t next = 0;
  std::uint64_t t = 0;
  while (next < jobs.size() || any_busy(queues)) {
    if (t > bound) throw InvariantError("run_baseline: exceeded tick bound");

    while (next < jobs.size() && jobs[next].created_at == t) {
      const Job& job = jobs[next];
      trace.add(t, EventKind::created, job.id);
      const std::size_t machine = base.assign(job, queues);
      trace.add(t, EventKind::assigned, job.id,
                static_cast<std::int32_t>(machine));
      trace.add(t, EventKind::released, job.id,
                static_cast<std::int32_t>(machine));
      queues[machine].enqueue(job, machine, params.noise, noise_rng);
      trace.add(t, EventKind::enqueued, job.id,
                static_cast<std::int32_t>(machine));
      ++next;
    }

    if (base.steals()) {
      for (const StealMove& move :
           base.steal(queues, jobs_by_id, params.noise, noise_rng)) {
        trace.add(t, EventKind::stolen, move.job_id,
                  static_cast<std::int32_t>(move.to));
      }
    }

    for (std::size_t i = 0; i < queues.size(); ++i) {
      if (const auto done = queues[i].advance()) {
        trace.add(t, EventKind::completed, done->job_id,
                  static_cast<std::int32_t>(i));
      }
    }
    ++t;
  }
  return trace;
}

SimTrace run_policy(Policy policy, const std::vector<Job>& jobs,
                    const RunParams& params) {
  return policy == Policy::sos ? run_sos(jobs, params)
                               : run_baseline(policy, jobs, params);
}

}  // namespace sos
