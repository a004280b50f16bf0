#include "sos/baselines.hpp"

#include "sos/errors.hpp"

namespace sos {

Policy policy_from_string(const std::string& s) {
  if (s == "sos") return Policy::sos;
  if (s == "rr") return Policy::rr;
  if (s == "greedy") return Policy::greedy;
  if (s == "wsrr") return Policy::wsrr;
  if (s == "wsg") return Policy::wsg;
  throw ConfigError("unknown policy: " + s);
}

std::string to_string(Policy p) {
  switch (p) {
    case Policy::sos: return "sos";
    case Policy::rr: return "rr";
    case Policy::greedy: return "greedy";
    case Policy::wsrr: return "wsrr";
    case Policy::wsg: return "wsg";
  }
  return "?";
}

std::size_t BaselineScheduler::assign(const Job& job,
                                      const std::vector<ExecQueue>& queues) {
  if (policy_ == Policy::rr || policy_ == Policy::wsrr) {
    const std::size_t chosen = rr_cursor_;
    rr_cursor_ = (rr_cursor_ + 1) % machine_count_;
    return chosen;
  }
  // Greedy: least estimated completion time.
  std::size_t best = 0;
  std::uint64_t best_work = queues[0].remaining_work() + job.ept[0];
  for (std::size_t i = 1; i < machine_count_; ++i) {
    const std::uint64_t work = queues[i].remaining_work() + job.ept[i];
    if (work < best_work) {
      best = i;
      best_work = work;
    }
  }
  return best;
}

std::vector<StealMove> BaselineScheduler::steal(
    std::vector<ExecQueue>& queues, const std::vector<Job>& jobs_by_id,
    bool noise, std::mt19937_64& noise_rng) {
  std::vector<StealMove> moves;
  for (std::size_t thief = 0; thief < machine_count_; ++thief) {
    if (queues[thief].busy()) continue;

    // Victim: greatest remaining work with >= 2 pending jobs.
    std::size_t victim = machine_count_;
    std::uint64_t victim_work = 0;
    for (std::size_t i = 0; i < machine_count_; ++i) {
      if (i == thief || queues[i].pending_count() < 2) continue;
      const std::uint64_t work = queues[i].remaining_work();
      if (victim == machine_count_ || work > victim_work) {
        victim = i;
        victim_work = work;
      }
    }
    if (victim == machine_count_) continue;

    ExecItem item = queues[victim].steal_tail();
    const Job& job = jobs_by_id[item.job_id - 1];
    item.remaining = ExecQueue::actual_time(job.ept[thief], noise, noise_rng);
    queues[thief].push_stolen(item);
    moves.push_back({item.job_id, victim, thief});
  }
  return moves;
}

}  // namespace sos
