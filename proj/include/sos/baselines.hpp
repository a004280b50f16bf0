#pragma once
// Comparison schedulers: round robin, greedy (least estimated completion),
// and their work-stealing variants. Same trace in, same event schema out,
// so every metric is policy-agnostic.

#include <cstdint>
#include <random>
#include <vector>

#include "sos/domain.hpp"
#include "sos/machine_sim.hpp"

namespace sos {

enum class Policy : std::uint8_t { sos, rr, greedy, wsrr, wsg };

Policy policy_from_string(const std::string& s);
std::string to_string(Policy p);

struct StealMove {
  std::uint32_t job_id = 0;
  std::size_t from = 0;
  std::size_t to = 0;
};

// Assignment + stealing state for the four baseline policies. The execution
// queues are owned by the caller (the simulation loop) and shared with the
// machine model.
class BaselineScheduler {
 public:
  BaselineScheduler(Policy policy, std::size_t machine_count)
      : policy_(policy), machine_count_(machine_count) {}

  // RR/WSRR: cyclic cursor. Greedy/WSG: argmin of queue backlog plus the
  // job's own EPT, ties to the lowest index.
  std::size_t assign(const Job& job, const std::vector<ExecQueue>& queues);

  bool steals() const { return policy_ == Policy::wsrr || policy_ == Policy::wsg; }

  // One stealing round: every idle machine with an empty queue takes one
  // job from the tail of the busiest victim (most remaining work, lowest
  // index on ties) that still has at least two pending jobs. The stolen
  // job's remaining time is re-derived from its EPT on the thief.
  std::vector<StealMove> steal(std::vector<ExecQueue>& queues,
                               const std::vector<Job>& jobs_by_id, bool noise,
                               std::mt19937_64& noise_rng);

  std::size_t cursor() const { return rr_cursor_; }

 private:
  Policy policy_;
  std::size_t machine_count_;
  std::size_t rr_cursor_ = 0;
};

}  // namespace sos
