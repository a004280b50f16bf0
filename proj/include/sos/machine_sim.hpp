#pragma once
// Per-machine execution model: an unbounded FIFO of dispatched jobs plus a
// single running job, advanced one tick at a time. Actual processing time
// is EPT scaled by uniform [0.8, 1.2] noise, or exactly EPT when noise is
// disabled.

#include <cstdint>
#include <deque>
#include <optional>
#include <random>

#include "sos/domain.hpp"

namespace sos {

struct ExecItem {
  std::uint32_t job_id = 0;
  std::uint32_t remaining = 0;
};

struct Completion {
  std::uint32_t job_id = 0;
};

class ExecQueue {
 public:
  // Actual time for one dispatch; min 1 tick.
  static std::uint32_t actual_time(std::uint32_t ept, bool noise,
                                   std::mt19937_64& rng);

  void enqueue(const Job& job, std::size_t machine, bool noise,
               std::mt19937_64& rng);

  // One tick of execution; work-conserving, at most one running job.
  std::optional<Completion> advance();

  bool busy() const { return running_.has_value() || !pending_.empty(); }
  std::size_t pending_count() const { return pending_.size(); }
  const std::deque<ExecItem>& pending() const { return pending_; }
  const std::optional<ExecItem>& running() const { return running_; }
  std::uint64_t completed() const { return completed_; }
  // Backlog in remaining ticks (running + pending); equals the EPT backlog
  // when noise is off.
  std::uint64_t remaining_work() const;

  // Remove the tail pending job (work-stealing victim side).
  ExecItem steal_tail();
  // Accept a stolen job with a re-derived remaining time (thief side).
  void push_stolen(ExecItem item);

 private:
  void promote();

  std::deque<ExecItem> pending_;
  std::optional<ExecItem> running_;
  std::uint64_t completed_ = 0;
};

}  // namespace sos
