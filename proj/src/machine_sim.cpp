#include "sos/machine_sim.hpp"

#include <cmath>

#include "sos/errors.hpp"
#include "sos/rng.hpp"

namespace sos {

std::uint32_t ExecQueue::actual_time(std::uint32_t ept, bool noise,
                                     std::mt19937_64& rng) {
  if (!noise) return ept;
  const double scaled = std::llround(ept * uniform_real(rng, 0.8, 1.2));
  return scaled < 1.0 ? 1u : static_cast<std::uint32_t>(scaled);
}

void ExecQueue::enqueue(const Job& job, std::size_t machine, bool noise,
                        std::mt19937_64& rng) {
  pending_.push_back({job.id, actual_time(job.ept[machine], noise, rng)});
  promote();
}

void ExecQueue::promote() {
  if (!running_ && !pending_.empty()) {
    running_ = pending_.front();
    pending_.pop_front();
  }
}

std::optional<Completion> ExecQueue::advance() {
  promote();
  if (!running_) return std::nullopt;
  if (--running_->remaining == 0) {
    const Completion done{running_->job_id};
    running_.reset();
    ++completed_;
    promote();
    return done;
  }
  return std::nullopt;
}

std::uint64_t ExecQueue::remaining_work() const {
  std::uint64_t total = running_ ? running_->remaining : 0;
  for (const ExecItem& item : pending_) total += item.remaining;
  return total;
}

ExecItem ExecQueue::steal_tail() {
  if (pending_.empty()) throw InvariantError("exec queue: nothing to steal");
  ExecItem item = pending_.back();
  pending_.pop_back();
  return item;
}

void ExecQueue::push_stolen(ExecItem item) {
  pending_.push_back(item);
  promote();
}

}  // namespace sos
