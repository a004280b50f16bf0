#include "sos/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "sos/errors.hpp"

namespace sos::oracle {

void HeadHistory::add_tick(std::uint64_t tick) {
  if (!intervals_.empty() && intervals_.back().second == tick) {
    ++intervals_.back().second;
    return;
  }
  intervals_.push_back({tick, tick + 1});
}

double HeadHistory::measure_until(double t) const {
  double total = 0.0;
  for (const auto& [start, end] : intervals_) {
    const double s = static_cast<double>(start);
    const double e = static_cast<double>(end);
    if (s >= t) break;
    total += std::min(e, t) - s;
  }
  return total;
}

double HeadHistory::measure() const {
  double total = 0.0;
  for (const auto& [start, end] : intervals_) {
    total += static_cast<double>(end - start);
  }
  return total;
}

double iota_continuous(const HeadHistory& history, double k_ept_i, double t_j) {
  return 1.0 - history.measure_until(t_j) / k_ept_i;
}

double cost_continuous(double job_weight, double job_ept_i,
                       std::span<const ContendingJob> incumbents) {
  const double t_new = job_weight / job_ept_i;
  double high = 0.0;
  double low = 0.0;
  for (const ContendingJob& k : incumbents) {
    const double t_k = k.weight / k.ept_i;
    if (t_k >= t_new) {
      high += k.iota * k.ept_i;
    } else {
      low += k.weight * k.iota * job_ept_i;
    }
  }
  return job_weight * (job_ept_i + high) + low;
}

DiscreteSums naive_discrete_sums(double weight, double ept_i, double n_k) {
  return naive_discrete_sums(weight, ept_i, n_k, weight / ept_i);
}

DiscreteSums naive_discrete_sums(double weight, double ept_i, double n_k,
                                 double ratio) {
  DiscreteSums s;
  s.sum_h = std::max(ept_i - n_k, 0.0);
  s.sum_l = std::max(weight - n_k * ratio, 0.0);
  return s;
}

double cost_discrete_naive(double job_weight, double job_ept_i,
                           std::span<const NaiveIncumbent> incumbents) {
  const double t_new = job_weight / job_ept_i;
  double high = 0.0;
  double low = 0.0;
  for (const NaiveIncumbent& k : incumbents) {
    const DiscreteSums s = naive_discrete_sums(k.weight, k.ept_i, k.n_k);
    if (k.weight / k.ept_i >= t_new) {
      high += s.sum_h;
    } else {
      low += s.sum_l;
    }
  }
  return job_weight * (job_ept_i + high) + job_ept_i * low;
}

ReferenceScheduler::ReferenceScheduler(std::size_t machine_count,
                                       std::size_t vs_capacity, double alpha)
    : machine_count_(machine_count),
      vs_capacity_(vs_capacity),
      alpha_(alpha),
      machines_(machine_count) {}

bool ReferenceScheduler::idle() const {
  if (!input_fifo_.empty()) return false;
  return std::all_of(machines_.begin(), machines_.end(),
                     [](const MachineState& m) { return m.schedule.empty(); });
}

void ReferenceScheduler::tick(std::span<const Job> arrivals) {
  for (const Job& j : arrivals) input_fifo_.push_back(j);

  // Virtual work for every head.
  for (MachineState& m : machines_) {
    if (!m.schedule.empty()) m.schedule.front().history.add_tick(tick_);
  }

  // Releases.
  for (std::size_t i = 0; i < machines_.size(); ++i) {
    MachineState& m = machines_[i];
    if (m.schedule.empty()) continue;
    const Slot& head = m.schedule.front();
    if (head_ticks(head) >= head.release_at) {
      events_.push_back({tick_, true, head.job.id, i});
      m.schedule.erase(m.schedule.begin());
    }
  }

  // At most one admission, recomputing every sum from history.
  if (!input_fifo_.empty()) {
    const Job& job = input_fifo_.front();
    double best_cost = 0.0;
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < machines_.size(); ++i) {
      const MachineState& m = machines_[i];
      if (m.schedule.size() >= vs_capacity_) continue;
      const double ept_i = job.ept[i];
      const double t_new = job.weight / ept_i;
      double high = 0.0;
      double low = 0.0;
      for (const Slot& k : m.schedule) {
        const DiscreteSums s =
            naive_discrete_sums(k.job.weight, k.ept, head_ticks(k), k.ratio);
        if (k.ratio >= t_new) {
          high += s.sum_h;
        } else {
          low += s.sum_l;
        }
      }
      const double cost = job.weight * (ept_i + high) + ept_i * low;
      if (!best || cost < best_cost) {
        best = i;
        best_cost = cost;
      }
    }
    if (best) {
      const std::size_t i = *best;
      MachineState& m = machines_[i];
      const double ept_i = job.ept[i];
      const double t_new = job.weight / ept_i;
      // Insertion index: number of incumbents with ratio >= the new job's,
      // so ties keep the earlier arrival closer to the head.
      std::size_t p = 0;
      for (const Slot& k : m.schedule) p += k.ratio >= t_new;

      Slot slot;
      slot.job = job;
      slot.ept = ept_i;
      slot.ratio = t_new;
      slot.release_at = alpha_init(alpha_, ept_i);
      m.schedule.insert(m.schedule.begin() + static_cast<std::ptrdiff_t>(p),
                        std::move(slot));
      events_.push_back({tick_, false, job.id, i});
      input_fifo_.pop_front();
    }
  }

  ++tick_;
}

std::vector<RefEvent> reference_schedule(std::span<const Job> jobs,
                                         std::size_t machine_count,
                                         std::size_t vs_capacity, double alpha,
                                         std::uint64_t max_ticks) {
  ReferenceScheduler ref(machine_count, vs_capacity, alpha);
  if (max_ticks == 0) max_ticks = 1000000;
  std::size_t next = 0;
  while (next < jobs.size() || !ref.idle()) {
    if (ref.now() > max_ticks) {
      throw InvariantError("reference_schedule: exceeded max ticks");
    }
    std::vector<Job> arrivals;
    while (next < jobs.size() && jobs[next].created_at == ref.now()) {
      arrivals.push_back(jobs[next]);
      ++next;
    }
    ref.tick(arrivals);
  }
  return ref.events();
}

}  // namespace sos::oracle
