#include "sos/engine.hpp"

#include <algorithm>
#include <cmath>

#include "sos/errors.hpp"

namespace sos {

IjccOutput individual_job_cost(const VsEntry& entry, const Fixed& new_wspt,
                               bool new_id_valid, std::uint32_t head_id) {
  IjccOutput out;
  const bool occupied = entry.id != 0;
  out.cmp = occupied && entry.wspt.value() >= new_wspt.value();

  const FieldFormat h_fmt = entry.sum_h.format();
  const FieldFormat l_fmt = entry.sum_l.format();
  out.h_term = (occupied && new_id_valid && out.cmp) ? entry.sum_h
                                                     : Fixed::zero(h_fmt);
  out.l_term = (occupied && new_id_valid && !out.cmp) ? entry.sum_l
                                                      : Fixed::zero(l_fmt);

  out.updated = entry;
  if (occupied && entry.id == head_id) {
    // One cycle of virtual work: sum_h drops by 1, sum_l by the stored WSPT.
    out.updated.sum_h =
        saturating_sub(entry.sum_h, Fixed::encode(1.0, h_fmt));
    out.updated.sum_l =
        saturating_sub(entry.sum_l, widen(entry.wspt, l_fmt.total_bits));
  }
  return out;
}

std::optional<std::size_t> select_machine(std::span<const CostResult> costs) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < costs.size(); ++i) {
    if (costs[i].full) continue;
    if (!best || costs[i].cost.value() < costs[*best].cost.value()) best = i;
  }
  return best;
}

void vsm_insert(std::vector<std::uint32_t>& vsm, std::size_t capacity,
                std::uint32_t id, std::size_t p) {
  if (vsm.size() >= capacity) throw InvariantError("vsm_insert: schedule full");
  if (p > vsm.size()) throw InvariantError("vsm_insert: index out of range");
  vsm.insert(vsm.begin() + static_cast<std::ptrdiff_t>(p), id);
}

std::uint32_t vsm_pop(std::vector<std::uint32_t>& vsm) {
  if (vsm.empty()) throw InvariantError("vsm_pop: schedule empty");
  const std::uint32_t head = vsm.front();
  vsm.erase(vsm.begin());
  return head;
}

Mmu::Mmu(std::size_t slots) {
  for (std::size_t a = 0; a < slots; ++a) {
    free_.push_back(static_cast<std::uint32_t>(a));
  }
}

std::size_t Mmu::alloc(std::uint32_t id) {
  if (free_.empty()) throw InvariantError("mmu: no free metadata slots");
  const std::uint32_t addr = free_.front();
  free_.pop_front();
  lut_.emplace(id, addr);
  return addr;
}

std::size_t Mmu::release(std::uint32_t id) {
  const auto it = lut_.find(id);
  if (it == lut_.end()) throw InvariantError("mmu: releasing unknown id");
  const std::uint32_t addr = it->second;
  lut_.erase(it);
  free_.push_back(addr);
  return addr;
}

std::size_t Mmu::lookup(std::uint32_t id) const {
  const auto it = lut_.find(id);
  if (it == lut_.end()) throw InvariantError("mmu: unknown id");
  return it->second;
}

std::uint32_t alpha_init(double alpha, double ept_i) {
  // ceil guarantees at least one cycle of virtual work, and keeps
  // "released at or before sum exhaustion" true.
  return static_cast<std::uint32_t>(std::ceil(alpha * ept_i));
}

void AlphaCam::insert(std::uint32_t id, std::uint32_t counter) {
  for (AlphaCamEntry& e : entries_) {
    if (e.id == 0) {
      e = {id, counter};
      return;
    }
  }
  throw InvariantError("alpha cam: no free entry");
}

bool AlphaCam::decrement(std::uint32_t id) {
  for (AlphaCamEntry& e : entries_) {
    if (e.id == id) {
      if (e.remaining > 0) --e.remaining;
      return e.remaining == 0;
    }
  }
  throw InvariantError("alpha cam: decrement of unknown id");
}

std::uint32_t AlphaCam::remaining(std::uint32_t id) const {
  for (const AlphaCamEntry& e : entries_) {
    if (e.id == id) return e.remaining;
  }
  throw InvariantError("alpha cam: unknown id");
}

void AlphaCam::erase(std::uint32_t id) {
  for (AlphaCamEntry& e : entries_) {
    if (e.id == id) {
      e = {};
      return;
    }
  }
  throw InvariantError("alpha cam: erase of unknown id");
}

std::size_t AlphaCam::size() const {
  std::size_t n = 0;
  for (const AlphaCamEntry& e : entries_) n += e.id != 0;
  return n;
}

MachineScheduler::MachineScheduler(std::size_t capacity,
                                   const NumericFormat& fmt)
    : capacity_(capacity),
      fmt_(fmt),
      jmm_(capacity),
      cam_(capacity),
      mmu_(capacity) {
  vsm_.reserve(capacity);
}

void MachineScheduler::apply_virtual_work(std::uint64_t& slot_visits) {
  if (vsm_.empty()) return;
  const std::uint32_t head_id = vsm_.front();
  VsEntry& slot = jmm_[mmu_.lookup(head_id)];
  slot = individual_job_cost(slot, slot.wspt, false, head_id).updated;
  cam_.decrement(head_id);
  ++slot_visits;
}

std::optional<std::uint32_t> MachineScheduler::release_due() {
  if (vsm_.empty()) return std::nullopt;
  const std::uint32_t head_id = vsm_.front();
  if (cam_.remaining(head_id) != 0) return std::nullopt;
  vsm_pop(vsm_);
  cam_.erase(head_id);
  jmm_[mmu_.release(head_id)] = VsEntry{};
  return head_id;
}

CostResult MachineScheduler::compute_cost(const Fixed& weight_q,
                                          const Fixed& ept_q,
                                          const Fixed& wspt_q, bool job_valid,
                                          std::uint64_t& slot_visits) const {
  CostResult result;
  result.wspt = wspt_q;
  if (full()) {
    result.full = true;
    result.cost = fmt_.cost_sentinel();
    return result;
  }

  const FieldFormat cost_fmt = fmt_.field_format(Field::cost);
  if (cost_fmt.repr == Repr::fixedpoint) {
    // Tree-adder accumulation in raw space, then one saturating narrowing
    // into the cost field. h terms carry 0 fractional bits, l terms (and
    // the final cost) carry the WSPT fractional split.
    std::uint64_t h_sum = 0;
    std::uint64_t l_sum = 0;
    for (const VsEntry& slot : jmm_) {
      const IjccOutput o = individual_job_cost(slot, wspt_q, job_valid, 0);
      h_sum += o.h_term.raw();
      l_sum += o.l_term.raw();
      result.insert_index += o.cmp;
      ++slot_visits;
    }
    const std::uint64_t h_raw =
        (weight_q.raw() * (ept_q.raw() + h_sum)) << cost_fmt.frac_bits;
    const std::uint64_t l_raw = ept_q.raw() * l_sum;
    const std::uint64_t raw = h_raw + l_raw;
    result.cost = Fixed::from_raw(std::min(raw, cost_fmt.max_raw()), cost_fmt);
  } else {
    double h_sum = 0.0;
    double l_sum = 0.0;
    for (const VsEntry& slot : jmm_) {
      const IjccOutput o = individual_job_cost(slot, wspt_q, job_valid, 0);
      h_sum += o.h_term.value();
      l_sum += o.l_term.value();
      result.insert_index += o.cmp;
      ++slot_visits;
    }
    const double cost =
        weight_q.value() * (ept_q.value() + h_sum) + ept_q.value() * l_sum;
    result.cost = Fixed::encode(std::min(cost, cost_fmt.max_value()), cost_fmt);
  }
  return result;
}

void MachineScheduler::admit(std::uint32_t id, const VsEntry& entry,
                             std::size_t index, std::uint32_t alpha_counter) {
  vsm_insert(vsm_, capacity_, id, index);
  jmm_[mmu_.alloc(id)] = entry;
  cam_.insert(id, alpha_counter);
}

const VsEntry* MachineScheduler::find(std::uint32_t id) const {
  for (const VsEntry& slot : jmm_) {
    if (slot.id == id) return &slot;
  }
  return nullptr;
}

Scheduler::Scheduler(std::vector<MachineProfile> machines,
                     std::size_t vs_capacity, const NumericFormat& fmt,
                     double alpha)
    : profiles_(std::move(machines)), fmt_(fmt) {
  if (profiles_.empty()) throw InvariantError("scheduler: no machines");
  if (vs_capacity == 0) throw InvariantError("scheduler: capacity must be >= 1");
  machines_.reserve(profiles_.size());
  for (std::size_t i = 0; i < profiles_.size(); ++i) {
    machines_.emplace_back(vs_capacity, fmt_);
  }
  alpha_q_ = quantize(alpha, fmt_, Field::alpha);
  const std::size_t pool = profiles_.size() * vs_capacity;
  for (std::size_t i = 1; i <= pool; ++i) {
    id_pool_.push_back(static_cast<std::uint32_t>(i));
  }
}

bool Scheduler::idle() const {
  if (!input_fifo_.empty()) return false;
  return std::all_of(machines_.begin(), machines_.end(),
                     [](const MachineScheduler& m) { return m.empty(); });
}

TickResult Scheduler::tick(std::span<const Job> arrivals) {
  TickResult result;
  for (const Job& j : arrivals) input_fifo_.push_back(j);

  // Phase 1: every nonempty machine performs one cycle of virtual work on
  // its head job.
  for (MachineScheduler& m : machines_) m.apply_virtual_work(slot_visits_);

  // Phase 2: heads whose release counter hit zero leave the virtual
  // schedule; their slots free up before this tick's admission.
  for (std::size_t i = 0; i < machines_.size(); ++i) {
    if (const auto hw = machines_[i].release_due()) {
      const auto it = active_.find(*hw);
      if (it == active_.end()) throw InvariantError("engine: released unknown id");
      result.releases.push_back({it->second, i, tick_});
      active_.erase(it);
      id_pool_.push_back(*hw);
    }
  }

  // Phase 3: admit at most one job per tick from the input FIFO head. If
  // every machine is full the job stays put and retries next tick.
  if (!input_fifo_.empty()) {
    const Job& job = input_fifo_.front();
    const Fixed weight_q = quantize(job.weight, fmt_, Field::weight);
    std::vector<CostResult> costs;
    costs.reserve(machines_.size());
    std::vector<Fixed> epts_q;
    epts_q.reserve(machines_.size());
    for (std::size_t i = 0; i < machines_.size(); ++i) {
      epts_q.push_back(quantize(job.ept[i], fmt_, Field::ept));
      const Fixed wspt_q = wspt(job.weight, job.ept[i], fmt_);
      costs.push_back(machines_[i].compute_cost(weight_q, epts_q[i], wspt_q,
                                                job.id != 0, slot_visits_));
    }
    if (const auto chosen = select_machine(costs)) {
      const std::size_t i = *chosen;
      if (id_pool_.empty()) throw InvariantError("engine: id pool exhausted");
      const std::uint32_t hw = id_pool_.front();
      id_pool_.pop_front();

      VsEntry entry;
      entry.id = hw;
      entry.weight = weight_q;
      entry.ept = epts_q[i];
      entry.wspt = costs[i].wspt;
      entry.sum_h = epts_q[i];
      entry.sum_l =
          Fixed::encode(weight_q.value(), fmt_.field_format(Field::cost));
      const std::uint32_t counter =
          alpha_init(alpha_q_.value(), epts_q[i].value());
      machines_[i].admit(hw, entry, costs[i].insert_index, counter);

      active_.emplace(hw, job);
      result.admitted = Assignment{job, i, costs[i].insert_index, tick_};
      input_fifo_.pop_front();
    }
  }

  ++tick_;
  return result;
}

}  // namespace sos
