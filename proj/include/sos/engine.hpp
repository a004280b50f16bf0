#pragma once
// Cycle-accurate behavioral model of the scheduling accelerator. Each
// hardware block has a direct software counterpart:
//   job metadata registers  -> VsEntry slots (JMM)
//   cost calculator / IJCC  -> MachineScheduler::compute_cost,
//                              individual_job_cost
//   cost comparator         -> select_machine
//   memory management unit  -> Mmu (free-address FIFO + id->slot LUT)
//   alpha check CAM         -> AlphaCam (tag = job id, content = counter)
//   virtual schedule manager-> vsm_insert / vsm_pop over an ordered id list
// The per-job sums that feed the assignment cost are maintained
// incrementally: sum_h starts at the job's EPT and drops by 1 per cycle of
// virtual work; sum_l starts at the job's weight and drops by its stored
// WSPT ratio. Both floor at zero.

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "sos/domain.hpp"
#include "sos/numerics.hpp"

namespace sos {

// One job metadata slot. id 0 marks the slot empty; every other field is
// then ignored by the cost logic.
struct VsEntry {
  std::uint32_t id = 0;  // hardware id (pool of M*N), not the trace id
  Fixed sum_h;           // EPT field format, integer
  Fixed sum_l;           // cost field format (shares the WSPT fractional split)
  Fixed wspt;            // stored priority ratio T_i
  Fixed weight;
  Fixed ept;
};

// Output of one individual-job-cost evaluation: the masked contributions of
// an occupied slot to the high/low halves of the assignment cost, the WSPT
// comparison bit, and the (possibly) head-updated slot contents.
struct IjccOutput {
  Fixed h_term;
  Fixed l_term;
  bool cmp = false;
  VsEntry updated;
};

// cmp is 1 iff the slot is occupied and its stored WSPT >= the new job's.
// h_term passes sum_h only for occupied slots with cmp = 1 (and a valid new
// job); l_term passes sum_l only for occupied slots with cmp = 0. The slot
// at the schedule head gets its sums decremented; everyone else is returned
// unchanged.
IjccOutput individual_job_cost(const VsEntry& entry, const Fixed& new_wspt,
                               bool new_id_valid, std::uint32_t head_id);

struct CostResult {
  Fixed cost;
  std::size_t insert_index = 0;  // popcount of the cmp bits
  Fixed wspt;
  bool full = false;  // virtual schedule at capacity; cost is the sentinel
};

// Lowest-cost machine, ties to the lowest index. Machines with a full
// virtual schedule are excluded regardless of their sentinel cost value (a
// saturated cost on a non-full machine must stay selectable). nullopt when
// every machine is full.
std::optional<std::size_t> select_machine(std::span<const CostResult> costs);

// Ordered-id-list updates mirroring the shift-register schedule manager:
// insert shifts entries at p..end one position deeper; pop shifts everyone
// one position toward the head.
void vsm_insert(std::vector<std::uint32_t>& vsm, std::size_t capacity,
                std::uint32_t id, std::size_t p);
std::uint32_t vsm_pop(std::vector<std::uint32_t>& vsm);

// Free-slot FIFO plus id -> slot lookup table.
class Mmu {
 public:
  explicit Mmu(std::size_t slots);

  std::size_t alloc(std::uint32_t id);    // pops the FIFO front, records id
  std::size_t release(std::uint32_t id);  // drops the LUT entry, requeues addr
  std::size_t lookup(std::uint32_t id) const;
  std::size_t free_count() const { return free_.size(); }

 private:
  std::deque<std::uint32_t> free_;
  std::unordered_map<std::uint32_t, std::uint32_t> lut_;
};

// Release-point counter, initialized to ceil(alpha * ept_i).
std::uint32_t alpha_init(double alpha, double ept_i);

struct AlphaCamEntry {
  std::uint32_t id = 0;
  std::uint32_t remaining = 0;
};

// Content-addressable counter store: tag = job id, content = remaining
// virtual-work cycles until release. Linear match over N entries, like the
// hardware it models.
class AlphaCam {
 public:
  explicit AlphaCam(std::size_t capacity) : entries_(capacity) {}

  void insert(std::uint32_t id, std::uint32_t counter);
  // Decrement the tagged counter by one; true when it reached zero.
  bool decrement(std::uint32_t id);
  std::uint32_t remaining(std::uint32_t id) const;
  void erase(std::uint32_t id);
  std::size_t size() const;

 private:
  std::vector<AlphaCamEntry> entries_;
};

// Everything one machine's scheduler slice owns: the ordered virtual
// schedule, the metadata slots, the release counters, and the MMU.
class MachineScheduler {
 public:
  MachineScheduler(std::size_t capacity, const NumericFormat& fmt);

  bool full() const { return vsm_.size() == capacity_; }
  bool empty() const { return vsm_.empty(); }
  std::uint32_t head() const { return vsm_.empty() ? 0 : vsm_.front(); }

  // Tick phase 1: one cycle of virtual work for the head job (sum and CAM
  // counter decrements). No-op on an empty schedule.
  void apply_virtual_work(std::uint64_t& slot_visits);

  // Tick phase 2: pop and free the head if its counter hit zero.
  std::optional<std::uint32_t> release_due();

  // Tick phase 3a: assignment cost for a candidate job (quantized weight,
  // EPT, and WSPT). Pure; evaluates every slot like the hardware does.
  CostResult compute_cost(const Fixed& weight_q, const Fixed& ept_q,
                          const Fixed& wspt_q, bool job_valid,
                          std::uint64_t& slot_visits) const;

  // Tick phase 3b: place an admitted job.
  void admit(std::uint32_t id, const VsEntry& entry, std::size_t index,
             std::uint32_t alpha_counter);

  const std::vector<std::uint32_t>& vsm() const { return vsm_; }
  const std::vector<VsEntry>& jmm() const { return jmm_; }
  const VsEntry* find(std::uint32_t id) const;
  const AlphaCam& cam() const { return cam_; }
  const Mmu& mmu() const { return mmu_; }

 private:
  std::size_t capacity_;
  NumericFormat fmt_;
  std::vector<std::uint32_t> vsm_;
  std::vector<VsEntry> jmm_;
  AlphaCam cam_;
  Mmu mmu_;
};

struct Assignment {
  Job job;
  std::size_t machine = 0;
  std::size_t insert_index = 0;
  std::uint64_t tick = 0;
};

struct Release {
  Job job;
  std::size_t machine = 0;
  std::uint64_t tick = 0;
};

struct TickResult {
  std::optional<Assignment> admitted;
  std::vector<Release> releases;
};

// The whole scheduler: M machine slices plus the input FIFO. One tick runs
// the deterministic phase sequence
//   update (virtual work) -> release -> admit (at most one job) -> advance,
// serializing what the hardware does in parallel; releasing before
// admitting lets a freed slot be reused in the same tick.
class Scheduler {
 public:
  Scheduler(std::vector<MachineProfile> machines, std::size_t vs_capacity,
            const NumericFormat& fmt, double alpha);

  TickResult tick(std::span<const Job> arrivals);

  std::uint64_t now() const { return tick_; }
  std::size_t machine_count() const { return machines_.size(); }
  std::size_t input_fifo_size() const { return input_fifo_.size(); }
  bool idle() const;  // no queued input and every schedule empty
  const MachineScheduler& machine(std::size_t i) const { return machines_[i]; }
  const NumericFormat& format() const { return fmt_; }
  double alpha_value() const { return alpha_q_.value(); }
  // Slot evaluations performed so far; the per-tick work measure.
  std::uint64_t slot_visits() const { return slot_visits_; }

 private:
  std::vector<MachineProfile> profiles_;
  std::vector<MachineScheduler> machines_;
  std::deque<Job> input_fifo_;
  NumericFormat fmt_;
  Fixed alpha_q_;
  std::uint64_t tick_ = 0;
  std::uint64_t slot_visits_ = 0;

  // Recycling hardware-id pool of size M*N with 0 reserved invalid.
  std::deque<std::uint32_t> id_pool_;
  std::unordered_map<std::uint32_t, Job> active_;  // hw id -> job
};

}  // namespace sos
