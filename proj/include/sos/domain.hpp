#pragma once
// Jobs, machines, and the WSPT priority ratio.

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sos/numerics.hpp"

namespace sos {

enum class MachineType : std::uint8_t { cpu = 0, gpu = 1, mixed = 2 };
enum class Quality : std::uint8_t { best = 0, worst = 1 };
enum class JobNature : std::uint8_t { compute = 0, memory = 1, mixed = 2 };

struct MachineProfile {
  MachineType mtype = MachineType::cpu;
  Quality quality = Quality::best;
  std::uint32_t index = 0;
};

// Generator floor on expected processing times.
constexpr std::uint32_t kMinEpt = 10;

// A unit of schedulable work. `ept` holds one expected processing time per
// machine; `id` is the unbounded trace-level identity (0 means "no job").
struct Job {
  std::uint32_t id = 0;
  std::uint64_t created_at = 0;
  JobNature nature = JobNature::compute;
  std::uint32_t weight = 1;
  std::vector<std::uint32_t> ept;
};

// Base EPT per (job nature x machine type), scaled by a per-quality factor
// and +/-10% jitter. The defaults encode task/PE affinity with WORST units
// 4x slower than BEST; all of it is overridable from the experiment config.
struct AffinityTable {
  std::array<std::array<std::uint32_t, 3>, 3> base{};  // [nature][mtype]
  std::array<double, 2> quality_factor{1.0, 4.0};      // [quality]

  static AffinityTable defaults();
};

// The five stock machine configurations:
// <CPU,Best>, <CPU,Worst>, <Mixed,Best>, <GPU,Best>, <GPU,Worst>.
std::vector<MachineProfile> default_machines();

// W / ept_i quantized into the scheme's WSPT field. Computed once per
// (job, machine) at creation and stored; never recomputed per cycle.
Fixed wspt(std::uint32_t weight, std::uint32_t ept_i, const NumericFormat& fmt);

// Deterministic core of the EPT model; jitter in [0.9, 1.1].
std::uint32_t ept_with_jitter(JobNature nature, const MachineProfile& m,
                              const AffinityTable& table, double jitter);

std::uint32_t ept_model(JobNature nature, const MachineProfile& m,
                        const AffinityTable& table, std::mt19937_64& jitter_rng);

MachineType machine_type_from_string(const std::string& s);
Quality quality_from_string(const std::string& s);
JobNature nature_from_string(const std::string& s);
std::string to_string(MachineType t);
std::string to_string(Quality q);
std::string to_string(JobNature n);

}  // namespace sos
