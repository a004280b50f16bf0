#pragma once
// Seeded synthetic job-stream generation. Natures follow a counting quota
// so published compositions are hit exactly; weights, EPT jitter, and burst
// shapes each draw from their own RNG stream.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sos/domain.hpp"

namespace sos {

enum class BurstType : std::uint8_t { random = 0, uniform = 1 };

BurstType burst_type_from_string(const std::string& s);
std::string to_string(BurstType b);

struct WorkloadConfig {
  std::array<double, 3> jc{0.35, 0.35, 0.30};  // compute, memory, mixed
  std::vector<MachineProfile> mc;              // machine composition
  std::uint32_t bf = 1;                        // max jobs per tick
  BurstType bt = BurstType::uniform;
  std::uint32_t it = 0;   // idle ticks inserted after each idle interval
  std::uint32_t ii = 10;  // jobs released before an idle period
  std::uint64_t total_jobs = 1000;
  std::uint64_t seed = 1;
  std::array<std::uint32_t, 2> weight_range{1, 20};
  AffinityTable affinity = AffinityTable::defaults();
};

// Every violated invariant, with a message; empty means the config is good.
std::vector<std::string> validate_config(const WorkloadConfig& config);
void require_valid(const WorkloadConfig& config);  // throws ConfigError

// Deterministic for a fixed seed. Jobs come out ordered by created_at with
// ids 1..total_jobs.
std::vector<Job> generate(const WorkloadConfig& config);

// JSON-lines trace: one job per line with id, created_at, nature, weight,
// ept.
void write_jobs_jsonl(const std::vector<Job>& jobs, std::ostream& os);
std::vector<Job> read_jobs_jsonl(std::istream& is);

}  // namespace sos
