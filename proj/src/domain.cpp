#include "sos/domain.hpp"

#include <cmath>

#include "sos/rng.hpp"

namespace sos {

AffinityTable AffinityTable::defaults() {
  AffinityTable t;
  // [nature][mtype], mtype order: cpu, gpu, mixed.
  t.base[static_cast<int>(JobNature::compute)] = {40, 15, 25};
  t.base[static_cast<int>(JobNature::memory)] = {20, 45, 25};
  t.base[static_cast<int>(JobNature::mixed)] = {30, 30, 20};
  t.quality_factor = {1.0, 4.0};
  return t;
}

std::vector<MachineProfile> default_machines() {
  return {
      {MachineType::cpu, Quality::best, 0},
      {MachineType::cpu, Quality::worst, 1},
      {MachineType::mixed, Quality::best, 2},
      {MachineType::gpu, Quality::best, 3},
      {MachineType::gpu, Quality::worst, 4},
  };
}

Fixed wspt(std::uint32_t weight, std::uint32_t ept_i, const NumericFormat& fmt) {
  return quantize(static_cast<double>(weight) / static_cast<double>(ept_i),
                  fmt, Field::wspt);
}

std::uint32_t ept_with_jitter(JobNature nature, const MachineProfile& m,
                              const AffinityTable& table, double jitter) {
  const double base = table.base[static_cast<int>(nature)][static_cast<int>(m.mtype)];
  const double factor = table.quality_factor[static_cast<int>(m.quality)];
  const auto ept = static_cast<std::uint32_t>(std::llround(base * factor * jitter));
  return ept < kMinEpt ? kMinEpt : ept;
}

std::uint32_t ept_model(JobNature nature, const MachineProfile& m,
                        const AffinityTable& table, std::mt19937_64& jitter_rng) {
  return ept_with_jitter(nature, m, table, uniform_real(jitter_rng, 0.9, 1.1));
}

MachineType machine_type_from_string(const std::string& s) {
  if (s == "cpu") return MachineType::cpu;
  if (s == "gpu") return MachineType::gpu;
  if (s == "mixed") return MachineType::mixed;
  throw ConfigError("unknown machine type: " + s);
}

Quality quality_from_string(const std::string& s) {
  if (s == "best") return Quality::best;
  if (s == "worst") return Quality::worst;
  throw ConfigError("unknown machine quality: " + s);
}

JobNature nature_from_string(const std::string& s) {
  if (s == "compute") return JobNature::compute;
  if (s == "memory") return JobNature::memory;
  if (s == "mixed") return JobNature::mixed;
  throw ConfigError("unknown job nature: " + s);
}

std::string to_string(MachineType t) {
  switch (t) {
    case MachineType::cpu: return "cpu";
    case MachineType::gpu: return "gpu";
    case MachineType::mixed: return "mixed";
  }
  return "?";
}

std::string to_string(Quality q) {
  return q == Quality::best ? "best" : "worst";
}

std::string to_string(JobNature n) {
  switch (n) {
    case JobNature::compute: return "compute";
    case JobNature::memory: return "memory";
    case JobNature::mixed: return "mixed";
  }
  return "?";
}

}  // namespace sos
