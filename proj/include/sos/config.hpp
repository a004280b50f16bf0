#pragma once
// Experiment configuration: one JSON document driving generation,
// simulation, and the studies.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sos/baselines.hpp"
#include "sos/numerics.hpp"
#include "sos/workload.hpp"

namespace sos {

struct ExperimentConfig {
  WorkloadConfig workload;
  std::vector<Policy> policies{Policy::sos};
  Scheme precision = Scheme::fp32;
  double alpha = 0.5;
  std::size_t vs_capacity = 10;
  bool noise = false;
  std::uint64_t cv_interval = 100;
  std::vector<double> checkpoints{0.1, 0.2, 0.3, 0.4, 0.5,
                                  0.6, 0.7, 0.8, 0.9, 1.0};
  // Optional override of the fixed-point WSPT split for integer schemes.
  std::optional<std::uint8_t> wspt_frac_bits;

  // Monte-Carlo parameter ranges (inclusive).
  std::array<std::uint32_t, 2> mc_bf{1, 5};
  std::array<std::uint32_t, 2> mc_it{0, 10};
  std::array<std::uint32_t, 2> mc_ii{5, 50};

  NumericFormat numeric_format() const;
  NumericFormat numeric_format(Scheme scheme) const;
};

// Parse / serialize. Required keys: "workload" with "jc" and "total_jobs",
// and a machine list (either workload "mc" or top-level "machines").
// Everything else falls back to the defaults above.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);
std::string experiment_config_to_json(const ExperimentConfig& config);

}  // namespace sos
