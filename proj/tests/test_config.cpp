#include <doctest.h>

#include "sos/config.hpp"

using namespace sos;

namespace {

const char* kMinimalConfig = R"({
  "workload": {
    "jc": [0.35, 0.35, 0.30],
    "total_jobs": 100,
    "seed": 42
  },
  "machines": [
    {"type": "cpu", "quality": "best"},
    {"type": "cpu", "quality": "worst"},
    {"type": "mixed", "quality": "best"},
    {"type": "gpu", "quality": "best"},
    {"type": "gpu", "quality": "worst"}
  ]
})";

}  // namespace

TEST_SUITE("config") {

TEST_CASE("minimal config parses with defaults") {
  const ExperimentConfig cfg = parse_experiment_config(kMinimalConfig);
  CHECK(cfg.workload.jc[0] == doctest::Approx(0.35));
  CHECK(cfg.workload.total_jobs == 100);
  CHECK(cfg.workload.seed == 42);
  CHECK(cfg.workload.mc.size() == 5);
  CHECK(cfg.workload.mc[3].mtype == MachineType::gpu);
  CHECK(cfg.precision == Scheme::fp32);
  CHECK(cfg.alpha == 0.5);
  CHECK(cfg.vs_capacity == 10);
  CHECK(cfg.policies == std::vector<Policy>{Policy::sos});
}

TEST_CASE("missing jc is reported by name") {
  const char* text = R"({"workload": {"total_jobs": 10}, "machines": []})";
  try {
    parse_experiment_config(text);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("jc") != std::string::npos);
  }
}

TEST_CASE("full config round trips through json") {
  ExperimentConfig cfg = parse_experiment_config(kMinimalConfig);
  cfg.policies = {Policy::sos, Policy::wsg};
  cfg.precision = Scheme::int8;
  cfg.alpha = 0.25;
  cfg.vs_capacity = 7;
  cfg.noise = true;
  cfg.workload.bf = 4;
  cfg.workload.bt = BurstType::random;
  const std::string text = experiment_config_to_json(cfg);
  const ExperimentConfig back = parse_experiment_config(text);
  CHECK(back.policies == cfg.policies);
  CHECK(back.precision == cfg.precision);
  CHECK(back.alpha == cfg.alpha);
  CHECK(back.vs_capacity == cfg.vs_capacity);
  CHECK(back.noise == cfg.noise);
  CHECK(back.workload.bf == 4);
  CHECK(back.workload.bt == BurstType::random);
}

TEST_CASE("invalid values are rejected") {
  CHECK_THROWS_AS(parse_experiment_config("not json"), ConfigError);
  CHECK_THROWS_AS(parse_experiment_config(R"({"workload": {}})"), ConfigError);

  ExperimentConfig cfg = parse_experiment_config(kMinimalConfig);
  cfg.alpha = 1.5;
  CHECK_THROWS_AS(parse_experiment_config(experiment_config_to_json(cfg)),
                  ConfigError);
}

TEST_CASE("affinity override") {
  std::string text = R"({
    "workload": {"jc": [1.0, 0.0, 0.0], "total_jobs": 10, "seed": 1,
                 "mc": [{"type": "cpu", "quality": "best"}]},
    "affinity": {"base": {"compute": {"cpu": 77}},
                 "quality_factor": {"worst": 8.0}}
  })";
  const ExperimentConfig cfg = parse_experiment_config(text);
  CHECK(cfg.workload.affinity.base[0][0] == 77);
  CHECK(cfg.workload.affinity.quality_factor[1] == 8.0);
  CHECK(cfg.workload.affinity.base[1][1] == 45);  // untouched default
}

TEST_CASE("wspt_frac_bits override applies to integer schemes only") {
  ExperimentConfig cfg = parse_experiment_config(kMinimalConfig);
  cfg.wspt_frac_bits = 4;
  CHECK(cfg.numeric_format(Scheme::int8).wspt_frac_bits == 4);
  CHECK(cfg.numeric_format(Scheme::fp32).wspt_frac_bits == 0);
  cfg.wspt_frac_bits = 9;
  CHECK_THROWS_AS(cfg.numeric_format(Scheme::int8), ConfigError);
}

}  // TEST_SUITE
