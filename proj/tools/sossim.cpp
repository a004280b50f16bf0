// Command-line front end: workload generation, policy runs, the precision
// study, and Monte-Carlo experiments.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sos/commands.hpp"
#include "sos/errors.hpp"

namespace {

sos::CliOverrides make_overrides(const std::vector<std::string>& policies,
                                 const std::string& precision,
                                 std::int64_t seed, bool noise) {
  sos::CliOverrides o;
  if (!policies.empty()) {
    std::vector<sos::Policy> parsed;
    parsed.reserve(policies.size());
    for (const auto& p : policies) parsed.push_back(sos::policy_from_string(p));
    o.policies = std::move(parsed);
  }
  if (!precision.empty()) o.precision = sos::scheme_from_string(precision);
  if (seed >= 0) o.seed = static_cast<std::uint64_t>(seed);
  if (noise) o.noise = true;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic online scheduling simulator"};
  app.require_subcommand(1);

  std::string config_path, trace_path, out_path;
  std::vector<std::string> policies;
  std::string precision;
  std::int64_t seed = -1;
  std::uint64_t draws = 50;
  bool noise = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "experiment config (JSON)")
        ->required();
    cmd->add_option("--policy", policies, "override the policy list");
    cmd->add_option("--precision", precision,
                    "override precision: int4|int8|mixed|fp16|fp32");
    cmd->add_option("--seed", seed, "override the workload seed");
    cmd->add_flag("--noise", noise, "enable execution-time noise");
  };

  CLI::App* gen = app.add_subcommand("gen", "generate a workload trace");
  add_common(gen);
  gen->add_option("--out", out_path, "output trace file (JSON lines)")
      ->required();

  CLI::App* run = app.add_subcommand("run", "run policies over a trace");
  add_common(run);
  run->add_option("--trace", trace_path, "input trace (JSON lines)")
      ->required();
  run->add_option("--out", out_path, "output directory")->required();

  CLI::App* quant =
      app.add_subcommand("quantstudy", "compare precision schemes");
  add_common(quant);
  quant->add_option("--out", out_path, "output directory")->required();
  quant->add_option("--draws", draws, "number of workload draws");

  CLI::App* mc =
      app.add_subcommand("montecarlo", "Monte-Carlo workload experiments");
  add_common(mc);
  mc->add_option("--out", out_path, "output directory")->required();
  mc->add_option("--draws", draws, "number of workload draws");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    const sos::CliOverrides overrides =
        make_overrides(policies, precision, seed, noise);
    if (gen->parsed()) {
      sos::cmd_gen(config_path, out_path, overrides);
    } else if (run->parsed()) {
      sos::cmd_run(config_path, trace_path, out_path, overrides);
    } else if (quant->parsed()) {
      sos::cmd_quantstudy(config_path, out_path, draws, overrides);
    } else if (mc->parsed()) {
      sos::cmd_montecarlo(config_path, out_path, draws, overrides);
    }
  } catch (const sos::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const sos::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
