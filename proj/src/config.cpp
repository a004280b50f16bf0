#include "sos/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sos/errors.hpp"

namespace sos {

using nlohmann::json;

NumericFormat ExperimentConfig::numeric_format() const {
  return numeric_format(precision);
}

NumericFormat ExperimentConfig::numeric_format(Scheme scheme) const {
  NumericFormat fmt = NumericFormat::make(scheme);
  if (wspt_frac_bits && !fmt.is_float()) {
    if (*wspt_frac_bits >= fmt.wspt_bits) {
      throw ConfigError("wspt_frac_bits must be smaller than the WSPT width");
    }
    fmt.wspt_frac_bits = *wspt_frac_bits;
  }
  return fmt;
}

namespace {

MachineProfile parse_machine(const json& j, std::uint32_t index) {
  MachineProfile m;
  m.mtype = machine_type_from_string(j.at("type").get<std::string>());
  m.quality = quality_from_string(j.at("quality").get<std::string>());
  m.index = index;
  return m;
}

std::vector<MachineProfile> parse_machines(const json& arr) {
  std::vector<MachineProfile> machines;
  std::uint32_t index = 0;
  for (const json& j : arr) machines.push_back(parse_machine(j, index++));
  return machines;
}

AffinityTable parse_affinity(const json& j) {
  AffinityTable t = AffinityTable::defaults();
  static constexpr const char* natures[3] = {"compute", "memory", "mixed"};
  static constexpr const char* mtypes[3] = {"cpu", "gpu", "mixed"};
  if (j.contains("base")) {
    for (int n = 0; n < 3; ++n) {
      if (!j["base"].contains(natures[n])) continue;
      const json& row = j["base"][natures[n]];
      for (int m = 0; m < 3; ++m) {
        if (row.contains(mtypes[m])) t.base[n][m] = row[mtypes[m]].get<std::uint32_t>();
      }
    }
  }
  if (j.contains("quality_factor")) {
    t.quality_factor[0] = j["quality_factor"].value("best", t.quality_factor[0]);
    t.quality_factor[1] = j["quality_factor"].value("worst", t.quality_factor[1]);
  }
  return t;
}

template <typename T, std::size_t N>
std::array<T, N> parse_array(const json& j, const char* key) {
  const auto vec = j.get<std::vector<T>>();
  if (vec.size() != N) {
    throw ConfigError(std::string(key) + ": expected " + std::to_string(N) +
                      " entries");
  }
  std::array<T, N> out{};
  std::copy(vec.begin(), vec.end(), out.begin());
  return out;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }

  ExperimentConfig cfg;
  try {
    if (!root.contains("workload")) {
      throw ConfigError("config: missing required key \"workload\"");
    }
    const json& w = root["workload"];
    WorkloadConfig& wl = cfg.workload;
    if (!w.contains("jc")) {
      throw ConfigError("config: missing required key \"workload.jc\"");
    }
    wl.jc = parse_array<double, 3>(w["jc"], "workload.jc");
    if (!w.contains("total_jobs")) {
      throw ConfigError("config: missing required key \"workload.total_jobs\"");
    }
    wl.total_jobs = w["total_jobs"].get<std::uint64_t>();
    wl.bf = w.value("bf", wl.bf);
    if (w.contains("bt")) {
      wl.bt = burst_type_from_string(w["bt"].get<std::string>());
    }
    wl.it = w.value("it", wl.it);
    wl.ii = w.value("ii", wl.ii);
    wl.seed = w.value("seed", wl.seed);
    if (w.contains("weight_range")) {
      wl.weight_range =
          parse_array<std::uint32_t, 2>(w["weight_range"], "weight_range");
    }

    // Machine composition: workload "mc" is canonical, top-level "machines"
    // is an accepted alias; one of them must exist.
    if (w.contains("mc")) {
      wl.mc = parse_machines(w["mc"]);
    } else if (root.contains("machines")) {
      wl.mc = parse_machines(root["machines"]);
    } else {
      throw ConfigError(
          "config: missing machine list (\"workload.mc\" or \"machines\")");
    }
    if (root.contains("machines") && w.contains("mc") &&
        root["machines"].size() != w["mc"].size()) {
      throw ConfigError("config: \"machines\" and \"workload.mc\" disagree");
    }

    if (root.contains("affinity")) {
      wl.affinity = parse_affinity(root["affinity"]);
    }

    if (root.contains("policies")) {
      cfg.policies.clear();
      for (const json& p : root["policies"]) {
        cfg.policies.push_back(policy_from_string(p.get<std::string>()));
      }
      if (cfg.policies.empty()) throw ConfigError("config: empty policy list");
    }
    if (root.contains("precision")) {
      cfg.precision = scheme_from_string(root["precision"].get<std::string>());
    }
    cfg.alpha = root.value("alpha", cfg.alpha);
    if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) {
      throw ConfigError("config: alpha must be in (0, 1]");
    }
    cfg.vs_capacity = root.value("vs_capacity", cfg.vs_capacity);
    if (cfg.vs_capacity < 1) throw ConfigError("config: vs_capacity must be >= 1");
    cfg.noise = root.value("noise", cfg.noise);
    cfg.cv_interval = root.value("cv_interval", cfg.cv_interval);
    if (cfg.cv_interval < 1) throw ConfigError("config: cv_interval must be >= 1");
    if (root.contains("checkpoints")) {
      cfg.checkpoints = root["checkpoints"].get<std::vector<double>>();
      for (double c : cfg.checkpoints) {
        if (!(c > 0.0 && c <= 1.0)) {
          throw ConfigError("config: checkpoints must lie in (0, 1]");
        }
      }
    }
    if (root.contains("wspt_frac_bits")) {
      cfg.wspt_frac_bits = root["wspt_frac_bits"].get<std::uint8_t>();
    }
    if (root.contains("mc")) {
      const json& mc = root["mc"];
      if (mc.contains("bf")) cfg.mc_bf = parse_array<std::uint32_t, 2>(mc["bf"], "mc.bf");
      if (mc.contains("it")) cfg.mc_it = parse_array<std::uint32_t, 2>(mc["it"], "mc.it");
      if (mc.contains("ii")) cfg.mc_ii = parse_array<std::uint32_t, 2>(mc["ii"], "mc.ii");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  require_valid(cfg.workload);
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment_config(buffer.str());
}

std::string experiment_config_to_json(const ExperimentConfig& cfg) {
  json root;
  json w;
  w["jc"] = cfg.workload.jc;
  w["bf"] = cfg.workload.bf;
  w["bt"] = to_string(cfg.workload.bt);
  w["it"] = cfg.workload.it;
  w["ii"] = cfg.workload.ii;
  w["total_jobs"] = cfg.workload.total_jobs;
  w["seed"] = cfg.workload.seed;
  w["weight_range"] = cfg.workload.weight_range;
  json machines = json::array();
  for (const MachineProfile& m : cfg.workload.mc) {
    machines.push_back({{"type", to_string(m.mtype)},
                        {"quality", to_string(m.quality)}});
  }
  w["mc"] = machines;
  root["workload"] = w;
  json policies = json::array();
  for (Policy p : cfg.policies) policies.push_back(to_string(p));
  root["policies"] = policies;
  root["precision"] = to_string(cfg.precision);
  root["alpha"] = cfg.alpha;
  root["vs_capacity"] = cfg.vs_capacity;
  root["noise"] = cfg.noise;
  root["cv_interval"] = cfg.cv_interval;
  root["checkpoints"] = cfg.checkpoints;
  if (cfg.wspt_frac_bits) root["wspt_frac_bits"] = *cfg.wspt_frac_bits;
  root["mc"] = {{"bf", cfg.mc_bf}, {"it", cfg.mc_it}, {"ii", cfg.mc_ii}};
  return root.dump(2);
}

}  // namespace sos
