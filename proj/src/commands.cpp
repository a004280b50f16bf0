#include "sos/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "sos/config.hpp"
#include "sos/errors.hpp"
#include "sos/experiments.hpp"
#include "sos/simulation.hpp"

namespace sos {

namespace {

ExperimentConfig load_with_overrides(const std::string& path,
                                     const CliOverrides& o) {
  ExperimentConfig cfg = load_experiment_config(path);
  if (o.policies) cfg.policies = *o.policies;
  if (o.precision) cfg.precision = *o.precision;
  if (o.seed) cfg.workload.seed = *o.seed;
  if (o.noise) cfg.noise = *o.noise;
  return cfg;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file: " + path.string());
  return out;
}

std::filesystem::path ensure_dir(const std::string& dir) {
  std::filesystem::path p(dir);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) throw IoError("cannot create output directory: " + dir);
  return p;
}

std::vector<Job> load_jobs(const std::string& trace_path,
                           std::size_t machine_count) {
  std::ifstream in(trace_path);
  if (!in) throw IoError("cannot open trace file: " + trace_path);
  std::vector<Job> jobs = read_jobs_jsonl(in);
  if (jobs.empty()) throw IoError("trace file has no jobs: " + trace_path);
  if (jobs.front().ept.size() != machine_count) {
    throw ConfigError("trace machine count (" +
                      std::to_string(jobs.front().ept.size()) +
                      ") does not match config (" +
                      std::to_string(machine_count) + ")");
  }
  return jobs;
}

void write_metrics_csv(std::ostream& os, const std::vector<RunMetrics>& runs) {
  os << "run_id,policy,machine,jobs,avg_latency,cv,throughput\n";
  for (const RunMetrics& r : runs) {
    for (std::size_t m = 0; m < r.jobs_per_machine.size(); ++m) {
      os << r.run_id << ',' << to_string(r.policy) << ',' << m << ','
         << r.jobs_per_machine[m] << ',' << r.latency_per_machine[m] << ','
         << r.cv << ',' << r.throughput << '\n';
    }
  }
}

void write_heatmap_csv(std::ostream& os,
                       const std::vector<std::vector<double>>& heatmap,
                       const std::vector<double>& checkpoints) {
  os << "machine";
  for (double c : checkpoints) os << ',' << c;
  os << '\n';
  for (std::size_t m = 0; m < heatmap.size(); ++m) {
    os << m;
    for (double v : heatmap[m]) os << ',' << v;
    os << '\n';
  }
}

nlohmann::json metrics_json(const RunMetrics& r) {
  nlohmann::json j;
  j["run_id"] = r.run_id;
  j["policy"] = to_string(r.policy);
  j["jobs_per_machine"] = r.jobs_per_machine;
  j["latency_per_machine"] = r.latency_per_machine;
  j["avg_latency"] = r.avg_latency;
  j["cv"] = r.cv;
  j["throughput"] = r.throughput;
  return j;
}

}  // namespace

void cmd_gen(const std::string& config_path, const std::string& out_path,
             const CliOverrides& overrides) {
  const ExperimentConfig cfg = load_with_overrides(config_path, overrides);
  const std::vector<Job> jobs = generate(cfg.workload);
  auto out = open_out(out_path);
  write_jobs_jsonl(jobs, out);
  std::cout << "generated " << jobs.size() << " jobs (seed "
            << cfg.workload.seed << ") -> " << out_path << '\n';
}

void cmd_run(const std::string& config_path, const std::string& trace_path,
             const std::string& out_dir, const CliOverrides& overrides) {
  const ExperimentConfig cfg = load_with_overrides(config_path, overrides);
  const auto dir = ensure_dir(out_dir);
  const std::size_t machines = cfg.workload.mc.size();
  const std::vector<Job> jobs = load_jobs(trace_path, machines);

  RunParams params;
  params.machines = cfg.workload.mc;
  params.format = cfg.numeric_format();
  params.alpha = cfg.alpha;
  params.vs_capacity = cfg.vs_capacity;
  params.noise = cfg.noise;
  params.noise_seed = cfg.workload.seed;

  for (Policy policy : cfg.policies) {
    const SimTrace trace = run_policy(policy, jobs, params);
    const std::string name = to_string(policy);
    {
      auto out = open_out(dir / (name + "_trace.csv"));
      write_trace_csv(trace, out);
    }
    const RunMetrics m =
        compute_run_metrics(trace, machines, cfg.cv_interval, policy, 0);
    {
      auto out = open_out(dir / (name + "_metrics.csv"));
      write_metrics_csv(out, {m});
    }
    {
      auto out = open_out(dir / (name + "_metrics.json"));
      out << metrics_json(m).dump(2) << '\n';
    }
    {
      const auto heatmap = fairness_heatmap(trace, machines, cfg.checkpoints);
      auto out = open_out(dir / (name + "_heatmap.csv"));
      write_heatmap_csv(out, heatmap, cfg.checkpoints);
    }
    std::cout << name << ": " << jobs.size() << " jobs, throughput "
              << m.throughput << ", avg latency " << m.avg_latency << '\n';
  }
}

void cmd_quantstudy(const std::string& config_path, const std::string& out_dir,
                    std::uint64_t draws, const CliOverrides& overrides) {
  const ExperimentConfig cfg = load_with_overrides(config_path, overrides);
  const auto dir = ensure_dir(out_dir);
  const auto results = quant_study(cfg, draws, cfg.workload.seed);

  {
    auto out = open_out(dir / "quant_errors.csv");
    out << "scheme,attribute,mean_pct,max_pct,p50_pct,p95_pct,count\n";
    for (const QuantSchemeResult& r : results) {
      out << to_string(r.scheme) << ",wspt," << r.wspt_error.mean << ','
          << r.wspt_error.max << ',' << r.wspt_error.p50 << ','
          << r.wspt_error.p95 << ',' << r.wspt_error.count << '\n';
      out << to_string(r.scheme) << ",alpha," << r.alpha_error.mean << ','
          << r.alpha_error.max << ',' << r.alpha_error.p50 << ','
          << r.alpha_error.p95 << ',' << r.alpha_error.count << '\n';
    }
  }
  {
    auto out = open_out(dir / "job_share.csv");
    out << "scheme,machine,share,mean_abs_delta_vs_fp32\n";
    for (const QuantSchemeResult& r : results) {
      for (std::size_t m = 0; m < r.job_share.size(); ++m) {
        out << to_string(r.scheme) << ',' << m << ',' << r.job_share[m] << ','
            << r.mean_abs_share_delta[m] << '\n';
      }
    }
  }
  {
    nlohmann::json summary = nlohmann::json::array();
    for (const QuantSchemeResult& r : results) {
      nlohmann::json j;
      j["scheme"] = to_string(r.scheme);
      j["wspt_error_mean_pct"] = r.wspt_error.mean;
      j["alpha_error_mean_pct"] = r.alpha_error.mean;
      j["job_share"] = r.job_share;
      j["mean_abs_share_delta_vs_fp32"] = r.mean_abs_share_delta;
      summary.push_back(j);
    }
    auto out = open_out(dir / "quant_summary.json");
    out << summary.dump(2) << '\n';
  }
  for (const QuantSchemeResult& r : results) {
    std::cout << to_string(r.scheme) << ": mean wspt err " << r.wspt_error.mean
              << "%, mean alpha err " << r.alpha_error.mean << "%\n";
  }
}

void cmd_montecarlo(const std::string& config_path, const std::string& out_dir,
                    std::uint64_t draws, const CliOverrides& overrides) {
  const ExperimentConfig cfg = load_with_overrides(config_path, overrides);
  const auto dir = ensure_dir(out_dir);
  const MonteCarloReport report = monte_carlo(cfg, draws, cfg.workload.seed);

  {
    auto out = open_out(dir / "metrics.csv");
    write_metrics_csv(out, report.runs);
  }
  {
    nlohmann::json summary = nlohmann::json::array();
    for (const PolicySummary& s : report.summaries) {
      nlohmann::json j;
      j["policy"] = to_string(s.policy);
      j["mean_throughput"] = s.mean_throughput;
      j["cv_throughput"] = s.cv_throughput;
      j["mean_latency"] = s.mean_latency;
      j["mean_cv"] = s.mean_cv;
      summary.push_back(j);
    }
    auto out = open_out(dir / "summary.json");
    out << summary.dump(2) << '\n';
  }
  for (const PolicySummary& s : report.summaries) {
    auto out = open_out(dir / ("heatmap_" + to_string(s.policy) + ".csv"));
    write_heatmap_csv(out, s.heatmap, cfg.checkpoints);
    std::cout << to_string(s.policy) << ": mean throughput "
              << s.mean_throughput << " (cv " << s.cv_throughput
              << "), mean latency " << s.mean_latency << '\n';
  }
}

}  // namespace sos
