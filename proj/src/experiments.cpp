#include "sos/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "sos/engine.hpp"
#include "sos/errors.hpp"
#include "sos/rng.hpp"
#include "sos/simulation.hpp"

namespace sos {

RunMetrics compute_run_metrics(const SimTrace& trace, std::size_t machines,
                               std::uint64_t cv_interval, Policy policy,
                               std::uint64_t run_id) {
  RunMetrics m;
  m.run_id = run_id;
  m.policy = policy;
  const LatencyReport lat = avg_latency(trace, machines);
  m.jobs_per_machine = lat.jobs_per_machine;
  m.latency_per_machine = lat.per_machine;
  m.avg_latency = lat.overall;
  m.cv = load_cv(trace, machines, cv_interval);
  m.throughput = sos::throughput(trace);
  return m;
}

WorkloadConfig sample_workload(const ExperimentConfig& base,
                               std::uint64_t seed, std::uint64_t index) {
  auto rng = std::mt19937_64(derive_seed(seed, index));
  WorkloadConfig wl = base.workload;

  // Composition: uniform over the 2-simplex via two sorted uniforms.
  double u = uniform_unit(rng);
  double v = uniform_unit(rng);
  if (u > v) std::swap(u, v);
  wl.jc = {u, v - u, 1.0 - v};

  wl.bf = static_cast<std::uint32_t>(
      uniform_u64(rng, base.mc_bf[0], base.mc_bf[1]));
  wl.bt = (rng() & 1) ? BurstType::uniform : BurstType::random;
  wl.it = static_cast<std::uint32_t>(
      uniform_u64(rng, base.mc_it[0], base.mc_it[1]));
  wl.ii = static_cast<std::uint32_t>(
      uniform_u64(rng, base.mc_ii[0], base.mc_ii[1]));
  wl.seed = derive_seed(seed ^ 0x5bf03635u, index);
  return wl;
}

namespace {

RunParams params_for(const ExperimentConfig& cfg, Scheme scheme,
                     std::uint64_t noise_seed) {
  RunParams p;
  p.machines = cfg.workload.mc;
  p.format = cfg.numeric_format(scheme);
  p.alpha = cfg.alpha;
  p.vs_capacity = cfg.vs_capacity;
  p.noise = cfg.noise;
  p.noise_seed = noise_seed;
  return p;
}

}  // namespace

MonteCarloReport monte_carlo(const ExperimentConfig& base, std::uint64_t draws,
                             std::uint64_t seed) {
  if (draws < 1) throw ConfigError("monte_carlo: draws must be >= 1");
  MonteCarloReport report;
  const std::size_t machines = base.workload.mc.size();

  struct Accum {
    std::vector<double> throughputs;
    double latency_sum = 0.0;
    double cv_sum = 0.0;
    std::vector<SimTrace> traces;
  };
  std::vector<Accum> accums(base.policies.size());

  for (std::uint64_t d = 0; d < draws; ++d) {
    const WorkloadConfig wl = sample_workload(base, seed, d);
    const std::vector<Job> jobs = generate(wl);
    for (std::size_t pi = 0; pi < base.policies.size(); ++pi) {
      const Policy policy = base.policies[pi];
      SimTrace trace =
          run_policy(policy, jobs, params_for(base, base.precision, wl.seed));
      RunMetrics m =
          compute_run_metrics(trace, machines, base.cv_interval, policy, d);
      accums[pi].throughputs.push_back(m.throughput);
      accums[pi].latency_sum += m.avg_latency;
      accums[pi].cv_sum += m.cv;
      accums[pi].traces.push_back(std::move(trace));
      report.runs.push_back(std::move(m));
    }
  }

  for (std::size_t pi = 0; pi < base.policies.size(); ++pi) {
    const Accum& a = accums[pi];
    PolicySummary s;
    s.policy = base.policies[pi];
    double mean = 0.0;
    for (double t : a.throughputs) mean += t;
    mean /= static_cast<double>(a.throughputs.size());
    double var = 0.0;
    for (double t : a.throughputs) var += (t - mean) * (t - mean);
    var /= static_cast<double>(a.throughputs.size());
    s.mean_throughput = mean;
    s.cv_throughput = mean > 0.0 ? std::sqrt(var) / mean : 0.0;
    s.mean_latency = a.latency_sum / static_cast<double>(draws);
    s.mean_cv = a.cv_sum / static_cast<double>(draws);
    s.heatmap = fairness_heatmap(a.traces, machines, base.checkpoints);
    report.summaries.push_back(std::move(s));
  }
  return report;
}

ErrorStats summarize_errors(std::vector<double>& samples) {
  ErrorStats s;
  s.count = samples.size();
  if (samples.empty()) return s;
  double sum = 0.0;
  for (double v : samples) {
    sum += v;
    s.max = std::max(s.max, v);
  }
  s.mean = sum / static_cast<double>(samples.size());
  std::sort(samples.begin(), samples.end());
  const auto pick = [&](double q) {
    const auto idx = static_cast<std::size_t>(
        q * static_cast<double>(samples.size() - 1) + 0.5);
    return samples[idx];
  };
  s.p50 = pick(0.50);
  s.p95 = pick(0.95);
  return s;
}

std::vector<QuantSchemeResult> quant_study(const ExperimentConfig& base,
                                           std::uint64_t draws,
                                           std::uint64_t seed) {
  if (draws < 1) throw ConfigError("quant_study: draws must be >= 1");
  static constexpr Scheme kSchemes[] = {Scheme::int4, Scheme::int8,
                                        Scheme::mixed, Scheme::fp16,
                                        Scheme::fp32};
  const std::size_t machines = base.workload.mc.size();
  const std::size_t n_schemes = std::size(kSchemes);

  std::vector<QuantSchemeResult> results(n_schemes);
  std::vector<std::vector<double>> wspt_errors(n_schemes);
  std::vector<std::vector<double>> alpha_errors(n_schemes);
  std::vector<std::vector<double>> share_sums(
      n_schemes, std::vector<double>(machines, 0.0));
  std::vector<std::vector<double>> delta_sums(
      n_schemes, std::vector<double>(machines, 0.0));

  for (std::uint64_t d = 0; d < draws; ++d) {
    const WorkloadConfig wl = sample_workload(base, seed, d);
    const std::vector<Job> jobs = generate(wl);
    const double total = static_cast<double>(jobs.size());

    std::vector<std::vector<double>> shares(
        n_schemes, std::vector<double>(machines, 0.0));
    for (std::size_t si = 0; si < n_schemes; ++si) {
      const NumericFormat fmt = base.numeric_format(kSchemes[si]);
      const SimTrace trace =
          run_policy(Policy::sos, jobs, params_for(base, kSchemes[si], wl.seed));
      for (const TraceEvent& e : trace.events) {
        if (e.kind == EventKind::assigned) {
          shares[si][static_cast<std::size_t>(e.machine)] += 1.0 / total;
        }
      }
      // Attribute errors are trace properties, independent of the run.
      for (const Job& j : jobs) {
        for (std::size_t m = 0; m < machines; ++m) {
          const double ratio =
              static_cast<double>(j.weight) / static_cast<double>(j.ept[m]);
          const Fixed wspt_q = wspt(j.weight, j.ept[m], fmt);
          wspt_errors[si].push_back(relative_error(wspt_q.value(), ratio));

          const double release_ref = base.alpha * j.ept[m];
          const double release_q =
              quantize(base.alpha, fmt, Field::alpha).value() *
              quantize(j.ept[m], fmt, Field::ept).value();
          alpha_errors[si].push_back(relative_error(release_q, release_ref));
        }
      }
    }
    const std::size_t fp32_idx = n_schemes - 1;
    for (std::size_t si = 0; si < n_schemes; ++si) {
      for (std::size_t m = 0; m < machines; ++m) {
        share_sums[si][m] += shares[si][m];
        delta_sums[si][m] += std::abs(shares[si][m] - shares[fp32_idx][m]);
      }
    }
  }

  for (std::size_t si = 0; si < n_schemes; ++si) {
    QuantSchemeResult& r = results[si];
    r.scheme = kSchemes[si];
    r.wspt_error = summarize_errors(wspt_errors[si]);
    r.alpha_error = summarize_errors(alpha_errors[si]);
    r.job_share.resize(machines);
    r.mean_abs_share_delta.resize(machines);
    for (std::size_t m = 0; m < machines; ++m) {
      r.job_share[m] = share_sums[si][m] / static_cast<double>(draws);
      r.mean_abs_share_delta[m] = delta_sums[si][m] / static_cast<double>(draws);
    }
  }
  return results;
}

}  // namespace sos
