#include <doctest.h>

#include <sstream>

#include "sos/config.hpp"
#include "sos/experiments.hpp"
#include "sos/metrics.hpp"
#include "sos/trace.hpp"

using namespace sos;

TEST_SUITE("metrics") {

TEST_CASE("fairness heatmap: single job on machine 0") {
  SimTrace trace;
  trace.add(0, EventKind::created, 1);
  trace.add(0, EventKind::assigned, 1, 0);
  trace.add(5, EventKind::released, 1, 0);
  const std::vector<double> cps{1.0};
  const auto hm = fairness_heatmap(trace, 5, cps);
  CHECK(hm[0][0] == 1.0);
  for (std::size_t m = 1; m < 5; ++m) CHECK(hm[m][0] == 0.0);
}

TEST_CASE("fairness heatmap: counts are monotone across checkpoints") {
  SimTrace trace;
  for (std::uint32_t i = 1; i <= 40; ++i) {
    trace.add(i, EventKind::assigned, i, static_cast<std::int32_t>(i % 3));
  }
  const std::vector<double> cps{0.5, 1.0};
  const auto hm = fairness_heatmap(trace, 3, cps);
  for (std::size_t m = 0; m < 3; ++m) CHECK(hm[m][0] <= hm[m][1]);
}

TEST_CASE("fairness heatmap rejects bad input") {
  CHECK_THROWS_AS(fairness_heatmap(SimTrace{}, 3, std::vector<double>{1.0}),
                  InvariantError);
  SimTrace trace;
  trace.add(0, EventKind::assigned, 1, 0);
  CHECK_THROWS_AS(fairness_heatmap(trace, 3, std::vector<double>{1.5}),
                  InvariantError);
}

TEST_CASE("load_cv: pooled population CV") {
  SimTrace trace;
  std::uint32_t id = 1;
  // One window, counts [10, 10, 10, 10, 10].
  SUBCASE("uniform counts give zero") {
    for (int m = 0; m < 5; ++m) {
      for (int k = 0; k < 10; ++k) trace.add(3, EventKind::assigned, id++, m);
    }
    CHECK(load_cv(trace, 5, 100) == 0.0);
  }
  SUBCASE("skewed counts: mean 12, population std 4") {
    for (int m = 0; m < 5; ++m) {
      const int n = m == 0 ? 20 : 10;
      for (int k = 0; k < n; ++k) trace.add(3, EventKind::assigned, id++, m);
    }
    CHECK(load_cv(trace, 5, 100) == doctest::Approx(1.0 / 3));
  }
  SUBCASE("single machine, single window is degenerate") {
    for (int k = 0; k < 7; ++k) trace.add(3, EventKind::assigned, id++, 0);
    CHECK(load_cv(trace, 1, 100) == 0.0);
  }
  SUBCASE("no assignments is undefined") {
    trace.add(0, EventKind::created, 1);
    CHECK_THROWS_AS(load_cv(trace, 5, 100), InvariantError);
  }
}

TEST_CASE("avg_latency") {
  SimTrace trace;
  trace.add(5, EventKind::created, 1);
  trace.add(12, EventKind::released, 1, 0);
  trace.add(6, EventKind::created, 2);
  trace.add(10, EventKind::released, 2, 0);
  trace.add(0, EventKind::created, 3);
  trace.add(9, EventKind::released, 3, 2);

  const LatencyReport r = avg_latency(trace, 3);
  CHECK(r.per_machine[0] == doctest::Approx(5.5));  // (7 + 4) / 2
  CHECK(r.jobs_per_machine[0] == 2);
  CHECK(r.per_machine[2] == doctest::Approx(9.0));
  CHECK(r.overall == doctest::Approx(20.0 / 3));

  SUBCASE("missing release is an incomplete trace") {
    trace.add(20, EventKind::created, 9);
    CHECK_THROWS_AS(avg_latency(trace, 3), InvariantError);
  }
}

TEST_CASE("throughput") {
  SimTrace trace;
  SUBCASE("100 releases over 50 ticks") {
    for (std::uint32_t i = 0; i < 100; ++i) {
      trace.add(1 + i / 2, EventKind::released, i + 1, 0);
    }
    CHECK(throughput(trace) == doctest::Approx(2.0));
  }
  SUBCASE("all in one tick divides by one") {
    for (std::uint32_t i = 0; i < 7; ++i) {
      trace.add(4, EventKind::released, i + 1, 0);
    }
    CHECK(throughput(trace) == doctest::Approx(7.0));
  }
  SUBCASE("empty trace is an error") {
    CHECK_THROWS_AS(throughput(trace), InvariantError);
  }
}

TEST_CASE("metrics are pure functions of the trace") {
  SimTrace trace;
  for (std::uint32_t i = 1; i <= 30; ++i) {
    trace.add(i, EventKind::created, i);
    trace.add(i + 2, EventKind::assigned, i, static_cast<std::int32_t>(i % 4));
    trace.add(i + 5, EventKind::released, i, static_cast<std::int32_t>(i % 4));
  }
  const auto l1 = avg_latency(trace, 4);
  const auto l2 = avg_latency(trace, 4);
  CHECK(l1.overall == l2.overall);
  CHECK(l1.per_machine == l2.per_machine);
  CHECK(load_cv(trace, 4, 10) == load_cv(trace, 4, 10));
  CHECK(throughput(trace) == throughput(trace));
}

TEST_CASE("trace csv round trip") {
  SimTrace trace;
  trace.add(0, EventKind::created, 1);
  trace.add(2, EventKind::assigned, 1, 3);
  trace.add(7, EventKind::released, 1, 3);
  trace.add(7, EventKind::enqueued, 1, 3);
  trace.add(9, EventKind::completed, 1, 3);
  std::stringstream ss;
  write_trace_csv(trace, ss);
  const SimTrace back = read_trace_csv(ss);
  REQUIRE(back.events.size() == trace.events.size());
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    CHECK(back.events[i].tick == trace.events[i].tick);
    CHECK(back.events[i].kind == trace.events[i].kind);
    CHECK(back.events[i].job_id == trace.events[i].job_id);
    CHECK(back.events[i].machine == trace.events[i].machine);
  }
}

TEST_CASE("monte carlo: deterministic per seed, one draw equals one run") {
  ExperimentConfig cfg;
  cfg.workload.mc = default_machines();
  cfg.workload.total_jobs = 120;
  cfg.workload.seed = 5;
  cfg.policies = {Policy::sos, Policy::rr};
  cfg.vs_capacity = 6;

  const MonteCarloReport a = monte_carlo(cfg, 3, 99);
  const MonteCarloReport b = monte_carlo(cfg, 3, 99);
  REQUIRE(a.runs.size() == b.runs.size());
  for (std::size_t i = 0; i < a.runs.size(); ++i) {
    CHECK(a.runs[i].throughput == b.runs[i].throughput);
    CHECK(a.runs[i].avg_latency == b.runs[i].avg_latency);
    CHECK(a.runs[i].cv == b.runs[i].cv);
    CHECK(a.runs[i].jobs_per_machine == b.runs[i].jobs_per_machine);
  }
  REQUIRE(a.summaries.size() == 2);
  CHECK(a.runs.size() == 6);  // draws x policies

  const MonteCarloReport single = monte_carlo(cfg, 1, 42);
  CHECK(single.runs.size() == 2);

  // Accounting: assigned jobs sum to the workload size.
  for (const RunMetrics& r : single.runs) {
    std::uint64_t total = 0;
    for (auto n : r.jobs_per_machine) total += n;
    CHECK(total == cfg.workload.total_jobs);
  }
}

TEST_CASE("sampled workloads stay within the declared ranges") {
  ExperimentConfig cfg;
  cfg.workload.mc = default_machines();
  cfg.workload.total_jobs = 50;
  for (std::uint64_t d = 0; d < 200; ++d) {
    const WorkloadConfig wl = sample_workload(cfg, 7, d);
    CHECK(wl.bf >= cfg.mc_bf[0]);
    CHECK(wl.bf <= cfg.mc_bf[1]);
    CHECK(wl.it >= cfg.mc_it[0]);
    CHECK(wl.it <= cfg.mc_it[1]);
    CHECK(wl.ii >= cfg.mc_ii[0]);
    CHECK(wl.ii <= cfg.mc_ii[1]);
    CHECK(validate_config(wl).empty());
  }
}

}  // TEST_SUITE
