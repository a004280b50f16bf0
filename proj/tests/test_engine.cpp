#include <doctest.h>

#include <vector>

#include "sos/engine.hpp"
#include "sos/errors.hpp"
#include "sos/rng.hpp"

using namespace sos;

namespace {

Job make_job(std::uint32_t id, std::uint32_t weight,
             std::vector<std::uint32_t> ept, std::uint64_t created_at = 0) {
  Job j;
  j.id = id;
  j.weight = weight;
  j.ept = std::move(ept);
  j.created_at = created_at;
  return j;
}

VsEntry make_entry(std::uint32_t id, std::uint32_t weight, std::uint32_t ept,
                   const NumericFormat& fmt) {
  VsEntry e;
  e.id = id;
  e.weight = quantize(weight, fmt, Field::weight);
  e.ept = quantize(ept, fmt, Field::ept);
  e.wspt = wspt(weight, ept, fmt);
  e.sum_h = e.ept;
  e.sum_l = Fixed::encode(e.weight.value(), fmt.field_format(Field::cost));
  return e;
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("individual job cost: masking by the WSPT comparison") {
  const NumericFormat fmt = NumericFormat::make(Scheme::fp32);
  VsEntry entry = make_entry(1, 4, 8, fmt);  // wspt 0.5
  entry.sum_h = Fixed::encode(6.0, fmt.field_format(Field::ept));
  entry.sum_l = Fixed::encode(3.0, fmt.field_format(Field::cost));
  const Fixed new_wspt = Fixed::encode(0.2, fmt.field_format(Field::wspt));

  SUBCASE("higher-priority incumbent contributes its sum_h") {
    const IjccOutput o = individual_job_cost(entry, new_wspt, true, 0);
    CHECK(o.cmp);
    CHECK(o.h_term.value() == 6.0);
    CHECK(o.l_term.value() == 0.0);
    CHECK(o.updated.sum_h.value() == 6.0);  // not at head: unchanged
    CHECK(o.updated.sum_l.value() == 3.0);
  }

  SUBCASE("lower-priority incumbent contributes its sum_l") {
    entry.wspt = Fixed::encode(0.1, fmt.field_format(Field::wspt));
    const IjccOutput o = individual_job_cost(entry, new_wspt, true, 0);
    CHECK(!o.cmp);
    CHECK(o.h_term.value() == 0.0);
    CHECK(o.l_term.value() == 3.0);
  }

  SUBCASE("empty slot contributes nothing") {
    const IjccOutput o = individual_job_cost(VsEntry{}, new_wspt, true, 0);
    CHECK(!o.cmp);
    CHECK(o.h_term.value() == 0.0);
    CHECK(o.l_term.value() == 0.0);
  }

  SUBCASE("invalid arriving job masks both terms") {
    const IjccOutput o = individual_job_cost(entry, new_wspt, false, 0);
    CHECK(o.h_term.value() == 0.0);
    CHECK(o.l_term.value() == 0.0);
    CHECK(o.cmp);  // comparison bit is still formed
  }

  SUBCASE("head entry gets one cycle of virtual work written back") {
    const IjccOutput o = individual_job_cost(entry, new_wspt, false, entry.id);
    CHECK(o.updated.sum_h.value() == 5.0);
    CHECK(o.updated.sum_l.value() == 2.5);  // 3.0 - wspt 0.5
  }
}

TEST_CASE("individual job cost: sums floor at zero") {
  const NumericFormat fmt = NumericFormat::make(Scheme::int8);
  VsEntry entry = make_entry(3, 1, 10, fmt);
  entry.sum_h = Fixed::from_raw(0, fmt.field_format(Field::ept));
  entry.sum_l = Fixed::from_raw(1, fmt.field_format(Field::cost));
  const IjccOutput o =
      individual_job_cost(entry, entry.wspt, false, entry.id);
  CHECK(o.updated.sum_h.raw() == 0);
  CHECK(o.updated.sum_l.raw() == 0);  // 1 raw - wspt raw 1 (0.125)
}

TEST_CASE("compute_cost: empty machine reduces to W * ept") {
  const NumericFormat fmt = NumericFormat::make(Scheme::fp32);
  MachineScheduler m(4, fmt);
  std::uint64_t visits = 0;
  const CostResult r =
      m.compute_cost(quantize(2, fmt, Field::weight),
                     quantize(10, fmt, Field::ept),
                     Fixed::encode(0.2, fmt.field_format(Field::wspt)), true,
                     visits);
  CHECK(r.cost.value() == 20.0);
  CHECK(r.insert_index == 0);
  CHECK(r.wspt.value() == doctest::Approx(0.2));
  CHECK(!r.full);
}

TEST_CASE("compute_cost: two incumbents, high and low halves") {
  // K1{W=4, ept=8} after two cycles of virtual work, K2{W=1, ept=10} fresh;
  // candidate {W=2, ept=10}: cost = 2*(10+6) + 10*1.0 = 42, index 1.
  for (Scheme s : {Scheme::fp32, Scheme::int8}) {
    CAPTURE(to_string(s));
    const NumericFormat fmt = NumericFormat::make(s);
    MachineScheduler m(4, fmt);
    m.admit(1, make_entry(1, 4, 8, fmt), 0, alpha_init(0.5, 8));
    m.admit(2, make_entry(2, 1, 10, fmt), 1, alpha_init(0.5, 10));
    std::uint64_t visits = 0;
    m.apply_virtual_work(visits);
    m.apply_virtual_work(visits);

    const CostResult r = m.compute_cost(quantize(2, fmt, Field::weight),
                                        quantize(10, fmt, Field::ept),
                                        wspt(2, 10, fmt), true, visits);
    CHECK(r.cost.value() == 42.0);
    CHECK(r.insert_index == 1);
    if (s == Scheme::int8) CHECK(r.cost.raw() == 42 * 8);
  }
}

TEST_CASE("compute_cost: full schedule reports the sentinel") {
  const NumericFormat fmt = NumericFormat::make(Scheme::int8);
  MachineScheduler m(2, fmt);
  m.admit(1, make_entry(1, 4, 10, fmt), 0, 5);
  m.admit(2, make_entry(2, 2, 10, fmt), 1, 5);
  std::uint64_t visits = 0;
  const CostResult r = m.compute_cost(quantize(2, fmt, Field::weight),
                                      quantize(10, fmt, Field::ept),
                                      wspt(2, 10, fmt), true, visits);
  CHECK(r.full);
  CHECK(r.cost.raw() == fmt.cost_sentinel().raw());
}

TEST_CASE("select_machine") {
  const NumericFormat fmt = NumericFormat::make(Scheme::fp32);
  const auto mk = [&](double cost, bool full) {
    CostResult r;
    r.cost = Fixed::encode(cost, fmt.field_format(Field::cost));
    r.full = full;
    return r;
  };

  SUBCASE("unique minimum") {
    const std::vector<CostResult> costs{mk(42, false), mk(20, false),
                                        mk(99, false), mk(100, false),
                                        mk(57, false)};
    CHECK(select_machine(costs) == 1);
  }
  SUBCASE("tie breaks to the lowest index") {
    const std::vector<CostResult> costs{mk(20, false), mk(20, false),
                                        mk(99, false)};
    CHECK(select_machine(costs) == 0);
  }
  SUBCASE("all machines full: no capacity") {
    const std::vector<CostResult> costs{mk(1e30, true), mk(1e30, true)};
    CHECK(!select_machine(costs).has_value());
  }
  SUBCASE("full machines are excluded even at equal cost") {
    const std::vector<CostResult> costs{mk(20, true), mk(20, false)};
    CHECK(select_machine(costs) == 1);
  }
}

TEST_CASE("vsm insert and pop") {
  std::vector<std::uint32_t> vsm{5, 7, 9};

  SUBCASE("partial shift at p > 0") {
    vsm_insert(vsm, 4, 3, 1);
    CHECK(vsm == std::vector<std::uint32_t>{5, 3, 7, 9});
  }
  SUBCASE("full shift at p = 0") {
    vsm_insert(vsm, 4, 3, 0);
    CHECK(vsm == std::vector<std::uint32_t>{3, 5, 7, 9});
  }
  SUBCASE("insert into empty") {
    std::vector<std::uint32_t> empty;
    vsm_insert(empty, 4, 3, 0);
    CHECK(empty == std::vector<std::uint32_t>{3});
  }
  SUBCASE("insert beyond capacity throws") {
    CHECK_THROWS_AS(vsm_insert(vsm, 3, 3, 0), InvariantError);
  }
  SUBCASE("pop returns the head and shifts everyone forward") {
    std::vector<std::uint32_t> v{3, 7, 9};
    CHECK(vsm_pop(v) == 3);
    CHECK(v == std::vector<std::uint32_t>{7, 9});
    std::vector<std::uint32_t> single{3};
    CHECK(vsm_pop(single) == 3);
    CHECK(single.empty());
    std::vector<std::uint32_t> empty;
    CHECK_THROWS_AS(vsm_pop(empty), InvariantError);
  }
}

TEST_CASE("mmu: FIFO address recycling and id lookup") {
  Mmu mmu(3);
  CHECK(mmu.alloc(7) == 0);
  CHECK(mmu.alloc(8) == 1);
  CHECK(mmu.release(7) == 0);  // address 0 goes to the queue back
  CHECK(mmu.alloc(9) == 2);
  CHECK(mmu.alloc(10) == 0);  // recycled
  CHECK(mmu.lookup(8) == 1);
  CHECK_THROWS_AS(mmu.alloc(11), InvariantError);
  CHECK_THROWS_AS(mmu.release(42), InvariantError);
}

TEST_CASE("alpha_init") {
  CHECK(alpha_init(0.5, 8) == 4);
  CHECK(alpha_init(0.25, 10) == 3);  // ceil(2.5)
  CHECK(alpha_init(0.5, 10) == 5);
}

TEST_CASE("alpha cam: counters keyed by id") {
  AlphaCam cam(2);
  cam.insert(4, 2);
  cam.insert(9, 1);
  CHECK(!cam.decrement(4));
  CHECK(cam.decrement(4));
  CHECK(cam.decrement(9));
  CHECK(cam.remaining(4) == 0);
  cam.erase(4);
  CHECK_THROWS_AS(cam.remaining(4), InvariantError);
  cam.insert(5, 3);
  cam.insert(6, 3);
  CHECK_THROWS_AS(cam.insert(7, 1), InvariantError);
}

TEST_CASE("tick: counter exhaustion releases the head") {
  const NumericFormat fmt = NumericFormat::make(Scheme::fp32);
  Scheduler sched({{MachineType::cpu, Quality::best, 0}}, 4, fmt, 0.1);
  const Job job = make_job(1, 2, {10});  // counter = ceil(0.1 * 10) = 1
  auto r0 = sched.tick(std::vector<Job>{job});
  REQUIRE(r0.admitted.has_value());
  CHECK(r0.releases.empty());

  auto r1 = sched.tick({});
  REQUIRE(r1.releases.size() == 1);
  CHECK(r1.releases[0].job.id == 1);
  CHECK(r1.releases[0].tick == 1);
  CHECK(sched.machine(0).empty());
  CHECK(sched.idle());
}

TEST_CASE("tick: empty system assigns to the cheapest machine") {
  const NumericFormat fmt = NumericFormat::make(Scheme::fp32);
  Scheduler sched(default_machines(), 4, fmt, 0.5);
  const Job job = make_job(1, 2, {40, 160, 25, 15, 60});
  auto r = sched.tick(std::vector<Job>{job});
  REQUIRE(r.admitted.has_value());
  CHECK(r.admitted->machine == 3);  // min W * ept
  CHECK(r.admitted->insert_index == 0);
  CHECK(r.releases.empty());
}

TEST_CASE("tick: a higher-WSPT arrival preempts the head and pauses it") {
  const NumericFormat fmt = NumericFormat::make(Scheme::fp32);
  Scheduler sched({{MachineType::cpu, Quality::best, 0}}, 4, fmt, 0.5);

  // K: wspt 0.1, counter 5.
  sched.tick(std::vector<Job>{make_job(1, 1, {10})});
  sched.tick({});  // t1: K 5 -> 4
  sched.tick({});  // t2: K 4 -> 3

  // t3: K 3 -> 2, then J (wspt 0.8) lands at the head.
  auto r3 = sched.tick(std::vector<Job>{make_job(2, 8, {10}, 3)});
  REQUIRE(r3.admitted.has_value());
  CHECK(r3.admitted->insert_index == 0);

  const MachineScheduler& m = sched.machine(0);
  REQUIRE(m.vsm().size() == 2);
  const std::uint32_t j_hw = m.vsm()[0];
  const std::uint32_t k_hw = m.vsm()[1];
  CHECK(m.find(j_hw)->wspt.value() == doctest::Approx(0.8));
  CHECK(m.cam().remaining(k_hw) == 2);

  // J runs its 5 head ticks (t4..t8) while K stays frozen.
  std::vector<Release> releases;
  for (std::uint64_t t = 4; t <= 8; ++t) {
    auto r = sched.tick({});
    for (auto& rel : r.releases) releases.push_back(rel);
    if (t < 8) CHECK(m.cam().remaining(k_hw) == 2);
  }
  REQUIRE(releases.size() == 1);
  CHECK(releases[0].job.id == 2);
  CHECK(releases[0].tick == 8);

  // K resumes: two more head ticks.
  auto r9 = sched.tick({});
  CHECK(r9.releases.empty());
  auto r10 = sched.tick({});
  REQUIRE(r10.releases.size() == 1);
  CHECK(r10.releases[0].job.id == 1);
  CHECK(r10.releases[0].tick == 10);
}

TEST_CASE("tick: stalls when every schedule is full, retries later") {
  const NumericFormat fmt = NumericFormat::make(Scheme::fp32);
  Scheduler sched({{MachineType::cpu, Quality::best, 0}}, 1, fmt, 0.5);
  sched.tick(std::vector<Job>{make_job(1, 1, {10})});  // fills capacity 1
  auto r1 = sched.tick(std::vector<Job>{make_job(2, 1, {10}, 1)});
  CHECK(!r1.admitted.has_value());  // stalled at the FIFO head
  CHECK(sched.input_fifo_size() == 1);

  // Drain K (5 head ticks total), then the stalled job enters.
  bool admitted = false;
  for (int t = 0; t < 6 && !admitted; ++t) {
    admitted = sched.tick({}).admitted.has_value();
  }
  CHECK(admitted);
  CHECK(sched.input_fifo_size() == 0);
}

TEST_CASE("engine invariants under a randomized stream") {
  const NumericFormat fmt = NumericFormat::make(Scheme::int8);
  Scheduler sched(default_machines(), 6, fmt, 0.5);
  std::mt19937_64 rng(2024);

  std::uint64_t created = 0;
  std::uint64_t released = 0;
  std::uint32_t next_id = 1;
  for (std::uint64_t t = 0; t < 3000; ++t) {
    std::vector<Job> arrivals;
    if (uniform_u64(rng, 0, 2) == 0) {
      Job j = make_job(next_id++, static_cast<std::uint32_t>(uniform_u64(rng, 1, 20)),
                       {}, t);
      for (int m = 0; m < 5; ++m) {
        j.ept.push_back(static_cast<std::uint32_t>(uniform_u64(rng, 10, 200)));
      }
      arrivals.push_back(j);
      ++created;
    }
    const TickResult r = sched.tick(arrivals);
    released += r.releases.size();

    // Virtual schedules stay sorted by nonincreasing stored WSPT, and the
    // bookkeeping structures agree on occupancy.
    for (std::size_t mi = 0; mi < sched.machine_count(); ++mi) {
      const MachineScheduler& m = sched.machine(mi);
      double prev = 1e300;
      for (std::uint32_t id : m.vsm()) {
        const VsEntry* e = m.find(id);
        REQUIRE(e != nullptr);
        CHECK(e->wspt.value() <= prev);
        prev = e->wspt.value();
      }
      CHECK(m.cam().size() == m.vsm().size());
      CHECK(m.mmu().free_count() == 6 - m.vsm().size());
    }
  }

  // Drain and check conservation: every admitted job releases exactly once.
  std::uint64_t guard = 0;
  while (!sched.idle() && guard++ < 100000) {
    released += sched.tick({}).releases.size();
  }
  CHECK(sched.idle());
  CHECK(released == created - sched.input_fifo_size());
}

TEST_CASE("engine is bit-reproducible for a fixed trace and format") {
  std::vector<Job> jobs;
  std::mt19937_64 rng(77);
  for (std::uint32_t i = 1; i <= 200; ++i) {
    Job j = make_job(i, static_cast<std::uint32_t>(uniform_u64(rng, 1, 20)), {},
                     (i - 1) / 2);
    for (int m = 0; m < 5; ++m) {
      j.ept.push_back(static_cast<std::uint32_t>(uniform_u64(rng, 10, 200)));
    }
    jobs.push_back(j);
  }

  const auto run = [&jobs](Scheme s) {
    Scheduler sched(default_machines(), 4, NumericFormat::make(s), 0.5);
    std::vector<std::tuple<std::uint64_t, std::uint32_t, std::size_t, bool>> log;
    std::size_t next = 0;
    while (next < jobs.size() || !sched.idle()) {
      std::vector<Job> arrivals;
      while (next < jobs.size() && jobs[next].created_at == sched.now()) {
        arrivals.push_back(jobs[next++]);
      }
      const TickResult r = sched.tick(arrivals);
      if (r.admitted) {
        log.emplace_back(r.admitted->tick, r.admitted->job.id,
                         r.admitted->machine, false);
      }
      for (const Release& rel : r.releases) {
        log.emplace_back(rel.tick, rel.job.id, rel.machine, true);
      }
    }
    return log;
  };

  for (Scheme s : {Scheme::int8, Scheme::fp32}) {
    CHECK(run(s) == run(s));
  }
}

}  // TEST_SUITE
