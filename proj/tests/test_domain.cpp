#include <doctest.h>

#include "sos/domain.hpp"
#include "sos/rng.hpp"

using namespace sos;

TEST_SUITE("domain") {

TEST_CASE("wspt: plain division at full precision") {
  const NumericFormat fmt = NumericFormat::make(Scheme::fp32);
  CHECK(wspt(2, 10, fmt).value() == doctest::Approx(0.2));
}

TEST_CASE("wspt: fixed-point encoding of the ratio") {
  const NumericFormat fmt = NumericFormat::make(Scheme::int8);
  const Fixed q = wspt(4, 8, fmt);
  CHECK(q.raw() == 4);  // round(0.5 * 8)
  CHECK(q.value() == 0.5);
}

TEST_CASE("wspt: small ratios underflow to zero in UQ5.3") {
  const NumericFormat fmt = NumericFormat::make(Scheme::int8);
  const Fixed q = wspt(1, 255, fmt);
  CHECK(q.raw() == 0);
  CHECK(q.value() == 0.0);
}

TEST_CASE("ept model: affinity table lookups at unit jitter") {
  const AffinityTable table = AffinityTable::defaults();
  const MachineProfile gpu_best{MachineType::gpu, Quality::best, 0};
  const MachineProfile gpu_worst{MachineType::gpu, Quality::worst, 1};
  CHECK(ept_with_jitter(JobNature::compute, gpu_best, table, 1.0) == 15);
  CHECK(ept_with_jitter(JobNature::compute, gpu_worst, table, 1.0) == 60);
}

TEST_CASE("ept model: clamped to the generator floor") {
  AffinityTable table = AffinityTable::defaults();
  table.base[0][0] = 1;  // force a sub-floor base
  const MachineProfile m{MachineType::cpu, Quality::best, 0};
  CHECK(ept_with_jitter(JobNature::compute, m, table, 0.9) == kMinEpt);
}

TEST_CASE("ept model: worst quality is 4x best at equal jitter") {
  const AffinityTable table = AffinityTable::defaults();
  for (auto nature : {JobNature::compute, JobNature::memory, JobNature::mixed}) {
    for (auto mtype : {MachineType::cpu, MachineType::gpu, MachineType::mixed}) {
      const MachineProfile best{mtype, Quality::best, 0};
      const MachineProfile worst{mtype, Quality::worst, 1};
      CHECK(ept_with_jitter(nature, worst, table, 1.0) ==
            4 * ept_with_jitter(nature, best, table, 1.0));
    }
  }
}

TEST_CASE("ept model: deterministic for a fixed seed") {
  const AffinityTable table = AffinityTable::defaults();
  const MachineProfile m{MachineType::cpu, Quality::worst, 1};
  auto rng1 = make_stream(99, Stream::jitter);
  auto rng2 = make_stream(99, Stream::jitter);
  for (int i = 0; i < 100; ++i) {
    CHECK(ept_model(JobNature::memory, m, table, rng1) ==
          ept_model(JobNature::memory, m, table, rng2));
  }
}

TEST_CASE("ept model: jitter stays within +/-10% of the base product") {
  const AffinityTable table = AffinityTable::defaults();
  const MachineProfile m{MachineType::cpu, Quality::worst, 1};
  auto rng = make_stream(5, Stream::jitter);
  for (int i = 0; i < 500; ++i) {
    const std::uint32_t e = ept_model(JobNature::compute, m, table, rng);
    CHECK(e >= 144);  // 160 * 0.9
    CHECK(e <= 176);  // 160 * 1.1
  }
}

TEST_CASE("default machine set") {
  const auto machines = default_machines();
  REQUIRE(machines.size() == 5);
  CHECK(machines[0].mtype == MachineType::cpu);
  CHECK(machines[0].quality == Quality::best);
  CHECK(machines[1].quality == Quality::worst);
  CHECK(machines[2].mtype == MachineType::mixed);
  CHECK(machines[3].mtype == MachineType::gpu);
  CHECK(machines[4].quality == Quality::worst);
  for (std::size_t i = 0; i < machines.size(); ++i) {
    CHECK(machines[i].index == i);
  }
}

}  // TEST_SUITE
