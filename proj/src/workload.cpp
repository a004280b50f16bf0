#include "sos/workload.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "sos/errors.hpp"
#include "sos/rng.hpp"

namespace sos {

BurstType burst_type_from_string(const std::string& s) {
  if (s == "random") return BurstType::random;
  if (s == "uniform") return BurstType::uniform;
  throw ConfigError("unknown burst type: " + s);
}

std::string to_string(BurstType b) {
  return b == BurstType::random ? "random" : "uniform";
}

std::vector<std::string> validate_config(const WorkloadConfig& config) {
  std::vector<std::string> errors;
  double jc_sum = 0.0;
  for (double c : config.jc) {
    if (c < 0.0) errors.push_back("jc: composition fractions must be nonnegative");
    jc_sum += c;
  }
  if (std::abs(jc_sum - 1.0) > 1e-9) {
    errors.push_back("jc: composition sums to " + std::to_string(jc_sum) +
                     ", expected 1.00");
  }
  if (config.mc.empty()) errors.push_back("mc: at least one machine required");
  if (config.bf < 1) errors.push_back("bf: burst factor must be >= 1");
  if (config.ii < 1) errors.push_back("ii: idle interval must be >= 1");
  if (config.total_jobs < 1) errors.push_back("total_jobs: must be >= 1");
  if (config.weight_range[0] < 1) {
    errors.push_back("weight_range: minimum weight is 1");
  }
  if (config.weight_range[0] > config.weight_range[1]) {
    errors.push_back("weight_range: lower bound exceeds upper bound");
  }
  return errors;
}

void require_valid(const WorkloadConfig& config) {
  const auto errors = validate_config(config);
  if (errors.empty()) return;
  std::string msg = "invalid workload config:";
  for (const auto& e : errors) msg += "\n  " + e;
  throw ConfigError(msg);
}

namespace {

// Largest-remainder quotas; any residual jobs are drawn in proportion to
// the fractional remainders so integral compositions come out exact.
std::array<std::uint64_t, 3> nature_quotas(const WorkloadConfig& config,
                                           std::mt19937_64& rng) {
  std::array<std::uint64_t, 3> counts{};
  std::array<double, 3> remainder{};
  std::uint64_t assigned = 0;
  for (int k = 0; k < 3; ++k) {
    const double exact = config.jc[k] * static_cast<double>(config.total_jobs);
    counts[k] = static_cast<std::uint64_t>(std::floor(exact + 1e-9));
    remainder[k] = exact - static_cast<double>(counts[k]);
    assigned += counts[k];
  }
  while (assigned < config.total_jobs) {
    const double total_rem = remainder[0] + remainder[1] + remainder[2];
    int pick = 0;
    if (total_rem > 1e-12) {
      const double r = uniform_unit(rng) * total_rem;
      pick = r < remainder[0] ? 0 : (r < remainder[0] + remainder[1] ? 1 : 2);
    }
    ++counts[pick];
    remainder[pick] = 0.0;
    ++assigned;
  }
  return counts;
}

}  // namespace

std::vector<Job> generate(const WorkloadConfig& config) {
  require_valid(config);

  auto nature_rng = make_stream(config.seed, Stream::nature);
  auto weight_rng = make_stream(config.seed, Stream::weight);
  auto jitter_rng = make_stream(config.seed, Stream::jitter);
  auto burst_rng = make_stream(config.seed, Stream::burst);

  std::array<std::uint64_t, 3> quota = nature_quotas(config, nature_rng);

  std::vector<Job> jobs;
  jobs.reserve(config.total_jobs);
  std::uint64_t remaining = config.total_jobs;
  for (std::uint64_t j = 0; j < config.total_jobs; ++j) {
    // Urn draw without replacement keeps the composition exact while
    // shuffling the nature order.
    const std::uint64_t r = uniform_u64(nature_rng, 1, remaining);
    JobNature nature;
    if (r <= quota[0]) {
      nature = JobNature::compute;
      --quota[0];
    } else if (r <= quota[0] + quota[1]) {
      nature = JobNature::memory;
      --quota[1];
    } else {
      nature = JobNature::mixed;
      --quota[2];
    }
    --remaining;

    Job job;
    job.id = static_cast<std::uint32_t>(j + 1);
    job.nature = nature;
    job.weight = static_cast<std::uint32_t>(uniform_u64(
        weight_rng, config.weight_range[0], config.weight_range[1]));
    job.ept.reserve(config.mc.size());
    for (const MachineProfile& m : config.mc) {
      job.ept.push_back(ept_model(nature, m, config.affinity, jitter_rng));
    }
    jobs.push_back(std::move(job));
  }

  // Arrival schedule: bf jobs per active tick (uniform) or a fresh draw in
  // [0, bf] (random); after every ii released jobs the next it ticks stay
  // quiet. The tick clock keeps running through idle windows.
  std::uint64_t tick = 0;
  std::uint64_t since_idle = 0;
  std::uint64_t placed = 0;
  while (placed < config.total_jobs) {
    std::uint64_t count = config.bt == BurstType::uniform
                              ? config.bf
                              : uniform_u64(burst_rng, 0, config.bf);
    count = std::min<std::uint64_t>(count, config.total_jobs - placed);
    for (std::uint64_t k = 0; k < count; ++k) {
      jobs[placed++].created_at = tick;
    }
    since_idle += count;
    if (config.it > 0 && since_idle >= config.ii) {
      tick += config.it;
      since_idle = 0;
    }
    ++tick;
  }
  return jobs;
}

void write_jobs_jsonl(const std::vector<Job>& jobs, std::ostream& os) {
  for (const Job& job : jobs) {
    nlohmann::json line;
    line["id"] = job.id;
    line["created_at"] = job.created_at;
    line["nature"] = to_string(job.nature);
    line["weight"] = job.weight;
    line["ept"] = job.ept;
    os << line.dump() << '\n';
  }
}

std::vector<Job> read_jobs_jsonl(std::istream& is) {
  std::vector<Job> jobs;
  std::string line;
  std::size_t lineno = 0;
  std::size_t machine_count = 0;
  std::uint64_t last_tick = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json parsed;
    try {
      parsed = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw IoError("trace line " + std::to_string(lineno) + ": " + e.what());
    }
    Job job;
    job.id = parsed.at("id").get<std::uint32_t>();
    job.created_at = parsed.at("created_at").get<std::uint64_t>();
    job.nature = nature_from_string(parsed.at("nature").get<std::string>());
    job.weight = parsed.at("weight").get<std::uint32_t>();
    job.ept = parsed.at("ept").get<std::vector<std::uint32_t>>();

    if (job.id == 0) {
      throw IoError("trace line " + std::to_string(lineno) + ": id 0 is reserved");
    }
    if (job.weight < 1 || job.ept.empty()) {
      throw IoError("trace line " + std::to_string(lineno) + ": bad job fields");
    }
    if (machine_count == 0) machine_count = job.ept.size();
    if (job.ept.size() != machine_count) {
      throw IoError("trace line " + std::to_string(lineno) +
                    ": inconsistent ept length");
    }
    if (job.created_at < last_tick) {
      throw IoError("trace line " + std::to_string(lineno) +
                    ": created_at not nondecreasing");
    }
    last_tick = job.created_at;
    jobs.push_back(std::move(job));
  }
  return jobs;
}

}  // namespace sos
