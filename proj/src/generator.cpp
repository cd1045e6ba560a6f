#include "psched/generator.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace psched {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("SplitMix64::below: bound must be positive");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

namespace {

std::uint64_t to_u64(const mpz_class& z, const char* what) {
  if (z < 0 || !z.fits_ulong_p()) throw std::invalid_argument(std::string(what) + ": out of range");
  return z.get_ui();
}

}  // namespace

Instance generate_instance(const GenConfig& config) {
  if (config.machines < 1) throw std::invalid_argument("machines: must be at least 1");
  if (config.max_w < 1) throw std::invalid_argument("max_w: must be at least 1");
  if (config.density.sign() < 0 || config.density > Rational(1)) {
    throw std::invalid_argument("density: must lie in [0, 1]");
  }
  const std::uint64_t num = to_u64(config.density.raw().get_num(), "density");
  const std::uint64_t den = to_u64(config.density.raw().get_den(), "density");

  const std::size_t n = config.jobs;
  SplitMix64 rng(config.seed);

  std::vector<JobId> label(n);
  for (JobId j = 0; j < n; ++j) label[j] = j;
  for (std::size_t i = n; i-- > 1;) std::swap(label[i], label[rng.below(i + 1)]);

  std::vector<Job> jobs(n);
  for (auto& job : jobs) {
    job.processing_time = Rational(static_cast<long>(rng.below(config.max_p + 1)));
    job.weight = Rational(static_cast<long>(1 + rng.below(config.max_w)));
  }

  std::vector<Precedence> edges;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (rng.below(den) < num) edges.emplace_back(label[a], label[b]);
    }
  }
  return Instance(config.machines, std::move(jobs), std::move(edges));
}

GenConfig sweep_instance_config(const SweepConfig& sweep, std::size_t index) {
  if (sweep.max_jobs < 1) throw std::invalid_argument("max_jobs: must be at least 1");
  SplitMix64 master(sweep.seed);
  std::uint64_t s = 0;
  for (std::size_t k = 0; k <= index; ++k) s = master.next();

  SplitMix64 g(s);
  GenConfig config;
  config.jobs = 1 + g.below(sweep.max_jobs);
  config.density = Rational(static_cast<long>(g.below(11)), 10);
  config.machines = sweep.machines;
  config.max_p = sweep.max_p;
  config.max_w = sweep.max_w;
  config.seed = g.next();
  return config;
}

}  // namespace psched
