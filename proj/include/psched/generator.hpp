#pragma once

#include <cstddef>
#include <cstdint>

#include "psched/instance.hpp"

namespace psched {

/// SplitMix64 (Steele, Lea, Flood). Fixed algorithm, so the same seed gives
/// the same stream on every platform and compiler.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Unbiased draw from [0, bound) by rejection; bound must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

struct GenConfig {
  std::size_t jobs = 8;
  std::size_t machines = 1;
  /// Probability that a given ordered pair becomes an edge, in [0, 1].
  Rational density = Rational(3, 10);
  std::uint64_t max_p = 10;  // p_j uniform in [0, max_p]
  std::uint64_t max_w = 5;   // w_j uniform in [1, max_w]
  std::uint64_t seed = 0;
};

/// Random DAG instance. Draw order, all from one SplitMix64(seed) stream:
///  1. a uniform permutation `label` (Fisher-Yates, i = n-1 down to 1,
///     swap with below(i+1));
///  2. for j = 0..n-1: p_j = below(max_p+1), then w_j = 1 + below(max_w);
///  3. for a < b (row-major): edge (label[a], label[b]) when
///     below(den) < num, where density = num/den in lowest terms.
/// Throws std::invalid_argument on bad parameters.
Instance generate_instance(const GenConfig& config);

struct SweepConfig {
  std::uint64_t seed = 0;
  std::size_t count = 100;
  std::size_t max_jobs = 8;
  std::size_t machines = 1;
  std::uint64_t max_p = 10;
  std::uint64_t max_w = 5;
};

/// Configuration of instance `index` of a sweep. A master SplitMix64(seed)
/// yields one value per instance; instance k uses the k-th value s_k as
/// follows: g = SplitMix64(s_k), jobs = 1 + g.below(max_jobs),
/// density = g.below(11)/10, and generation seed g.next().
GenConfig sweep_instance_config(const SweepConfig& sweep, std::size_t index);

}  // namespace psched
