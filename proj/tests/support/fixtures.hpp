#pragma once

#include <string>

#include "psched/generator.hpp"
#include "psched/instance.hpp"

namespace psched::testing {

// w=(1,2,1,1), p=(6,4,3,5), 0 -> 1, one machine.
inline Instance round_robin_example() {
  return Instance(1, {{6, 1}, {4, 2}, {3, 1}, {5, 1}}, {{0, 1}});
}

// Six jobs on three machines; the first event has four available jobs and
// a price of 9/2.
inline Instance three_machine_example() {
  return Instance(3, {{9, 1}, {9, 1}, {12, 1}, {12, 6}, {9, 5}, {3, 1}},
                  {{0, 4}, {1, 4}, {1, 5}, {2, 5}, {3, 5}});
}

inline Instance random_instance(std::uint64_t seed, std::size_t max_jobs, std::size_t machines,
                                std::uint64_t max_p = 10, std::uint64_t max_w = 5) {
  SweepConfig sweep;
  sweep.seed = seed;
  sweep.max_jobs = max_jobs;
  sweep.machines = machines;
  sweep.max_p = max_p;
  sweep.max_w = max_w;
  return generate_instance(sweep_instance_config(sweep, 0));
}

inline std::string data_path(const std::string& name) { return std::string(PSCHED_TEST_DATA) + "/" + name; }

}  // namespace psched::testing
