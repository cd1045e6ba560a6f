#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "psched/instance.hpp"
#include "psched/schedule.hpp"

namespace psched {

/// Raised by list_schedule when the order is not a linear extension.
class OrderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Partition of the unfinished jobs into trees T(i), one per available job i.
/// Available jobs are visited in ascending index; each takes every still
/// unassigned job reachable from it.
struct DfsForest {
  JobSet roots;                  // F_t, ascending
  std::map<JobId, JobSet> trees;  // root -> T(root)
};

DfsForest dfs_forest(const Instance& inst, const JobSet& unfinished);

/// Weighted round-robin rates: R_i = w(T(i)) / w(U). When w(U) == 0 the
/// lowest-index available job gets rate 1 and the rest 0.
RateVector rates_single(const Instance& inst, const JobSet& unfinished);

/// Simulates rates_single between completions. Ignores machine_count.
VirtualSchedule virtual_schedule_single(const Instance& inst);

/// Non-preemptive, idle-free single machine schedule in the given order.
/// Throws OrderError if the order is not a permutation or violates a
/// precedence.
MachineSchedule list_schedule(const Instance& inst, const std::vector<JobId>& order);

struct SingleMachineResult {
  VirtualSchedule virtual_schedule;
  MachineSchedule schedule;
};

/// Virtual schedule, then list scheduling in order of virtual completion.
/// Requires machines() == 1.
SingleMachineResult solve_single(const Instance& inst);

}  // namespace psched
