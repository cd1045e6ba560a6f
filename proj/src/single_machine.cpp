#include "psched/single_machine.hpp"

#include <algorithm>

#include "psched/event_loop.hpp"

namespace psched {

DfsForest dfs_forest(const Instance& inst, const JobSet& unfinished) {
  DfsForest forest;
  forest.roots = available_set(inst, unfinished);
  // Unassigned members of U'. Assigned sets are successor-closed within U, so
  // the search never needs to pass through an already assigned job.
  std::vector<char> open = membership(inst, unfinished);
  for (JobId root : forest.roots) {
    JobSet tree;
    std::vector<JobId> stack{root};
    open[root] = 0;
    while (!stack.empty()) {
      const JobId u = stack.back();
      stack.pop_back();
      tree.push_back(u);
      for (JobId v : inst.successors(u)) {
        if (open[v]) {
          open[v] = 0;
          stack.push_back(v);
        }
      }
    }
    std::sort(tree.begin(), tree.end());
    forest.trees.emplace(root, std::move(tree));
  }
  return forest;
}

RateVector rates_single(const Instance& inst, const JobSet& unfinished) {
  const DfsForest forest = dfs_forest(inst, unfinished);
  const Rational total = total_weight(inst, unfinished);
  RateVector out;
  for (JobId root : forest.roots) {
    if (total.is_zero()) {
      out.rates.push_back({root, Rational(root == forest.roots.front() ? 1 : 0)});
    } else {
      out.rates.push_back({root, total_weight(inst, forest.trees.at(root)) / total});
    }
  }
  return out;
}

VirtualSchedule virtual_schedule_single(const Instance& inst) {
  return detail::simulate(inst, rates_single);
}

MachineSchedule list_schedule(const Instance& inst, const std::vector<JobId>& order) {
  const std::size_t n = inst.job_count();
  if (order.size() != n) throw OrderError("order has " + std::to_string(order.size()) + " entries, expected " + std::to_string(n));
  std::vector<std::size_t> position(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (order[k] >= n || position[order[k]] != n) throw OrderError("order is not a permutation");
    position[order[k]] = k;
  }
  for (const auto& [a, b] : inst.precedences()) {
    if (position[a] > position[b]) {
      throw OrderError("order violates precedence (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
  }
  MachineSchedule out;
  out.completions.assign(n, Rational());
  Rational t;
  for (JobId j : order) {
    const Rational end = t + inst.processing_time(j);
    if (end > t) out.segments.push_back({1, j, t, end});
    out.completions[j] = end;
    t = end;
  }
  out.objective = weighted_sum(inst, out.completions);
  return out;
}

SingleMachineResult solve_single(const Instance& inst) {
  if (inst.machines() != 1) {
    throw std::invalid_argument("single machine solver needs machines == 1, got " +
                                std::to_string(inst.machines()));
  }
  SingleMachineResult out;
  out.virtual_schedule = virtual_schedule_single(inst);
  // completion_order is sorted by C' with ties in event order.
  out.schedule = list_schedule(inst, out.virtual_schedule.completion_order);
  return out;
}

}  // namespace psched
