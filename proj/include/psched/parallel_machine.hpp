#pragma once

#include <optional>
#include <vector>

#include "psched/flow.hpp"
#include "psched/instance.hpp"
#include "psched/schedule.hpp"

namespace psched {

/// Per-job split of the virtual completion time: C'_j = active_j + inactive_j.
/// A job is active while it, or one of its available ancestors, runs at a rate
/// below 1.
struct ActiveTimeAccount {
  std::vector<Rational> active;    // μ_j
  std::vector<Rational> inactive;  // λ_j
};

/// Everything rates_parallel computed on the way to one RateVector.
struct ParallelRateDetail {
  RateVector rates;
  /// Set when a price was computed.
  std::optional<FlowNetwork> network;
  std::optional<BreakpointSearch> breakpoint;
  /// Maximum flow in `network` at λ* whose (B,j) arcs carry the rates.
  std::optional<Flow> flow;
  /// w(T(i)) for each available job, indexed like network->available().
  std::vector<Rational> forest_shares;
};

/// Among all maximum flows of the network at λ, returns the (B,j) flows of the
/// one that is max-min fair with respect to `shares` (lexicographically
/// optimal base of the rate polymatroid). Sources with zero share are filled
/// last, evenly. Result is indexed like net.available().
std::vector<Rational> fair_release_flows(const FlowNetwork& net, const Rational& lambda,
                                         const std::vector<Rational>& shares);

ParallelRateDetail parallel_rate_detail(const Instance& inst, const JobSet& unfinished);

/// Rates at one event: 1 for every available job when |F_t| <= m; otherwise
/// the (B,j) flows of the canonical maximum flow at λ* = 1/π_t.
///
/// An available job is weightless when every job it leads to within U_t
/// (itself included) has weight 0. If fewer than m available jobs are not
/// weightless, no finite price exists; those jobs get rate 1 and the spare
/// machines go to the lowest-index weightless jobs. This covers w(U_t) == 0.
RateVector rates_parallel(const Instance& inst, const JobSet& unfinished);

struct ParallelVirtualResult {
  VirtualSchedule virtual_schedule;
  ActiveTimeAccount account;
};

ParallelVirtualResult virtual_schedule_parallel(const Instance& inst);

/// McNaughton's wrap-around rule on every interval between consecutive
/// virtual completions. Jobs are laid out in (C'_j, j) order on machines
/// 1..m. Throws InternalError if an interval asks for more than its length
/// from one job or more than m times its length in total.
MachineSchedule wrap_around(const Instance& inst, const VirtualSchedule& vs);

struct ParallelResult {
  VirtualSchedule virtual_schedule;
  MachineSchedule schedule;
  ActiveTimeAccount account;
};

ParallelResult solve_parallel(const Instance& inst);

}  // namespace psched
