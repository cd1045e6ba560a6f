#pragma once

#include <optional>
#include <vector>

#include "psched/flow.hpp"
#include "psched/instance.hpp"
#include "psched/schedule.hpp"

namespace psched::testing {

/// Single-machine optimum by dynamic programming over precedence-closed job
/// subsets (ideals). Independent of the backtracking oracle; n <= 20.
Rational opt_single_dp(const Instance& inst);

/// Largest breakpoint λ* of the network by enumerating every finite cut
/// {A, B} ∪ X (X closed under successors): the smallest λ at which the
/// trivial cut {A} is a minimum cut. Empty when no such λ exists. At most 16
/// job nodes.
std::optional<Rational> breakpoint_by_cut_enumeration(const FlowNetwork& net);

/// True when `order` lists every job once and respects every edge.
bool is_linear_extension(const Instance& inst, const std::vector<JobId>& order);

/// Longest chain ending at each job, by memoized recursion over predecessors.
std::vector<Rational> chain_bounds_recursive(const Instance& inst);

}  // namespace psched::testing
