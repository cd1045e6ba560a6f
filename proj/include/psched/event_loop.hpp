#pragma once

#include <functional>

#include "psched/instance.hpp"
#include "psched/schedule.hpp"

namespace psched::detail {

using RateRule = std::function<RateVector(const Instance&, const JobSet&)>;

/// Shared simulation loop for the virtual schedules: cascade zero-remaining
/// available jobs, ask the rule for rates, advance to the earliest completion
/// (lowest index on ties), repeat.
///
/// `on_event` is called after each positive-length event with the event and
/// the unfinished set that was in force during it.
VirtualSchedule simulate(const Instance& inst, const RateRule& rule,
                         const std::function<void(const VirtualEvent&, const JobSet&)>& on_event = {});

}  // namespace psched::detail
