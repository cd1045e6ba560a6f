#pragma once

#include <string>
#include <string_view>

#include "psched/instance.hpp"
#include "psched/schedule.hpp"

namespace psched {

/// Parses the instance JSON format:
///   {"machines": m, "jobs": [{"p": .., "w": ..}, ...], "precedences": [[j,k], ...]}
/// Numbers are JSON integers or "a/b" strings. Throws InstanceError naming the
/// offending field.
Instance parse_instance(std::string_view text);

/// Canonical instance JSON: keys in the order above, rationals as lowest-terms
/// strings, two-space indentation, trailing newline.
std::string serialize_instance(const Instance& inst);

/// {"objective": "a/b", "completions": [...], "segments": [{machine, job, start, end}]}
std::string serialize_schedule(const MachineSchedule& schedule);

/// Virtual schedule with per-event rates and elapsed snapshots.
std::string serialize_virtual(const VirtualSchedule& schedule);

/// One row per segment, `machine,job,start,end`, times rendered as decimals
/// with 12 significant digits. For plotting only.
std::string gantt_csv(const MachineSchedule& schedule);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace psched
