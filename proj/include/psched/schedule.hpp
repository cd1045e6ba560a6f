#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "psched/instance.hpp"
#include "psched/rational.hpp"

namespace psched {

/// Raised when a solver stage detects that an upstream result broke its
/// contract (e.g. a rate above 1 reaching the wrap-around step).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Processing rates of the available jobs at one event time.
struct RateVector {
  struct Entry {
    JobId job;
    Rational rate;
  };

  Rational time;
  std::vector<Entry> rates;  // ascending by job

  /// Rate of `job`, or zero if the job is not listed.
  Rational rate_of(JobId job) const;
  Rational sum() const;
};

/// One constant-rate piece [start, end) of a virtual schedule. `completed` is
/// the job finishing at `end`. Zero-length pieces (start == end) record
/// cascaded completions and carry no rates.
struct VirtualEvent {
  Rational start;
  Rational end;
  RateVector rates;
  JobId completed;
  /// Y_j(end) for every job j.
  std::vector<Rational> elapsed_at_end;
};

/// Infinitely-preemptive rate schedule produced by simulating a rate rule with
/// known processing times.
struct VirtualSchedule {
  std::vector<VirtualEvent> events;
  std::vector<Rational> completions;  // C'_j
  std::vector<JobId> completion_order;
  Rational objective;

  /// Y_j at the start of event k (zero for k == 0).
  Rational elapsed_at_start(std::size_t k, JobId j) const;
};

struct Segment {
  std::size_t machine;  // 1-based
  JobId job;
  Rational start;
  Rational end;
};

/// Executable schedule: machine-assigned segments.
struct MachineSchedule {
  std::vector<Segment> segments;
  std::vector<Rational> completions;
  Rational objective;
};

/// Σ w_j C_j.
Rational weighted_sum(const Instance& inst, const std::vector<Rational>& completions);

/// Checks every MachineSchedule invariant: no overlap on a machine, no job on
/// two machines at once, total length p_j, C_j equal to the last segment end,
/// precedence respected, objective consistent. Returns the first violation.
std::optional<std::string> find_schedule_violation(const Instance& inst,
                                                   const MachineSchedule& schedule);

/// Checks the VirtualSchedule invariants: increasing boundaries, rates in
/// [0,1] summing to at most m, positive rates only on available jobs,
/// nondecreasing elapsed times reaching p_j exactly at C'_j.
std::optional<std::string> find_virtual_violation(const Instance& inst,
                                                  const VirtualSchedule& schedule);

}  // namespace psched
