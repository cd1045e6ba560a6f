#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "psched/rational.hpp"

namespace psched {

using JobId = std::size_t;

/// Sorted, duplicate-free list of job indices.
using JobSet = std::vector<JobId>;

/// Ordered pair (before, after): `before` must complete before `after` starts.
using Precedence = std::pair<JobId, JobId>;

/// Raised when an instance (or its serialized form) is malformed. The message
/// names the offending field.
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Job {
  Rational processing_time;
  Rational weight;
};

/// A scheduling instance: m identical machines, jobs with processing times and
/// weights, and a precedence DAG over job indices 0..n-1.
///
/// Immutable after construction. The constructor validates everything and
/// precomputes adjacency lists and a topological order.
class Instance {
 public:
  Instance(std::size_t machines, std::vector<Job> jobs, std::vector<Precedence> precedences);

  std::size_t machines() const { return machines_; }
  std::size_t job_count() const { return jobs_.size(); }
  const std::vector<Job>& jobs() const { return jobs_; }
  const Rational& processing_time(JobId j) const { return jobs_.at(j).processing_time; }
  const Rational& weight(JobId j) const { return jobs_.at(j).weight; }

  /// Edges in input order.
  const std::vector<Precedence>& precedences() const { return precedences_; }
  /// Direct predecessors / successors, ascending.
  const std::vector<JobId>& predecessors(JobId j) const { return preds_.at(j); }
  const std::vector<JobId>& successors(JobId j) const { return succs_.at(j); }
  /// Kahn order, smallest available index first.
  const std::vector<JobId>& topological_order() const { return topo_; }

  bool has_precedence(JobId before, JobId after) const;
  Rational total_weight() const;

  /// Same jobs and edges on a different machine count.
  Instance with_machines(std::size_t machines) const;

  friend bool operator==(const Instance& a, const Instance& b);

 private:
  std::size_t machines_;
  std::vector<Job> jobs_;
  std::vector<Precedence> precedences_;
  std::vector<std::vector<JobId>> preds_;
  std::vector<std::vector<JobId>> succs_;
  std::vector<JobId> topo_;
};

/// S(j): j together with every job reachable from j.
JobSet successor_closure(const Instance& inst, JobId j);

/// Every job from which j is reachable, excluding j itself.
JobSet strict_ancestors(const Instance& inst, JobId j);

/// Jobs of `unfinished` none of whose predecessors is in `unfinished`.
JobSet available_set(const Instance& inst, const JobSet& unfinished);

/// Largest total processing time along a precedence chain ending in j,
/// p_j included.
Rational chain_bound(const Instance& inst, JobId j);

/// chain_bound for every job in one topological sweep.
std::vector<Rational> chain_bounds(const Instance& inst);

/// w(J).
Rational total_weight(const Instance& inst, const JobSet& jobs);

/// {0, ..., n-1}.
JobSet all_jobs(const Instance& inst);

/// Membership mask of length n.
std::vector<char> membership(const Instance& inst, const JobSet& jobs);

}  // namespace psched
