#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "psched/generator.hpp"
#include "psched/instance.hpp"
#include "psched/parallel_machine.hpp"
#include "psched/schedule.hpp"
#include "psched/single_machine.hpp"

namespace psched {

inline constexpr std::size_t kDefaultOracleCap = 10;

/// The instance is too large for exhaustive enumeration.
class OracleCapError : public std::runtime_error {
 public:
  OracleCapError(std::size_t jobs, std::size_t cap);
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

struct OptimalOrder {
  Rational objective;
  std::vector<JobId> order;  // lexicographically smallest among optimal orders
};

/// Exact optimum of 1|prec|Σ w_j C_j by backtracking over linear extensions
/// (machine count ignored). The first-job branches run in parallel with
/// OpenMP; the result does not depend on the thread count.
OptimalOrder opt_single_bruteforce(const Instance& inst, std::size_t cap = kDefaultOracleCap);

/// Same contract, single-threaded. Reference for the parallel kernel.
OptimalOrder opt_single_bruteforce_serial(const Instance& inst, std::size_t cap = kDefaultOracleCap);

/// OPT of the relaxation with one machine m times faster: single-machine
/// optimum divided by m.
Rational opt_fast_single(const Instance& inst, std::size_t cap = kDefaultOracleCap);

/// Σ_j w_j · chain_bound(j).
Rational chain_lower_bound(const Instance& inst);

/// max(opt_fast_single, chain_lower_bound); the first term is skipped when the
/// instance exceeds the cap.
Rational lower_bounds(const Instance& inst, std::size_t cap = kDefaultOracleCap);

/// Feasible m-machine schedule from an order: each job in turn starts on the
/// earliest free machine once its predecessors are done. Its objective is an
/// upper bound on the m-machine optimum.
MachineSchedule greedy_list_schedule(const Instance& inst, const std::vector<JobId>& order);

enum class VerifyMode { kSingle, kParallel };

struct Inequality {
  std::string name;
  Rational left;
  Rational right;
  bool holds;
};

struct VerificationReport {
  VerifyMode mode = VerifyMode::kSingle;
  Rational alg_objective;
  std::optional<Rational> oracle_optimum;
  Rational lower_bound;
  Rational ratio_bound_checked;
  std::vector<Inequality> inequalities;

  bool all_hold() const;
  /// alg_objective / oracle_optimum in single mode, alg_objective / lower_bound
  /// in parallel mode. Empty when the denominator is zero.
  std::optional<Rational> ratio() const;
};

/// Solver entry points used by verify(); tests swap in stubs.
struct Solvers {
  std::function<SingleMachineResult(const Instance&)> single = solve_single;
  std::function<ParallelResult(const Instance&)> parallel = solve_parallel;
};

VerificationReport verify(const Instance& inst, VerifyMode mode, std::size_t cap = kDefaultOracleCap,
                          const Solvers& solvers = {});

std::string report_to_json(const VerificationReport& report);

struct SweepEntry {
  std::size_t index = 0;
  GenConfig config;
  VerificationReport report;
};

struct SweepResult {
  std::vector<SweepEntry> entries;  // ascending index
  std::size_t violations = 0;       // entries whose report does not hold
};

/// Generates sweep.count instances (see sweep_instance_config) and verifies
/// each. With `parallel`, instances are spread over OpenMP threads; the result
/// is identical either way.
SweepResult verify_sweep(const SweepConfig& sweep, VerifyMode mode, std::size_t cap = kDefaultOracleCap,
                         bool parallel = true, const Solvers& solvers = {});

std::string sweep_to_json(const SweepConfig& sweep, VerifyMode mode, const SweepResult& result);

}  // namespace psched
