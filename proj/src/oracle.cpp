#include "psched/oracle.hpp"

#include <algorithm>

#include <json.hpp>

namespace psched {

OracleCapError::OracleCapError(std::size_t jobs, std::size_t cap)
    : std::runtime_error("oracle: " + std::to_string(jobs) + " jobs exceed the enumeration cap of " +
                         std::to_string(cap)),
      cap_(cap) {}

namespace {

// Depth-first enumeration of linear extensions with a fixed prefix. Children
// are visited in ascending job index, so the first optimum found is the
// lexicographically smallest one. A branch is cut when the partial cost plus
// the optimum of the remaining jobs without precedences (Smith's ratio rule,
// starting at the current time) already reaches the best value.
class Search {
 public:
  // With a ceiling, branches whose bound exceeds it are cut before the first
  // incumbent exists. Equal bounds survive, so ties are still found.
  Search(const Instance& inst, std::optional<Rational> ceiling = std::nullopt)
      : inst_(inst), n_(inst.job_count()), ceiling_(std::move(ceiling)) {
    pending_preds_.resize(n_);
    for (JobId j = 0; j < n_; ++j) pending_preds_[j] = inst.predecessors(j).size();
    placed_.assign(n_, 0);
    // Jobs with p = w = 0 cost nothing anywhere and would break the ordering.
    for (JobId j = 0; j < n_; ++j) {
      if (!inst.processing_time(j).is_zero() || !inst.weight(j).is_zero()) smith_.push_back(j);
    }
    std::stable_sort(smith_.begin(), smith_.end(), [&](JobId a, JobId b) {
      return inst.weight(a) * inst.processing_time(b) > inst.weight(b) * inst.processing_time(a);
    });
  }

  void place(JobId j) {
    placed_[j] = 1;
    order_.push_back(j);
    time_ += inst_.processing_time(j);
    partial_ += inst_.weight(j) * time_;
    for (JobId k : inst_.successors(j)) --pending_preds_[k];
  }

  void unplace(JobId j) {
    for (JobId k : inst_.successors(j)) ++pending_preds_[k];
    partial_ -= inst_.weight(j) * time_;
    time_ -= inst_.processing_time(j);
    order_.pop_back();
    placed_[j] = 0;
  }

  bool ready(JobId j) const { return !placed_[j] && pending_preds_[j] == 0; }

  void run() {
    if (order_.size() == n_) {
      if (!found_ || partial_ < best_) {
        best_ = partial_;
        best_order_ = order_;
        found_ = true;
      }
      return;
    }
    if (found_ ? bound() >= best_ : (ceiling_ && bound() > *ceiling_)) return;
    for (JobId j = 0; j < n_; ++j) {
      if (!ready(j)) continue;
      place(j);
      run();
      unplace(j);
    }
  }

  Rational bound() const {
    Rational t = time_;
    Rational total = partial_;
    for (JobId j : smith_) {
      if (placed_[j]) continue;
      t += inst_.processing_time(j);
      total += inst_.weight(j) * t;
    }
    return total;
  }

  bool found() const { return found_; }
  OptimalOrder result() const { return {best_, best_order_}; }

 private:
  const Instance& inst_;
  std::size_t n_;
  std::optional<Rational> ceiling_;
  std::vector<std::size_t> pending_preds_;
  std::vector<char> placed_;
  std::vector<JobId> order_;
  std::vector<JobId> smith_;  // descending w/p
  Rational time_;
  Rational partial_;
  bool found_ = false;
  Rational best_;
  std::vector<JobId> best_order_;
};

// Objective of the greedy order that always runs the available job with the
// largest w/p next. Feasible, so it bounds the optimum from above.
Rational greedy_ratio_objective(const Instance& inst) {
  const std::size_t n = inst.job_count();
  std::vector<std::size_t> pending(n);
  for (JobId j = 0; j < n; ++j) pending[j] = inst.predecessors(j).size();
  std::vector<char> placed(n, 0);
  Rational time;
  Rational total;
  for (std::size_t step = 0; step < n; ++step) {
    std::optional<JobId> pick;
    for (JobId j = 0; j < n; ++j) {
      if (placed[j] || pending[j] != 0) continue;
      if (!pick || inst.weight(j) * inst.processing_time(*pick) > inst.weight(*pick) * inst.processing_time(j)) {
        pick = j;
      }
    }
    placed[*pick] = 1;
    time += inst.processing_time(*pick);
    total += inst.weight(*pick) * time;
    for (JobId k : inst.successors(*pick)) --pending[k];
  }
  return total;
}

void check_cap(const Instance& inst, std::size_t cap) {
  if (inst.job_count() > cap) throw OracleCapError(inst.job_count(), cap);
}

}  // namespace

OptimalOrder opt_single_bruteforce_serial(const Instance& inst, std::size_t cap) {
  check_cap(inst, cap);
  Search search(inst);
  search.run();
  return search.result();
}

OptimalOrder opt_single_bruteforce(const Instance& inst, std::size_t cap) {
  check_cap(inst, cap);
  if (inst.job_count() == 0) return {};

  std::vector<JobId> firsts;
  for (JobId j = 0; j < inst.job_count(); ++j) {
    if (inst.predecessors(j).empty()) firsts.push_back(j);
  }
  const auto count = static_cast<long>(firsts.size());
  const Rational ceiling = greedy_ratio_objective(inst);
  std::vector<std::optional<OptimalOrder>> branch(firsts.size());

  // Each branch keeps its own incumbent, so the result does not depend on
  // thread timing. A branch may find nothing below the ceiling.
#pragma omp parallel for schedule(dynamic, 1)
  for (long b = 0; b < count; ++b) {
    Search search(inst, ceiling);
    search.place(firsts[b]);
    search.run();
    if (search.found()) branch[b] = search.result();
  }

  // Branches are in ascending first job, so a strict comparison keeps the
  // lexicographically smallest optimum.
  std::optional<OptimalOrder> best;
  for (auto& candidate : branch) {
    if (candidate && (!best || candidate->objective < best->objective)) best = std::move(candidate);
  }
  if (!best) throw InternalError("oracle: no order within the greedy bound");
  return *best;
}

Rational opt_fast_single(const Instance& inst, std::size_t cap) {
  return opt_single_bruteforce(inst, cap).objective / Rational(static_cast<long>(inst.machines()));
}

Rational chain_lower_bound(const Instance& inst) {
  const auto chain = chain_bounds(inst);
  return weighted_sum(inst, chain);
}

Rational lower_bounds(const Instance& inst, std::size_t cap) {
  Rational bound = chain_lower_bound(inst);
  if (inst.job_count() <= cap) bound = max(bound, opt_fast_single(inst, cap));
  return bound;
}

MachineSchedule greedy_list_schedule(const Instance& inst, const std::vector<JobId>& order) {
  const std::size_t n = inst.job_count();
  const std::size_t m = inst.machines();
  MachineSchedule out;
  out.completions.assign(n, Rational());
  std::vector<char> done(n, 0);
  std::vector<Rational> free_at(m);
  if (order.size() != n) throw OrderError("greedy_list_schedule: order must list every job once");

  for (JobId j : order) {
    if (j >= n || done[j]) throw OrderError("greedy_list_schedule: order must list every job once");
    Rational ready;
    for (JobId k : inst.predecessors(j)) {
      if (!done[k]) throw OrderError("greedy_list_schedule: job " + std::to_string(j) + " before its predecessor");
      ready = max(ready, out.completions[k]);
    }
    std::size_t machine = 0;
    for (std::size_t i = 1; i < m; ++i) {
      if (free_at[i] < free_at[machine]) machine = i;
    }
    const Rational start = max(ready, free_at[machine]);
    const Rational end = start + inst.processing_time(j);
    if (end > start) {
      out.segments.push_back({machine + 1, j, start, end});
      free_at[machine] = end;
    }
    out.completions[j] = end;
    done[j] = 1;
  }
  out.objective = weighted_sum(inst, out.completions);
  return out;
}

bool VerificationReport::all_hold() const {
  return std::all_of(inequalities.begin(), inequalities.end(), [](const Inequality& q) { return q.holds; });
}

std::optional<Rational> VerificationReport::ratio() const {
  const Rational& denom = mode == VerifyMode::kSingle ? *oracle_optimum : lower_bound;
  if (denom.is_zero()) return std::nullopt;
  return alg_objective / denom;
}

namespace {

void add_le(std::vector<Inequality>& out, std::string name, const Rational& left, const Rational& right) {
  out.push_back({std::move(name), left, right, left <= right});
}

void add_valid(std::vector<Inequality>& out, const std::string& name, const std::optional<std::string>& violation) {
  // Feasibility checks are reported as 0 <= 0 (holds) or 1 <= 0 (fails).
  out.push_back({name + (violation ? ": " + *violation : ""), Rational(violation ? 1 : 0), Rational(0),
                 !violation.has_value()});
}

}  // namespace

VerificationReport verify(const Instance& inst, VerifyMode mode, std::size_t cap, const Solvers& solvers) {
  check_cap(inst, cap);
  const std::size_t n = inst.job_count();
  VerificationReport report;
  report.mode = mode;
  auto& q = report.inequalities;
  const OptimalOrder opt = opt_single_bruteforce(inst, cap);

  if (mode == VerifyMode::kSingle) {
    const Instance single = inst.machines() == 1 ? inst : inst.with_machines(1);
    const SingleMachineResult res = solvers.single(single);
    report.alg_objective = res.schedule.objective;
    report.oracle_optimum = opt.objective;
    report.lower_bound = lower_bounds(single, cap);
    report.ratio_bound_checked = Rational(2);

    add_valid(q, "schedule feasible", find_schedule_violation(single, res.schedule));
    add_le(q, "ALG <= 2 OPT", res.schedule.objective, Rational(2) * opt.objective);
    add_le(q, "virtual <= 2 OPT", res.virtual_schedule.objective, Rational(2) * opt.objective);
    add_le(q, "lower bound <= OPT", report.lower_bound, opt.objective);
    for (JobId j = 0; j < n && j < res.virtual_schedule.completions.size(); ++j) {
      add_le(q, "C_" + std::to_string(j) + " <= C'_" + std::to_string(j), res.schedule.completions.at(j),
             res.virtual_schedule.completions[j]);
    }
    return report;
  }

  const ParallelResult res = solvers.parallel(inst);
  const Rational m(static_cast<long>(inst.machines()));
  const Rational fast = opt.objective / m;
  const Rational chain_sum = chain_lower_bound(inst);
  const auto chain = chain_bounds(inst);
  const MachineSchedule upper = greedy_list_schedule(inst, opt.order);

  report.alg_objective = res.schedule.objective;
  report.lower_bound = max(fast, chain_sum);
  report.ratio_bound_checked = Rational(3);

  Rational active_sum;
  for (JobId j = 0; j < n && j < res.account.active.size(); ++j) {
    active_sum += inst.weight(j) * res.account.active[j];
  }

  add_valid(q, "schedule feasible", find_schedule_violation(inst, res.schedule));
  add_valid(q, "upper bound schedule feasible", find_schedule_violation(inst, upper));
  add_le(q, "ALG <= virtual", res.schedule.objective, res.virtual_schedule.objective);
  add_le(q, "ALG <= 3 UB", res.schedule.objective, Rational(3) * upper.objective);
  add_le(q, "active <= 2 OPT_fast", active_sum, Rational(2) * fast);
  add_le(q, "virtual <= chain + 2 OPT_fast", res.virtual_schedule.objective, chain_sum + Rational(2) * fast);
  add_le(q, "lower bound <= UB", report.lower_bound, upper.objective);
  for (JobId j = 0; j < n && j < res.account.inactive.size(); ++j) {
    add_le(q, "inactive_" + std::to_string(j) + " <= chain_" + std::to_string(j), res.account.inactive[j],
           chain[j]);
  }
  return report;
}

std::string report_to_json(const VerificationReport& report) {
  nlohmann::ordered_json doc;
  doc["mode"] = report.mode == VerifyMode::kSingle ? "single" : "parallel";
  doc["all_hold"] = report.all_hold();
  doc["alg_objective"] = report.alg_objective.str();
  doc["oracle_optimum"] = report.oracle_optimum ? nlohmann::ordered_json(report.oracle_optimum->str()) : nullptr;
  doc["lower_bound"] = report.lower_bound.str();
  doc["ratio_bound_checked"] = report.ratio_bound_checked.str();
  const auto ratio = report.ratio();
  doc["ratio"] = ratio ? nlohmann::ordered_json(ratio->str()) : nullptr;
  auto& list = doc["inequalities"] = nlohmann::ordered_json::array();
  for (const auto& q : report.inequalities) {
    list.push_back({{"name", q.name}, {"left", q.left.str()}, {"right", q.right.str()}, {"holds", q.holds}});
  }
  return doc.dump(2) + "\n";
}

SweepResult verify_sweep(const SweepConfig& sweep, VerifyMode mode, std::size_t cap, bool parallel,
                         const Solvers& solvers) {
  SweepResult result;
  result.entries.resize(sweep.count);
  std::vector<std::string> errors(sweep.count);
  const auto count = static_cast<long>(sweep.count);

  auto run_one = [&](long k) {
    auto& entry = result.entries[k];
    entry.index = static_cast<std::size_t>(k);
    try {
      entry.config = sweep_instance_config(sweep, entry.index);
      entry.report = verify(generate_instance(entry.config), mode, cap, solvers);
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long k = 0; k < count; ++k) run_one(k);
  } else {
    for (long k = 0; k < count; ++k) run_one(k);
  }

  for (std::size_t k = 0; k < sweep.count; ++k) {
    if (!errors[k].empty()) throw std::runtime_error("sweep instance " + std::to_string(k) + ": " + errors[k]);
    if (!result.entries[k].report.all_hold()) ++result.violations;
  }
  return result;
}

std::string sweep_to_json(const SweepConfig& sweep, VerifyMode mode, const SweepResult& result) {
  nlohmann::ordered_json doc;
  doc["mode"] = mode == VerifyMode::kSingle ? "single" : "parallel";
  doc["count"] = sweep.count;
  doc["seed"] = sweep.seed;
  doc["max_jobs"] = sweep.max_jobs;
  doc["machines"] = sweep.machines;
  doc["all_hold"] = result.violations == 0;
  doc["violations"] = result.violations;

  std::optional<Rational> worst;
  auto& list = doc["instances"] = nlohmann::ordered_json::array();
  for (const auto& entry : result.entries) {
    const auto ratio = entry.report.ratio();
    if (ratio && (!worst || *worst < *ratio)) worst = ratio;
    nlohmann::ordered_json item;
    item["index"] = entry.index;
    item["seed"] = entry.config.seed;
    item["jobs"] = entry.config.jobs;
    item["density"] = entry.config.density.str();
    item["all_hold"] = entry.report.all_hold();
    item["ratio"] = ratio ? nlohmann::ordered_json(ratio->str()) : nullptr;
    if (!entry.report.all_hold()) item["report"] = nlohmann::ordered_json::parse(report_to_json(entry.report));
    list.push_back(std::move(item));
  }
  doc["worst_ratio"] = worst ? nlohmann::ordered_json(worst->str()) : nullptr;
  return doc.dump(2) + "\n";
}

}  // namespace psched
