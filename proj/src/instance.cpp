#include "psched/instance.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace psched {

Instance::Instance(std::size_t machines, std::vector<Job> jobs, std::vector<Precedence> precedences)
    : machines_(machines), jobs_(std::move(jobs)), precedences_(std::move(precedences)) {
  if (machines_ < 1) throw InstanceError("machines: must be at least 1");
  const std::size_t n = jobs_.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (jobs_[j].processing_time.sign() < 0) {
      throw InstanceError("jobs[" + std::to_string(j) + "].p: negative processing time");
    }
    if (jobs_[j].weight.sign() < 0) {
      throw InstanceError("jobs[" + std::to_string(j) + "].w: negative weight");
    }
  }

  preds_.assign(n, {});
  succs_.assign(n, {});
  std::set<Precedence> seen;
  for (std::size_t e = 0; e < precedences_.size(); ++e) {
    const auto [a, b] = precedences_[e];
    const std::string where = "precedences[" + std::to_string(e) + "]";
    if (a >= n || b >= n) throw InstanceError(where + ": job index out of range");
    if (a == b) throw InstanceError(where + ": self-loop on job " + std::to_string(a));
    if (!seen.insert(precedences_[e]).second) throw InstanceError(where + ": duplicate edge");
    succs_[a].push_back(b);
    preds_[b].push_back(a);
  }
  for (auto& v : preds_) std::sort(v.begin(), v.end());
  for (auto& v : succs_) std::sort(v.begin(), v.end());

  std::vector<std::size_t> indegree(n);
  for (std::size_t j = 0; j < n; ++j) indegree[j] = preds_[j].size();
  std::priority_queue<JobId, std::vector<JobId>, std::greater<>> ready;
  for (std::size_t j = 0; j < n; ++j) {
    if (indegree[j] == 0) ready.push(j);
  }
  while (!ready.empty()) {
    const JobId j = ready.top();
    ready.pop();
    topo_.push_back(j);
    for (JobId k : succs_[j]) {
      if (--indegree[k] == 0) ready.push(k);
    }
  }
  if (topo_.size() != n) throw InstanceError("precedences: cycle detected");
}

bool Instance::has_precedence(JobId before, JobId after) const {
  const auto& s = succs_.at(before);
  return std::binary_search(s.begin(), s.end(), after);
}

Rational Instance::total_weight() const {
  Rational sum;
  for (const auto& job : jobs_) sum += job.weight;
  return sum;
}

Instance Instance::with_machines(std::size_t machines) const {
  return Instance(machines, jobs_, precedences_);
}

bool operator==(const Instance& a, const Instance& b) {
  if (a.machines_ != b.machines_ || a.jobs_.size() != b.jobs_.size()) return false;
  for (std::size_t j = 0; j < a.jobs_.size(); ++j) {
    if (a.jobs_[j].processing_time != b.jobs_[j].processing_time ||
        a.jobs_[j].weight != b.jobs_[j].weight) {
      return false;
    }
  }
  return a.precedences_ == b.precedences_;
}

JobSet successor_closure(const Instance& inst, JobId j) {
  std::vector<char> seen(inst.job_count(), 0);
  std::vector<JobId> stack{j};
  seen.at(j) = 1;
  while (!stack.empty()) {
    const JobId u = stack.back();
    stack.pop_back();
    for (JobId v : inst.successors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  JobSet out;
  for (JobId k = 0; k < inst.job_count(); ++k) {
    if (seen[k]) out.push_back(k);
  }
  return out;
}

JobSet strict_ancestors(const Instance& inst, JobId j) {
  std::vector<char> seen(inst.job_count(), 0);
  std::vector<JobId> stack{j};
  while (!stack.empty()) {
    const JobId u = stack.back();
    stack.pop_back();
    for (JobId v : inst.predecessors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  JobSet out;
  for (JobId k = 0; k < inst.job_count(); ++k) {
    if (seen[k]) out.push_back(k);
  }
  return out;
}

JobSet available_set(const Instance& inst, const JobSet& unfinished) {
  const auto in_u = membership(inst, unfinished);
  JobSet out;
  for (JobId j : unfinished) {
    const auto& preds = inst.predecessors(j);
    if (std::none_of(preds.begin(), preds.end(), [&](JobId k) { return in_u[k] != 0; })) {
      out.push_back(j);
    }
  }
  return out;
}

std::vector<Rational> chain_bounds(const Instance& inst) {
  std::vector<Rational> best(inst.job_count());
  for (JobId j : inst.topological_order()) {
    Rational longest;
    for (JobId k : inst.predecessors(j)) longest = max(longest, best[k]);
    best[j] = longest + inst.processing_time(j);
  }
  return best;
}

Rational chain_bound(const Instance& inst, JobId j) { return chain_bounds(inst).at(j); }

Rational total_weight(const Instance& inst, const JobSet& jobs) {
  Rational sum;
  for (JobId j : jobs) sum += inst.weight(j);
  return sum;
}

JobSet all_jobs(const Instance& inst) {
  JobSet out(inst.job_count());
  for (JobId j = 0; j < out.size(); ++j) out[j] = j;
  return out;
}

std::vector<char> membership(const Instance& inst, const JobSet& jobs) {
  std::vector<char> mask(inst.job_count(), 0);
  for (JobId j : jobs) mask.at(j) = 1;
  return mask;
}

}  // namespace psched
