#include "psched/schedule.hpp"

#include <algorithm>
#include <map>

namespace psched {

Rational RateVector::rate_of(JobId job) const {
  for (const auto& e : rates) {
    if (e.job == job) return e.rate;
  }
  return Rational();
}

Rational RateVector::sum() const {
  Rational s;
  for (const auto& e : rates) s += e.rate;
  return s;
}

Rational VirtualSchedule::elapsed_at_start(std::size_t k, JobId j) const {
  if (k == 0) return Rational();
  return events.at(k - 1).elapsed_at_end.at(j);
}

Rational weighted_sum(const Instance& inst, const std::vector<Rational>& completions) {
  Rational sum;
  for (JobId j = 0; j < inst.job_count(); ++j) sum += inst.weight(j) * completions.at(j);
  return sum;
}

namespace {

std::string job_str(JobId j) { return "job " + std::to_string(j); }

}  // namespace

std::optional<std::string> find_schedule_violation(const Instance& inst,
                                                   const MachineSchedule& schedule) {
  const std::size_t n = inst.job_count();
  if (schedule.completions.size() != n) return "completions has wrong length";

  std::map<std::size_t, std::vector<const Segment*>> by_machine;
  std::vector<std::vector<const Segment*>> by_job(n);
  for (const auto& seg : schedule.segments) {
    if (seg.job >= n) return "segment references unknown " + job_str(seg.job);
    if (seg.machine < 1 || seg.machine > inst.machines()) {
      return "segment of " + job_str(seg.job) + " on machine " + std::to_string(seg.machine);
    }
    if (!(seg.start < seg.end)) return "empty or reversed segment of " + job_str(seg.job);
    if (seg.start.sign() < 0) return "negative start for " + job_str(seg.job);
    by_machine[seg.machine].push_back(&seg);
    by_job[seg.job].push_back(&seg);
  }
  auto by_start = [](const Segment* a, const Segment* b) {
    return a->start < b->start || (a->start == b->start && a->end < b->end);
  };
  for (auto& [machine, segs] : by_machine) {
    std::sort(segs.begin(), segs.end(), by_start);
    for (std::size_t i = 1; i < segs.size(); ++i) {
      if (segs[i]->start < segs[i - 1]->end) {
        return "overlap on machine " + std::to_string(machine) + " at " + segs[i]->start.str();
      }
    }
  }
  for (JobId j = 0; j < n; ++j) {
    auto& segs = by_job[j];
    std::sort(segs.begin(), segs.end(), by_start);
    Rational total;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      if (i > 0 && segs[i]->start < segs[i - 1]->end) {
        return job_str(j) + " runs on two machines at " + segs[i]->start.str();
      }
      total += segs[i]->end - segs[i]->start;
    }
    if (total != inst.processing_time(j)) {
      return job_str(j) + " processed " + total.str() + " != p " +
             inst.processing_time(j).str();
    }
    if (!segs.empty()) {
      Rational last = segs.front()->end;
      for (const auto* s : segs) last = max(last, s->end);
      if (schedule.completions[j] != last) return "completion of " + job_str(j) + " != last end";
    } else if (schedule.completions[j].sign() < 0) {
      return "negative completion of " + job_str(j);
    }
  }
  for (const auto& [a, b] : inst.precedences()) {
    if (schedule.completions[b] < schedule.completions[a]) {
      return "precedence (" + std::to_string(a) + "," + std::to_string(b) + ") completion order";
    }
    for (const auto* s : by_job[b]) {
      if (s->start < schedule.completions[a]) {
        return "precedence (" + std::to_string(a) + "," + std::to_string(b) + ") violated";
      }
    }
  }
  if (weighted_sum(inst, schedule.completions) != schedule.objective) {
    return "objective does not match completions";
  }
  return std::nullopt;
}

std::optional<std::string> find_virtual_violation(const Instance& inst,
                                                  const VirtualSchedule& schedule) {
  const std::size_t n = inst.job_count();
  if (schedule.completions.size() != n || schedule.completion_order.size() != n) {
    return "completion vectors have wrong length";
  }
  if (schedule.events.size() != n) return "expected one event per job";
  const Rational m(static_cast<long>(inst.machines()));
  std::vector<char> done(n, 0);
  std::vector<Rational> elapsed(n);
  Rational t;
  for (std::size_t k = 0; k < schedule.events.size(); ++k) {
    const auto& ev = schedule.events[k];
    const std::string where = "event " + std::to_string(k);
    if (ev.start != t || ev.end < ev.start) return where + ": boundaries out of order";
    if (ev.rates.sum() > m) return where + ": rates exceed machine count";
    for (const auto& [job, rate] : ev.rates.rates) {
      if (rate.sign() < 0 || rate > Rational(1)) return where + ": rate outside [0,1]";
      if (done[job]) return where + ": rate on finished " + job_str(job);
      if (rate.sign() > 0) {
        for (JobId p : inst.predecessors(job)) {
          if (!done[p]) return where + ": positive rate on unavailable " + job_str(job);
        }
      }
    }
    if (ev.elapsed_at_end.size() != n) return where + ": elapsed snapshot has wrong length";
    const Rational dt = ev.end - ev.start;
    for (JobId j = 0; j < n; ++j) {
      const Rational expect = elapsed[j] + ev.rates.rate_of(j) * dt;
      if (ev.elapsed_at_end[j] != expect) return where + ": elapsed mismatch for " + job_str(j);
      if (expect > inst.processing_time(j)) return where + ": " + job_str(j) + " over-processed";
      elapsed[j] = expect;
    }
    const JobId c = ev.completed;
    if (c >= n || done[c]) return where + ": bad completed job";
    if (elapsed[c] != inst.processing_time(c)) return where + ": completed job not finished";
    for (JobId p : inst.predecessors(c)) {
      if (!done[p]) return where + ": completed before predecessor";
    }
    if (schedule.completions[c] != ev.end) return where + ": completion time mismatch";
    if (schedule.completion_order[k] != c) return where + ": completion order mismatch";
    done[c] = 1;
    t = ev.end;
  }
  if (weighted_sum(inst, schedule.completions) != schedule.objective) {
    return "objective does not match completions";
  }
  return std::nullopt;
}

}  // namespace psched
