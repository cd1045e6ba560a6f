#include "psched/event_loop.hpp"

#include <algorithm>
#include <optional>

namespace psched::detail {

VirtualSchedule simulate(const Instance& inst, const RateRule& rule,
                         const std::function<void(const VirtualEvent&, const JobSet&)>& on_event) {
  const std::size_t n = inst.job_count();
  VirtualSchedule vs;
  vs.completions.assign(n, Rational());
  std::vector<Rational> elapsed(n);
  JobSet unfinished = all_jobs(inst);
  Rational t;

  auto finish = [&](JobId j, VirtualEvent ev) {
    ev.completed = j;
    ev.elapsed_at_end = elapsed;
    vs.completions[j] = ev.end;
    vs.completion_order.push_back(j);
    vs.events.push_back(std::move(ev));
    unfinished.erase(std::find(unfinished.begin(), unfinished.end(), j));
  };

  while (!unfinished.empty()) {
    // Zero-length cascade: available jobs with nothing left to process.
    bool cascaded = true;
    while (cascaded && !unfinished.empty()) {
      cascaded = false;
      for (JobId j : available_set(inst, unfinished)) {
        if (elapsed[j] == inst.processing_time(j)) {
          VirtualEvent ev;
          ev.start = t;
          ev.end = t;
          ev.rates.time = t;
          finish(j, std::move(ev));
          cascaded = true;
          break;
        }
      }
    }
    if (unfinished.empty()) break;

    RateVector rates = rule(inst, unfinished);
    rates.time = t;
    std::optional<JobId> next;
    Rational best;
    for (const auto& [job, rate] : rates.rates) {
      if (rate.sign() <= 0) continue;
      Rational tau = (inst.processing_time(job) - elapsed[job]) / rate;
      if (!next || tau < best) {
        next = job;
        best = std::move(tau);
      }
    }
    if (!next) throw InternalError("rate rule assigned no positive rate");

    for (const auto& [job, rate] : rates.rates) elapsed[job] += rate * best;
    VirtualEvent ev;
    ev.start = t;
    ev.end = t + best;
    ev.rates = std::move(rates);
    const JobSet during = unfinished;
    t = ev.end;
    finish(*next, std::move(ev));
    if (on_event) on_event(vs.events.back(), during);
  }
  vs.objective = weighted_sum(inst, vs.completions);
  return vs;
}

}  // namespace psched::detail
