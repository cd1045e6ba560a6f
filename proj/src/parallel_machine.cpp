#include "psched/parallel_machine.hpp"

#include <algorithm>

#include "psched/event_loop.hpp"
#include "psched/single_machine.hpp"

namespace psched {

namespace {

// Raises the release flows of the open sources together, each at `weight[i]`
// per unit of θ, until either a source reaches 1 or some set of sources can no
// longer push more. Those sources are frozen; the rest continue.
void fill_sources(const FlowNetwork& net, const Rational& lambda, std::vector<std::optional<Rational>>& fixed,
                  const std::vector<std::size_t>& open_in, const std::vector<Rational>& weight) {
  const std::size_t k = net.available().size();
  std::vector<std::size_t> open = open_in;
  while (!open.empty()) {
    Rational theta = Rational(1) / weight[open.front()];
    for (std::size_t i : open) theta = min(theta, Rational(1) / weight[i]);

    std::vector<char> is_open(k, 0);
    for (std::size_t i : open) is_open[i] = 1;
    auto caps_at = [&](const Rational& th) {
      std::vector<Rational> caps(k);
      for (std::size_t i = 0; i < k; ++i) {
        if (fixed[i]) caps[i] = *fixed[i];
        else if (is_open[i]) caps[i] = th * weight[i];
      }
      return caps;
    };

    // Newton from above: h(θ) = maxflow − Σ caps is concave with h(0) = 0.
    std::vector<Rational> caps;
    Rational supply;
    MaxFlowResult result;
    FlowNetwork sub = net;
    for (;;) {
      caps = caps_at(theta);
      supply = Rational();
      for (const auto& c : caps) supply += c;
      sub = net.with_supply(supply, caps);
      result = max_flow(sub, lambda);
      if (result.flow.value == supply) break;

      const auto& side = result.min_cut.source_side;
      if (!side[FlowNetwork::kHubNode]) throw InternalError("fair rates: supply arc in minimum cut");
      Rational rest = result.min_cut.capacity;
      Rational fixed_in;
      Rational weight_in;
      for (std::size_t i = 0; i < k; ++i) {
        const bool inside = side[net.node_of(net.available()[i])] != 0;
        if (!inside) rest -= caps[i];
        else if (fixed[i]) fixed_in += *fixed[i];
        else if (is_open[i]) weight_in += weight[i];
      }
      if (weight_in.sign() <= 0) throw InternalError("fair rates: bottleneck without open sources");
      Rational next = (rest - fixed_in) / weight_in;
      if (next >= theta) throw InternalError("fair rates: Newton iterate did not decrease");
      theta = std::move(next);
    }

    const Cut tight = maximal_min_cut(sub, lambda, result.flow);
    std::vector<std::size_t> still_open;
    for (std::size_t i : open) {
      const bool saturated = tight.source_side[net.node_of(net.available()[i])] != 0;
      if (saturated || theta * weight[i] == Rational(1)) {
        fixed[i] = theta * weight[i];
      } else {
        still_open.push_back(i);
      }
    }
    if (still_open.size() == open.size()) throw InternalError("fair rates: no source frozen");
    open = std::move(still_open);
  }
}

}  // namespace

std::vector<Rational> fair_release_flows(const FlowNetwork& net, const Rational& lambda,
                                         const std::vector<Rational>& shares) {
  const std::size_t k = net.available().size();
  if (shares.size() != k) throw std::invalid_argument("fair_release_flows: one share per available job");
  std::vector<std::optional<Rational>> fixed(k);

  std::vector<std::size_t> positive;
  std::vector<std::size_t> zero;
  for (std::size_t i = 0; i < k; ++i) (shares[i].sign() > 0 ? positive : zero).push_back(i);
  fill_sources(net, lambda, fixed, positive, shares);
  fill_sources(net, lambda, fixed, zero, std::vector<Rational>(k, Rational(1)));

  std::vector<Rational> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = *fixed[i];
  return out;
}

ParallelRateDetail parallel_rate_detail(const Instance& inst, const JobSet& unfinished) {
  if (unfinished.empty()) throw std::invalid_argument("rates_parallel: no unfinished jobs");
  ParallelRateDetail out;
  const JobSet available = available_set(inst, unfinished);
  const std::size_t m = inst.machines();

  if (available.size() <= m) {
    for (JobId j : available) out.rates.rates.push_back({j, Rational(1)});
    return out;
  }
  // An available job is weightless when nothing it leads to in U carries
  // weight. Fewer than m other jobs means no finite price exists: they all
  // run at rate 1 and the spare machines go to the lowest-index weightless
  // jobs. With w(U) = 0 every job is weightless.
  const auto in_u = membership(inst, unfinished);
  std::vector<char> weightless(available.size(), 0);
  std::size_t weighted = 0;
  for (std::size_t i = 0; i < available.size(); ++i) {
    bool any = false;
    for (JobId k : successor_closure(inst, available[i])) any = any || (in_u[k] && inst.weight(k).sign() > 0);
    weightless[i] = !any;
    weighted += any;
  }
  if (weighted < m) {
    std::size_t spare = m - weighted;
    for (std::size_t i = 0; i < available.size(); ++i) {
      bool run = !weightless[i];
      if (!run && spare > 0) {
        run = true;
        --spare;
      }
      out.rates.rates.push_back({available[i], Rational(run ? 1 : 0)});
    }
    return out;
  }

  FlowNetwork net = build_network(inst, unfinished);
  BreakpointSearch search = largest_breakpoint(net);

  const DfsForest forest = dfs_forest(inst, unfinished);
  for (JobId i : available) out.forest_shares.push_back(total_weight(inst, forest.trees.at(i)));
  const std::vector<Rational> release = fair_release_flows(net, search.lambda, out.forest_shares);

  const Rational m_rational(static_cast<long>(m));
  MaxFlowResult realized = max_flow(net.with_supply(m_rational, release), search.lambda);
  if (realized.flow.value != m_rational) throw InternalError("fair rates do not sum to m");

  for (std::size_t i = 0; i < available.size(); ++i) out.rates.rates.push_back({available[i], release[i]});
  out.flow = std::move(realized.flow);
  out.breakpoint = std::move(search);
  out.network = std::move(net);
  return out;
}

RateVector rates_parallel(const Instance& inst, const JobSet& unfinished) {
  return parallel_rate_detail(inst, unfinished).rates;
}

ParallelVirtualResult virtual_schedule_parallel(const Instance& inst) {
  const std::size_t n = inst.job_count();
  ParallelVirtualResult out;
  out.account.active.assign(n, Rational());

  auto accumulate = [&](const VirtualEvent& ev, const JobSet& unfinished) {
    const Rational length = ev.end - ev.start;
    // Active jobs: successors-closure (within U) of available jobs below rate 1.
    std::vector<char> active(n, 0);
    std::vector<JobId> stack;
    for (const auto& [job, rate] : ev.rates.rates) {
      if (rate < Rational(1)) {
        active[job] = 1;
        stack.push_back(job);
      }
    }
    while (!stack.empty()) {
      const JobId u = stack.back();
      stack.pop_back();
      for (JobId v : inst.successors(u)) {
        if (!active[v]) {
          active[v] = 1;
          stack.push_back(v);
        }
      }
    }
    for (JobId j : unfinished) {
      if (active[j]) out.account.active[j] += length;
    }
  };

  out.virtual_schedule = detail::simulate(inst, rates_parallel, accumulate);
  out.account.inactive.resize(n);
  for (JobId j = 0; j < n; ++j) {
    out.account.inactive[j] = out.virtual_schedule.completions[j] - out.account.active[j];
  }
  return out;
}

MachineSchedule wrap_around(const Instance& inst, const VirtualSchedule& vs) {
  const std::size_t n = inst.job_count();
  const std::size_t m = inst.machines();
  MachineSchedule out;

  std::vector<JobId> order(n);
  for (JobId j = 0; j < n; ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](JobId a, JobId b) {
    return vs.completions[a] != vs.completions[b] ? vs.completions[a] < vs.completions[b] : a < b;
  });

  for (std::size_t k = 0; k < vs.events.size(); ++k) {
    const auto& ev = vs.events[k];
    const Rational length = ev.end - ev.start;
    if (length.sign() <= 0) continue;

    Rational total;
    std::vector<std::pair<JobId, Rational>> pieces;
    for (JobId j : order) {
      Rational delta = ev.elapsed_at_end[j] - vs.elapsed_at_start(k, j);
      if (delta.sign() < 0) throw InternalError("elapsed time decreased for job " + std::to_string(j));
      if (delta.sign() == 0) continue;
      if (delta > length) throw InternalError("job " + std::to_string(j) + " exceeds interval length");
      total += delta;
      pieces.emplace_back(j, std::move(delta));
    }
    if (total > Rational(static_cast<long>(m)) * length) {
      throw InternalError("interval demand exceeds machine capacity");
    }

    std::size_t machine = 1;
    Rational cursor = ev.start;
    for (auto& [job, delta] : pieces) {
      if (cursor + delta <= ev.end) {
        out.segments.push_back({machine, job, cursor, cursor + delta});
        cursor += delta;
        continue;
      }
      const Rational first = ev.end - cursor;
      const Rational second = delta - first;
      // The wrapped piece [start, start+second) must end before the first
      // piece [cursor, end) begins; this is exactly delta <= length.
      if (ev.start + second > cursor) throw InternalError("wrapped pieces overlap");
      if (first.sign() > 0) out.segments.push_back({machine, job, cursor, ev.end});
      ++machine;
      if (machine > m) throw InternalError("wrap-around ran out of machines");
      out.segments.push_back({machine, job, ev.start, ev.start + second});
      cursor = ev.start + second;
    }
  }

  out.completions.assign(n, Rational());
  std::vector<char> has_segment(n, 0);
  for (const auto& seg : out.segments) {
    out.completions[seg.job] = has_segment[seg.job] ? max(out.completions[seg.job], seg.end) : seg.end;
    has_segment[seg.job] = 1;
  }
  for (JobId j : inst.topological_order()) {
    if (has_segment[j]) continue;
    Rational latest;
    for (JobId p : inst.predecessors(j)) latest = max(latest, out.completions[p]);
    out.completions[j] = latest;
  }
  out.objective = weighted_sum(inst, out.completions);
  return out;
}

ParallelResult solve_parallel(const Instance& inst) {
  ParallelVirtualResult virt = virtual_schedule_parallel(inst);
  ParallelResult out;
  out.schedule = wrap_around(inst, virt.virtual_schedule);
  out.virtual_schedule = std::move(virt.virtual_schedule);
  out.account = std::move(virt.account);
  return out;
}

}  // namespace psched
