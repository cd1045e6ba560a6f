#include "oracles.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>

namespace psched::testing {

Rational opt_single_dp(const Instance& inst) {
  const std::size_t n = inst.job_count();
  if (n > 20) throw std::invalid_argument("opt_single_dp: too many jobs");
  std::vector<std::uint32_t> pred_mask(n, 0);
  for (const auto& [a, b] : inst.precedences()) pred_mask[b] |= 1u << a;

  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  std::vector<std::optional<Rational>> best(std::size_t{1} << n);
  std::vector<Rational> length(std::size_t{1} << n);
  best[0] = Rational();
  for (std::uint32_t s = 0; s <= full; ++s) {
    if (!best[s]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint32_t bit = 1u << j;
      if ((s & bit) || (pred_mask[j] & ~s)) continue;
      const std::uint32_t t = s | bit;
      length[t] = length[s] + inst.processing_time(j);
      const Rational value = *best[s] + inst.weight(j) * length[t];
      if (!best[t] || value < *best[t]) best[t] = value;
    }
    if (s == full) break;
  }
  return *best[full];
}

std::optional<Rational> breakpoint_by_cut_enumeration(const FlowNetwork& net) {
  const JobSet& jobs = net.unfinished();
  const std::size_t k = jobs.size();
  if (k > 16) throw std::invalid_argument("breakpoint_by_cut_enumeration: too many job nodes");
  const Rational m(static_cast<long>(net.machines()));

  std::vector<char> is_available(net.node_count(), 0);
  for (JobId j : net.available()) is_available[net.node_of(j)] = 1;

  std::optional<Rational> lambda;
  bool ok = true;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    std::vector<char> side(net.node_count(), 0);
    side[FlowNetwork::kSourceNode] = 1;
    side[FlowNetwork::kHubNode] = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (1u << i)) side[net.node_of(jobs[i])] = 1;
    }
    bool closed = true;
    for (const auto& arc : net.arcs()) {
      if (arc.kind == ArcKind::kPrecedence && side[arc.from] && !side[arc.to]) closed = false;
    }
    if (!closed) continue;

    // capacity a + bλ: one per available job left out, λ w_j per job inside.
    Rational a;
    Rational b;
    for (const auto& arc : net.arcs()) {
      if (!side[arc.from] || side[arc.to]) continue;
      a += arc.base;
      b += arc.per_lambda;
    }
    if (a >= m) continue;
    if (b.sign() == 0) {
      ok = false;
      continue;
    }
    const Rational needed = (m - a) / b;
    if (!lambda || *lambda < needed) lambda = needed;
  }
  if (!ok) return std::nullopt;
  return lambda;
}

bool is_linear_extension(const Instance& inst, const std::vector<JobId>& order) {
  const std::size_t n = inst.job_count();
  if (order.size() != n) return false;
  std::vector<std::size_t> position(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (order[i] >= n || position[order[i]] != n) return false;
    position[order[i]] = i;
  }
  for (const auto& [a, b] : inst.precedences()) {
    if (position[a] > position[b]) return false;
  }
  return true;
}

std::vector<Rational> chain_bounds_recursive(const Instance& inst) {
  const std::size_t n = inst.job_count();
  std::vector<std::optional<Rational>> memo(n);
  std::function<Rational(JobId)> chain = [&](JobId j) -> Rational {
    if (memo[j]) return *memo[j];
    Rational best;
    for (JobId k = 0; k < n; ++k) {
      if (inst.has_precedence(k, j)) best = max(best, chain(k));
    }
    memo[j] = best + inst.processing_time(j);
    return *memo[j];
  };
  std::vector<Rational> out(n);
  for (JobId j = 0; j < n; ++j) out[j] = chain(j);
  return out;
}

}  // namespace psched::testing
