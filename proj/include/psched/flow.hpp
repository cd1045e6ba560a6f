#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "psched/instance.hpp"
#include "psched/rational.hpp"

namespace psched {

/// w(U_t) == 0: every λ gives the same cuts, so no largest breakpoint exists.
class DegeneratePriceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class NodeKind { kSource, kHub, kSink, kJob };

struct FlowNode {
  NodeKind kind;
  JobId job = 0;  // meaningful for kJob only
};

enum class ArcKind {
  kSupply,      // (A,B), capacity m
  kRelease,     // (B,j) for available j, capacity 1
  kPrecedence,  // (j,k) between unfinished jobs, unbounded
  kDemand,      // (j,Z), capacity λ·w_j
};

/// Capacity is base + per_lambda·λ; precedence arcs are unbounded and ignore
/// both fields.
struct FlowArc {
  std::size_t from;
  std::size_t to;
  ArcKind kind;
  Rational base;
  Rational per_lambda;
};

/// The network D_t over U_t ∪ {A, B, Z} with capacities linear in λ = 1/π.
///
/// Node 0 is A, 1 is B, 2 is Z; job nodes follow in ascending job index.
/// Arcs are stored in a fixed order: (A,B), the (B,j) arcs, the precedence
/// arcs, then the (j,Z) arcs.
class FlowNetwork {
 public:
  static constexpr std::size_t kSourceNode = 0;
  static constexpr std::size_t kHubNode = 1;
  static constexpr std::size_t kSinkNode = 2;

  FlowNetwork(std::size_t machines, JobSet unfinished, JobSet available, std::vector<FlowNode> nodes,
              std::vector<FlowArc> arcs);

  std::size_t machines() const { return machines_; }
  const JobSet& unfinished() const { return unfinished_; }
  const JobSet& available() const { return available_; }
  const std::vector<FlowNode>& nodes() const { return nodes_; }
  const std::vector<FlowArc>& arcs() const { return arcs_; }
  std::size_t node_count() const { return nodes_.size(); }

  /// Node index of an unfinished job; throws std::out_of_range otherwise.
  std::size_t node_of(JobId job) const;
  std::string node_label(std::size_t node) const;

  /// Index of the (B,job) / (job,Z) arc.
  std::size_t release_arc(JobId job) const;
  std::size_t demand_arc(JobId job) const;

  bool is_unbounded(std::size_t arc) const { return arcs_.at(arc).kind == ArcKind::kPrecedence; }
  /// Finite capacity at λ. Unbounded arcs report the sentinel.
  Rational capacity(std::size_t arc, const Rational& lambda) const;
  /// Stand-in for +∞: one more than the sum of all finite capacities at λ,
  /// so it exceeds every cut that avoids precedence arcs.
  Rational sentinel(const Rational& lambda) const;

  /// Sum of the per-λ coefficients, i.e. w(U_t).
  Rational demand_weight() const;

  /// Copy with the (A,B) capacity and (B,j) capacities replaced by constants.
  /// `release` is indexed like available().
  FlowNetwork with_supply(const Rational& supply, const std::vector<Rational>& release) const;

 private:
  std::size_t machines_;
  JobSet unfinished_;
  JobSet available_;
  std::vector<FlowNode> nodes_;
  std::vector<FlowArc> arcs_;
  std::vector<std::size_t> job_node_;  // job -> node, or npos
};

FlowNetwork build_network(const Instance& inst, const JobSet& unfinished);

struct Flow {
  std::vector<Rational> arc_flow;  // indexed like FlowNetwork::arcs()
  Rational value;
};

struct Cut {
  std::vector<char> source_side;  // indexed by node
  Rational capacity;
};

struct MaxFlowResult {
  Flow flow;
  /// Canonical minimal source side: nodes reachable from A in the residual graph.
  Cut min_cut;
};

/// Maximum A-Z flow at λ > 0. Augments along shortest residual paths, ties
/// broken by the lexicographically smallest node sequence, so the result is a
/// deterministic function of (network, λ).
MaxFlowResult max_flow(const FlowNetwork& net, const Rational& lambda);

/// Largest minimum cut for a maximum flow: every node that cannot reach Z in
/// the residual graph.
Cut maximal_min_cut(const FlowNetwork& net, const Rational& lambda, const Flow& flow);

/// Capacity of the cut as a + b·λ. Empty when a precedence arc leaves the
/// source side.
struct CutLine {
  Rational constant;
  Rational slope;
};
std::optional<CutLine> cut_line(const FlowNetwork& net, const std::vector<char>& source_side);

/// Checks 0 <= flow <= capacity on every arc and conservation at every node
/// other than A and Z. Returns the first violation.
std::optional<std::string> find_flow_violation(const FlowNetwork& net, const Rational& lambda,
                                               const Flow& flow);

struct BreakpointSearch {
  Rational price;                  // π_t = 1/λ*
  Rational lambda;                 // λ*
  std::vector<Rational> iterates;  // every λ at which a max flow was solved
};

/// Discrete Newton search for λ*, the smallest λ at which ({A}, rest) is a
/// minimum cut. Starts at λ = m / w(U_t), where the all-demand cut costs
/// exactly m, and moves up along the min-cut lines until the min cut reaches
/// m. Requires |F_t| > m; throws DegeneratePriceError when w(U_t) == 0.
BreakpointSearch largest_breakpoint(const FlowNetwork& net);

/// π_t = 1/λ* for the given machine count.
Rational largest_breakpoint_price(const FlowNetwork& net, std::size_t machines);

/// DOT digraph with one arc per line, labelled "flow | capacity".
std::string to_dot(const FlowNetwork& net, const Rational& lambda, const Flow& flow);

/// Instrumentation hook: while alive, every max_flow call on this thread is
/// reported to `observer`.
class ScopedMaxFlowObserver {
 public:
  using Observer = std::function<void(const FlowNetwork&, const Rational&, const MaxFlowResult&)>;
  explicit ScopedMaxFlowObserver(Observer observer);
  ~ScopedMaxFlowObserver();
  ScopedMaxFlowObserver(const ScopedMaxFlowObserver&) = delete;
  ScopedMaxFlowObserver& operator=(const ScopedMaxFlowObserver&) = delete;

 private:
  Observer observer_;
  ScopedMaxFlowObserver* previous_;
  friend MaxFlowResult max_flow(const FlowNetwork&, const Rational&);
};

}  // namespace psched
