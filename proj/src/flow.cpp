#include "psched/flow.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "psched/schedule.hpp"

namespace psched {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

thread_local ScopedMaxFlowObserver* current_observer = nullptr;

struct ResidualEdge {
  std::size_t to;
  std::size_t arc;
  bool forward;
};

/// Residual view of the network at a fixed λ.
class Residual {
 public:
  Residual(const FlowNetwork& net, const Rational& lambda) : net_(net) {
    const auto& arcs = net.arcs();
    const Rational unbounded = net.sentinel(lambda);
    capacity_.reserve(arcs.size());
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      capacity_.push_back(net.is_unbounded(a) ? unbounded : net.capacity(a, lambda));
    }
    forward_ = capacity_;
    backward_.assign(arcs.size(), Rational());
    adjacency_.assign(net.node_count(), {});
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      adjacency_[arcs[a].from].push_back({arcs[a].to, a, true});
      adjacency_[arcs[a].to].push_back({arcs[a].from, a, false});
    }
    for (auto& list : adjacency_) {
      std::sort(list.begin(), list.end(), [](const ResidualEdge& x, const ResidualEdge& y) {
        return x.to != y.to ? x.to < y.to : (x.arc != y.arc ? x.arc < y.arc : x.forward && !y.forward);
      });
    }
  }

  const Rational& residual(const ResidualEdge& e) const {
    return e.forward ? forward_[e.arc] : backward_[e.arc];
  }

  /// BFS from A, neighbours in ascending node order; returns parent edges.
  std::vector<const ResidualEdge*> search() const {
    std::vector<const ResidualEdge*> parent(net_.node_count(), nullptr);
    std::vector<char> seen(net_.node_count(), 0);
    std::deque<std::size_t> queue{FlowNetwork::kSourceNode};
    seen[FlowNetwork::kSourceNode] = 1;
    while (!queue.empty() && !seen[FlowNetwork::kSinkNode]) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (const auto& e : adjacency_[u]) {
        if (seen[e.to] || residual(e).sign() <= 0) continue;
        seen[e.to] = 1;
        parent[e.to] = &e;
        queue.push_back(e.to);
      }
    }
    return parent;
  }

  std::vector<char> reachable_from_source() const {
    std::vector<char> seen(net_.node_count(), 0);
    std::vector<std::size_t> stack{FlowNetwork::kSourceNode};
    seen[FlowNetwork::kSourceNode] = 1;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (const auto& e : adjacency_[u]) {
        if (!seen[e.to] && residual(e).sign() > 0) {
          seen[e.to] = 1;
          stack.push_back(e.to);
        }
      }
    }
    return seen;
  }

  /// Nodes with a residual path to Z.
  std::vector<char> reaching_sink() const {
    std::vector<char> seen(net_.node_count(), 0);
    std::vector<std::size_t> stack{FlowNetwork::kSinkNode};
    seen[FlowNetwork::kSinkNode] = 1;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      // A residual edge u -> v is the reverse of some adjacency entry of v.
      for (const auto& e : adjacency_[v]) {
        const ResidualEdge reverse{v, e.arc, !e.forward};
        if (!seen[e.to] && residual(reverse).sign() > 0) {
          seen[e.to] = 1;
          stack.push_back(e.to);
        }
      }
    }
    return seen;
  }

  Rational augment_all() {
    Rational value;
    for (;;) {
      const auto parent = search();
      if (parent[FlowNetwork::kSinkNode] == nullptr) break;
      std::optional<Rational> bottleneck;
      for (std::size_t v = FlowNetwork::kSinkNode; v != FlowNetwork::kSourceNode;) {
        const ResidualEdge* e = parent[v];
        if (!bottleneck || residual(*e) < *bottleneck) bottleneck = residual(*e);
        v = e->forward ? net_.arcs()[e->arc].from : net_.arcs()[e->arc].to;
      }
      for (std::size_t v = FlowNetwork::kSinkNode; v != FlowNetwork::kSourceNode;) {
        const ResidualEdge* e = parent[v];
        if (e->forward) {
          forward_[e->arc] -= *bottleneck;
          backward_[e->arc] += *bottleneck;
          v = net_.arcs()[e->arc].from;
        } else {
          forward_[e->arc] += *bottleneck;
          backward_[e->arc] -= *bottleneck;
          v = net_.arcs()[e->arc].to;
        }
      }
      value += *bottleneck;
    }
    return value;
  }

  /// Loads an existing flow (used to recover cuts for a given flow).
  void load(const Flow& flow) {
    for (std::size_t a = 0; a < capacity_.size(); ++a) {
      backward_[a] = flow.arc_flow.at(a);
      forward_[a] = capacity_[a] - flow.arc_flow[a];
    }
  }

  const std::vector<Rational>& flows() const { return backward_; }
  const std::vector<Rational>& capacities() const { return capacity_; }

 private:
  const FlowNetwork& net_;
  std::vector<Rational> capacity_;
  std::vector<Rational> forward_;
  std::vector<Rational> backward_;  // equals the current arc flow
  std::vector<std::vector<ResidualEdge>> adjacency_;
};

Cut make_cut(const FlowNetwork& net, const Residual& residual, std::vector<char> side) {
  Cut cut{std::move(side), Rational()};
  const auto& arcs = net.arcs();
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    if (cut.source_side[arcs[a].from] && !cut.source_side[arcs[a].to]) {
      if (net.is_unbounded(a)) throw InternalError("minimum cut crosses a precedence arc");
      cut.capacity += residual.capacities()[a];
    }
  }
  return cut;
}

}  // namespace

FlowNetwork::FlowNetwork(std::size_t machines, JobSet unfinished, JobSet available,
                         std::vector<FlowNode> nodes, std::vector<FlowArc> arcs)
    : machines_(machines),
      unfinished_(std::move(unfinished)),
      available_(std::move(available)),
      nodes_(std::move(nodes)),
      arcs_(std::move(arcs)) {
  std::size_t max_job = 0;
  for (const auto& node : nodes_) {
    if (node.kind == NodeKind::kJob) max_job = std::max(max_job, node.job + 1);
  }
  job_node_.assign(max_job, kNone);
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    if (nodes_[v].kind == NodeKind::kJob) job_node_[nodes_[v].job] = v;
  }
}

std::size_t FlowNetwork::node_of(JobId job) const {
  if (job >= job_node_.size() || job_node_[job] == kNone) {
    throw std::out_of_range("job " + std::to_string(job) + " is not in the network");
  }
  return job_node_[job];
}

std::string FlowNetwork::node_label(std::size_t node) const {
  switch (nodes_.at(node).kind) {
    case NodeKind::kSource: return "A";
    case NodeKind::kHub: return "B";
    case NodeKind::kSink: return "Z";
    case NodeKind::kJob: return std::to_string(nodes_[node].job);
  }
  return "?";
}

std::size_t FlowNetwork::release_arc(JobId job) const {
  const std::size_t v = node_of(job);
  for (std::size_t a = 0; a < arcs_.size(); ++a) {
    if (arcs_[a].kind == ArcKind::kRelease && arcs_[a].to == v) return a;
  }
  throw std::out_of_range("job " + std::to_string(job) + " is not available");
}

std::size_t FlowNetwork::demand_arc(JobId job) const {
  const std::size_t v = node_of(job);
  for (std::size_t a = 0; a < arcs_.size(); ++a) {
    if (arcs_[a].kind == ArcKind::kDemand && arcs_[a].from == v) return a;
  }
  throw std::out_of_range("job " + std::to_string(job) + " has no demand arc");
}

Rational FlowNetwork::sentinel(const Rational& lambda) const {
  Rational total(1);
  for (const auto& arc : arcs_) {
    if (arc.kind != ArcKind::kPrecedence) total += arc.base + arc.per_lambda * lambda;
  }
  return total;
}

Rational FlowNetwork::capacity(std::size_t arc, const Rational& lambda) const {
  const auto& a = arcs_.at(arc);
  if (a.kind == ArcKind::kPrecedence) return sentinel(lambda);
  return a.base + a.per_lambda * lambda;
}

Rational FlowNetwork::demand_weight() const {
  Rational total;
  for (const auto& arc : arcs_) total += arc.per_lambda;
  return total;
}

FlowNetwork FlowNetwork::with_supply(const Rational& supply, const std::vector<Rational>& release) const {
  if (release.size() != available_.size()) throw std::invalid_argument("release caps size mismatch");
  FlowNetwork copy = *this;
  std::size_t k = 0;
  for (auto& arc : copy.arcs_) {
    if (arc.kind == ArcKind::kSupply) {
      arc.base = supply;
      arc.per_lambda = Rational();
    } else if (arc.kind == ArcKind::kRelease) {
      arc.base = release.at(k++);
      arc.per_lambda = Rational();
    }
  }
  return copy;
}

FlowNetwork build_network(const Instance& inst, const JobSet& unfinished) {
  if (unfinished.empty()) throw std::invalid_argument("build_network: no unfinished jobs");
  JobSet available = available_set(inst, unfinished);

  std::vector<FlowNode> nodes{{NodeKind::kSource}, {NodeKind::kHub}, {NodeKind::kSink}};
  std::vector<std::size_t> node(inst.job_count(), kNone);
  for (JobId j : unfinished) {
    node[j] = nodes.size();
    nodes.push_back({NodeKind::kJob, j});
  }

  std::vector<FlowArc> arcs;
  arcs.push_back({FlowNetwork::kSourceNode, FlowNetwork::kHubNode, ArcKind::kSupply,
                  Rational(static_cast<long>(inst.machines())), Rational()});
  for (JobId j : available) {
    arcs.push_back({FlowNetwork::kHubNode, node[j], ArcKind::kRelease, Rational(1), Rational()});
  }
  for (JobId j : unfinished) {
    for (JobId k : inst.successors(j)) {
      if (node[k] != kNone) arcs.push_back({node[j], node[k], ArcKind::kPrecedence, Rational(), Rational()});
    }
  }
  for (JobId j : unfinished) {
    arcs.push_back({node[j], FlowNetwork::kSinkNode, ArcKind::kDemand, Rational(), inst.weight(j)});
  }
  return FlowNetwork(inst.machines(), unfinished, std::move(available), std::move(nodes), std::move(arcs));
}

MaxFlowResult max_flow(const FlowNetwork& net, const Rational& lambda) {
  if (lambda.sign() <= 0) throw std::invalid_argument("max_flow: lambda must be positive");
  Residual residual(net, lambda);
  MaxFlowResult out;
  out.flow.value = residual.augment_all();
  out.flow.arc_flow = residual.flows();
  out.min_cut = make_cut(net, residual, residual.reachable_from_source());
  if (out.min_cut.capacity != out.flow.value) throw InternalError("max-flow/min-cut mismatch");
  if (current_observer != nullptr) current_observer->observer_(net, lambda, out);
  return out;
}

Cut maximal_min_cut(const FlowNetwork& net, const Rational& lambda, const Flow& flow) {
  Residual residual(net, lambda);
  residual.load(flow);
  std::vector<char> side = residual.reaching_sink();
  for (auto& s : side) s = !s;
  return make_cut(net, residual, std::move(side));
}

std::optional<CutLine> cut_line(const FlowNetwork& net, const std::vector<char>& source_side) {
  CutLine line;
  for (const auto& arc : net.arcs()) {
    if (!source_side.at(arc.from) || source_side.at(arc.to)) continue;
    if (arc.kind == ArcKind::kPrecedence) return std::nullopt;
    line.constant += arc.base;
    line.slope += arc.per_lambda;
  }
  return line;
}

std::optional<std::string> find_flow_violation(const FlowNetwork& net, const Rational& lambda,
                                               const Flow& flow) {
  const auto& arcs = net.arcs();
  if (flow.arc_flow.size() != arcs.size()) return "flow vector has wrong length";
  std::vector<Rational> balance(net.node_count());
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    const Rational& f = flow.arc_flow[a];
    if (f.sign() < 0) return "negative flow on arc " + std::to_string(a);
    if (!net.is_unbounded(a) && f > net.capacity(a, lambda)) {
      return "flow exceeds capacity on arc " + net.node_label(arcs[a].from) + "->" +
             net.node_label(arcs[a].to);
    }
    balance[arcs[a].from] -= f;
    balance[arcs[a].to] += f;
  }
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    if (v == FlowNetwork::kSourceNode || v == FlowNetwork::kSinkNode) continue;
    if (!balance[v].is_zero()) return "conservation violated at node " + net.node_label(v);
  }
  if (-balance[FlowNetwork::kSourceNode] != flow.value) return "value differs from outflow of A";
  if (balance[FlowNetwork::kSinkNode] != flow.value) return "value differs from inflow of Z";
  return std::nullopt;
}

BreakpointSearch largest_breakpoint(const FlowNetwork& net) {
  const Rational m(static_cast<long>(net.machines()));
  if (net.available().size() <= net.machines()) {
    throw std::invalid_argument("largest_breakpoint: needs more available jobs than machines");
  }
  const Rational total = net.demand_weight();
  if (total.is_zero()) throw DegeneratePriceError("total unfinished weight is zero");

  BreakpointSearch out;
  Rational lambda = m / total;
  for (;;) {
    out.iterates.push_back(lambda);
    const MaxFlowResult result = max_flow(net, lambda);
    if (result.flow.value == m) break;
    const auto line = cut_line(net, result.min_cut.source_side);
    if (!line || line->slope.sign() <= 0) throw InternalError("Newton step on a cut without demand arcs");
    Rational next = (m - line->constant) / line->slope;
    if (next <= lambda) throw InternalError("Newton iterate did not increase");
    lambda = std::move(next);
  }
  out.lambda = lambda;
  out.price = Rational(1) / lambda;
  return out;
}

Rational largest_breakpoint_price(const FlowNetwork& net, std::size_t machines) {
  if (machines != net.machines()) throw std::invalid_argument("machine count differs from network");
  return largest_breakpoint(net).price;
}

std::string to_dot(const FlowNetwork& net, const Rational& lambda, const Flow& flow) {
  std::ostringstream out;
  out << "digraph D {\n";
  for (std::size_t a = 0; a < net.arcs().size(); ++a) {
    const auto& arc = net.arcs()[a];
    out << "  \"" << net.node_label(arc.from) << "\" -> \"" << net.node_label(arc.to) << "\" [label=\""
        << flow.arc_flow.at(a).str() << " | " << (net.is_unbounded(a) ? "inf" : net.capacity(a, lambda).str())
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

ScopedMaxFlowObserver::ScopedMaxFlowObserver(Observer observer)
    : observer_(std::move(observer)), previous_(current_observer) {
  current_observer = this;
}

ScopedMaxFlowObserver::~ScopedMaxFlowObserver() { current_observer = previous_; }

}  // namespace psched
