#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "psched/flow.hpp"
#include "psched/parallel_machine.hpp"

namespace psched {
namespace {

using testing::three_machine_example;

std::size_t count_kind(const FlowNetwork& net, ArcKind kind) {
  std::size_t c = 0;
  for (const auto& a : net.arcs()) c += a.kind == kind;
  return c;
}

TEST(BuildNetwork, ShapeOfFirstEvent) {
  const Instance inst = three_machine_example();
  const FlowNetwork net = build_network(inst, all_jobs(inst));
  EXPECT_EQ(net.node_count(), 9u);
  EXPECT_EQ(count_kind(net, ArcKind::kSupply), 1u);
  EXPECT_EQ(count_kind(net, ArcKind::kRelease), 4u);
  EXPECT_EQ(count_kind(net, ArcKind::kPrecedence), 5u);
  EXPECT_EQ(count_kind(net, ArcKind::kDemand), 6u);
  EXPECT_EQ(net.demand_weight(), Rational(15));
  EXPECT_EQ(net.capacity(0, Rational(1, 2)), Rational(3));
  EXPECT_EQ(net.capacity(net.demand_arc(3), Rational(1, 2)), Rational(3));
  EXPECT_EQ(net.node_label(FlowNetwork::kSourceNode), "A");
  EXPECT_EQ(net.node_label(net.node_of(4)), "4");
}

TEST(BuildNetwork, DropsFinishedJobs) {
  const Instance inst = three_machine_example();
  const FlowNetwork net = build_network(inst, {2, 4, 5});
  EXPECT_EQ(net.available(), (JobSet{2, 4}));
  EXPECT_EQ(count_kind(net, ArcKind::kPrecedence), 1u);
  EXPECT_THROW(net.node_of(0), std::out_of_range);
}

TEST(MaxFlow, AtThePrice) {
  const Instance inst = three_machine_example();
  const FlowNetwork net = build_network(inst, all_jobs(inst));
  const MaxFlowResult r = max_flow(net, Rational(2, 9));
  EXPECT_EQ(r.flow.value, Rational(3));
  EXPECT_EQ(r.min_cut.capacity, Rational(3));
  EXPECT_FALSE(find_flow_violation(net, Rational(2, 9), r.flow));
}

TEST(MaxFlow, TinyLambdaCutsEveryDemandArc) {
  const Instance inst = three_machine_example();
  const FlowNetwork net = build_network(inst, all_jobs(inst));
  const Rational lambda(1, 1000);
  const MaxFlowResult r = max_flow(net, lambda);
  EXPECT_EQ(r.flow.value, Rational(15, 1000));
  for (JobId j = 0; j < 6; ++j) EXPECT_EQ(r.flow.arc_flow[net.demand_arc(j)], lambda * inst.weight(j));
  const Cut big = maximal_min_cut(net, lambda, r.flow);
  for (std::size_t v = 0; v < net.node_count(); ++v) EXPECT_EQ(big.source_side[v] != 0, v != FlowNetwork::kSinkNode);
}

TEST(MaxFlow, RejectsNonPositiveLambda) {
  const Instance inst = three_machine_example();
  const FlowNetwork net = build_network(inst, all_jobs(inst));
  EXPECT_THROW(max_flow(net, Rational(0)), std::invalid_argument);
}

TEST(MaxFlow, DeterministicAcrossCalls) {
  const Instance inst = testing::random_instance(3, 10, 2);
  const FlowNetwork net = build_network(inst, all_jobs(inst));
  const MaxFlowResult a = max_flow(net, Rational(1, 7));
  const MaxFlowResult b = max_flow(net, Rational(1, 7));
  EXPECT_EQ(a.flow.arc_flow, b.flow.arc_flow);
  EXPECT_EQ(a.min_cut.source_side, b.min_cut.source_side);
}

TEST(FlowViolation, DetectsBrokenFlows) {
  const Instance inst = three_machine_example();
  const FlowNetwork net = build_network(inst, all_jobs(inst));
  Flow f = max_flow(net, Rational(2, 9)).flow;
  f.arc_flow[net.release_arc(0)] += Rational(1, 2);
  EXPECT_TRUE(find_flow_violation(net, Rational(2, 9), f));
  Flow g = max_flow(net, Rational(2, 9)).flow;
  g.arc_flow[net.demand_arc(5)] = Rational(-1);
  EXPECT_TRUE(find_flow_violation(net, Rational(2, 9), g));
}

TEST(Breakpoint, PriceOfFirstEvent) {
  const Instance inst = three_machine_example();
  const FlowNetwork net = build_network(inst, all_jobs(inst));
  const BreakpointSearch s = largest_breakpoint(net);
  EXPECT_EQ(s.price, Rational(9, 2));
  EXPECT_EQ(s.lambda, Rational(2, 9));
  EXPECT_EQ(s.iterates, (std::vector<Rational>{Rational(1, 5), Rational(2, 9)}));
  EXPECT_EQ(largest_breakpoint_price(net, 3), Rational(9, 2));
  EXPECT_EQ(testing::breakpoint_by_cut_enumeration(net), Rational(2, 9));
}

TEST(Breakpoint, Errors) {
  const Instance few(2, {{1, 1}, {1, 1}}, {});
  EXPECT_THROW(largest_breakpoint(build_network(few, {0, 1})), std::invalid_argument);
  const Instance weightless(1, {{1, 0}, {1, 0}}, {});
  EXPECT_THROW(largest_breakpoint(build_network(weightless, {0, 1})), DegeneratePriceError);
  const Instance inst = three_machine_example();
  EXPECT_THROW(largest_breakpoint_price(build_network(inst, all_jobs(inst)), 2), std::invalid_argument);
}

TEST(Dot, OneArcPerLine) {
  const Instance inst = three_machine_example();
  const FlowNetwork net = build_network(inst, all_jobs(inst));
  const std::string dot = to_dot(net, Rational(2, 9), max_flow(net, Rational(2, 9)).flow);
  EXPECT_EQ(dot.rfind("digraph D {\n", 0), 0u);
  EXPECT_NE(dot.find("\"A\" -> \"B\" [label=\"3 | 3\"];"), std::string::npos);
  EXPECT_NE(dot.find("| inf\"];"), std::string::npos);
  EXPECT_EQ(std::count(dot.begin(), dot.end(), '\n'), static_cast<long>(net.arcs().size()) + 2);
}

class FlowFuzz : public ::testing::TestWithParam<std::uint64_t> {};

// Every max flow solved while computing parallel rates satisfies capacity,
// conservation and max-flow = min-cut, and the Newton price agrees with
// exhaustive cut enumeration.
TEST_P(FlowFuzz, NewtonMatchesCutEnumeration) {
  const std::uint64_t seed = GetParam();
  const Instance inst = testing::random_instance(seed, 10, 1 + seed % 3);
  ScopedMaxFlowObserver observer([](const FlowNetwork& net, const Rational& lambda, const MaxFlowResult& r) {
    EXPECT_EQ(r.flow.value, r.min_cut.capacity);
    EXPECT_FALSE(find_flow_violation(net, lambda, r.flow));
  });

  JobSet unfinished = all_jobs(inst);
  while (!unfinished.empty()) {
    const ParallelRateDetail d = parallel_rate_detail(inst, unfinished);
    if (d.breakpoint) {
      EXPECT_LE(d.breakpoint->iterates.size(), unfinished.size());
      EXPECT_EQ(testing::breakpoint_by_cut_enumeration(*d.network), d.breakpoint->lambda);
    }
    // Drop the lowest available job and look at the next unfinished set.
    const JobSet avail = available_set(inst, unfinished);
    unfinished.erase(std::find(unfinished.begin(), unfinished.end(), avail.front()));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, FlowFuzz, ::testing::Range<std::uint64_t>(0, 60));

}  // namespace
}  // namespace psched
