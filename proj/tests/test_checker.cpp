#include <gtest/gtest.h>

#include "adlv/checker.hpp"
#include "adlv/parser.hpp"
#include "adlv/transform.hpp"
#include "support/corpus.hpp"
#include "support/criteria.hpp"
#include "support/fixture.hpp"

using namespace adlv;

namespace {

// Terse network builder for hand-written cases.
struct Builder {
  Network net;

  TimedAutomaton& automaton(const std::string& name, std::vector<std::string> clocks = {"x"}) {
    net.automata.emplace_back();
    net.automata.back().name = name;
    net.automata.back().clocks = std::move(clocks);
    return net.automata.back();
  }
  static Edge& edge(TimedAutomaton& ta, std::size_t from, std::size_t to) {
    ta.edges.emplace_back();
    ta.edges.back().source = from;
    ta.edges.back().target = to;
    return ta.edges.back();
  }
};

Status status(const Network& net, const std::string& query, const CheckOptions& opts = {}) {
  return Checker(net).check(parse_queries(query).at(0), opts).status;
}

// L0 {x <= 5} --x >= 3--> L1
Network window() {
  Builder b;
  auto& a = b.automaton("A");
  a.add_location("L0", LocationKind::Normal, {{"x", ExprOp::Le, 5}});
  a.add_location("L1");
  Builder::edge(a, 0, 1).clock_guard = {{"x", ExprOp::Ge, 3}};
  return b.net;
}

}  // namespace

TEST(Checker, ClockWindow) {
  const Network n = window();
  EXPECT_EQ(status(n, "E<> A.L1 and A.x == 3"), Status::Satisfied);
  EXPECT_EQ(status(n, "E<> A.L1 and A.x < 3"), Status::Violated);
  EXPECT_EQ(status(n, "A[] A.L0 imply A.x <= 5"), Status::Satisfied);
  EXPECT_EQ(status(n, "A[] A.L1 imply A.x >= 3"), Status::Satisfied);
  EXPECT_EQ(status(n, "A[] A.L1 imply A.x <= 7"), Status::Violated);
  EXPECT_EQ(status(n, "A[] not deadlock"), Status::Violated);  // L1 has no edges
}

TEST(Checker, InitialStateAndSuccessors) {
  const Checker c(window());
  const auto s0 = c.initial_state();
  EXPECT_EQ(s0.locations, std::vector<std::int32_t>{0});
  EXPECT_TRUE(c.eval(s0, parse_expression("A.x == 5"), Reading::Existential));
  EXPECT_FALSE(c.eval(s0, parse_expression("A.x <= 4"), Reading::Universal));
  const auto succ = c.successors(s0);
  ASSERT_EQ(succ.size(), 1u);
  EXPECT_EQ(succ[0].state.locations, std::vector<std::int32_t>{1});
  EXPECT_EQ(c.label(succ[0].move), "tau {A: L0->L1}");
}

TEST(Checker, BroadcastNeverBlocks) {
  Builder b;
  b.net.channels = {"go"};
  b.net.globals = {{"v", DataType::int_range(0, 3), 0, {}}};
  auto& s = b.automaton("S");
  s.add_location("I");
  s.add_location("F");
  auto& e = Builder::edge(s, 0, 1);
  e.action = ChannelAction{"go", true};
  e.updates = {{"v", make_int(1), {}}};
  for (const char* name : {"R1", "R2"}) {
    auto& r = b.automaton(name);
    r.add_location("I");
    r.add_location("F");
    auto& g = Builder::edge(r, 0, 1);
    g.action = ChannelAction{"go", false};
    // R2 only listens when v == 1; guards read the pre-state, so it never does.
    if (std::string(name) == "R2") g.guard = parse_expression("v == 1");
    else g.updates = {{"v", parse_expression("v + 1"), {}}};
  }
  EXPECT_EQ(status(b.net, "E<> S.F and R1.F and R2.I and v == 2"), Status::Satisfied);
  EXPECT_EQ(status(b.net, "E<> R2.F"), Status::Violated);
  EXPECT_EQ(status(b.net, "E<> S.F and R1.I"), Status::Violated);
}

TEST(Checker, CommittedPriorityAndUrgency) {
  Builder b;
  auto& a = b.automaton("A");
  a.add_location("S");
  a.add_location("C", LocationKind::Committed);
  a.add_location("E");
  Builder::edge(a, 0, 1).resets = {{"x", 0}};
  Builder::edge(a, 1, 2);
  auto& o = b.automaton("B");
  o.add_location("P");
  o.add_location("Q", LocationKind::Urgent);
  o.add_location("R");
  Builder::edge(o, 0, 1).resets = {{"x", 0}};
  Builder::edge(o, 1, 2);
  const Checker c(b.net);
  for (const auto& s : c.successors(c.initial_state())) {
    if (s.state.locations[0] != 1) continue;
    // Only the committed automaton may move.
    const auto next = c.successors(s.state);
    ASSERT_EQ(next.size(), 1u);
    EXPECT_EQ(c.label(next[0].move), "tau {A: C->E}");
  }
  EXPECT_EQ(status(b.net, "E<> A.C and B.Q"), Status::Satisfied);  // B went first
  EXPECT_EQ(status(b.net, "A[] B.Q imply B.x == 0"), Status::Satisfied);
  EXPECT_EQ(status(b.net, "A[] A.C imply A.x == 0"), Status::Satisfied);
  EXPECT_EQ(status(b.net, "E<> B.P and A.x > 0"), Status::Satisfied);
  EXPECT_EQ(status(b.net, "E<> B.R and B.x > 0"), Status::Satisfied);
}

TEST(Checker, LeadsToAndTimeDivergence) {
  Builder b;
  auto& a = b.automaton("A");
  a.add_location("L0");
  a.add_location("L1");
  Builder::edge(a, 0, 1).clock_guard = {{"x", ExprOp::Ge, 1}};
  EXPECT_EQ(status(b.net, "A.L0 --> A.L1"), Status::Violated);  // may idle forever
  b.net.automata[0].locations[0].invariant = {{"x", ExprOp::Le, 2}};
  EXPECT_EQ(status(b.net, "A.L0 --> A.L1"), Status::Satisfied);

  // A cycle avoiding the goal yields a lasso.
  auto& ta = b.net.automata[0];
  ta.add_location("L2", LocationKind::Normal, {{"x", ExprOp::Le, 1}});
  Builder::edge(ta, 0, 2).resets = {{"x", 0}};
  Builder::edge(ta, 2, 0);
  const auto v = Checker(b.net).check(parse_queries("A.L0 --> A.L1").at(0));
  EXPECT_EQ(v.status, Status::Violated);
  ASSERT_TRUE(v.trace);
  EXPECT_TRUE(v.trace->loop_start.has_value());
}

TEST(Checker, DeadlockIsExact) {
  Builder b;
  auto& a = b.automaton("A");
  a.add_location("L0", LocationKind::Normal, {{"x", ExprOp::Le, 3}});
  Builder::edge(a, 0, 0).clock_guard = {{"x", ExprOp::Ge, 2}};
  b.net.automata[0].edges[0].resets = {{"x", 0}};
  EXPECT_EQ(status(b.net, "A[] not deadlock"), Status::Satisfied);
  // Guard beyond the invariant: the edge can never fire.
  b.net.automata[0].edges[0].clock_guard = {{"x", ExprOp::Gt, 3}};
  const auto v = Checker(b.net).check_deadlock_free();
  EXPECT_EQ(v.status, Status::Violated);
  EXPECT_EQ(v.message, "deadlock reachable");
  ASSERT_TRUE(v.trace);
}

TEST(Checker, RangeErrorsAreReported) {
  Builder b;
  b.net.globals = {{"v", DataType::int_range(0, 1), 0, {}}};
  auto& a = b.automaton("A", {});
  a.add_location("L");
  Builder::edge(a, 0, 0).updates = {{"v", parse_expression("v + 1"), {}}};
  const auto v = Checker(b.net).check(parse_queries("A[] v <= 1").at(0));
  EXPECT_EQ(v.status, Status::Violated);
  EXPECT_NE(v.message.find("range error"), std::string::npos) << v.message;
  EXPECT_THROW(Checker(b.net).successors(Checker(b.net).successors(Checker(b.net).initial_state())[0].state), RangeError);
}

TEST(Checker, BudgetGivesUnknown) {
  CheckOptions tiny;
  tiny.max_states = 10;
  const auto v = Checker(fixture::ssu_network()).check_deadlock_free(tiny);
  EXPECT_EQ(v.status, Status::Unknown);
  EXPECT_FALSE(v.message.empty());
}

TEST(Checker, TypeErrors) {
  const Checker c(window());
  EXPECT_THROW(c.check(parse_queries("E<> Nope.L0").at(0)), TypeError);
  EXPECT_THROW(c.check(parse_queries("E<> A.x").at(0)), TypeError);
  Network bad = window();
  bad.channels = {"c"};
  bad.automata[0].edges[0].action = ChannelAction{"c", false};
  EXPECT_THROW(Checker{bad}, TypeError);
}

TEST(Checker, SearchOrderAndSubsumptionAgree) {
  CheckOptions dfs;
  dfs.order = SearchOrder::Dfs;
  CheckOptions plain;
  plain.subsumption = false;
  for (std::uint64_t seed = 200; seed < 230; ++seed) {
    const auto c = corpus::make_case(seed);
    const Checker checker(c.net);
    for (const auto& q : c.queries) {
      const auto ref = checker.check(q).status;
      EXPECT_EQ(checker.check(q, dfs).status, ref) << seed << ": " << q.label;
      EXPECT_EQ(checker.check(q, plain).status, ref) << seed << ": " << q.label;
    }
  }
}

TEST(Checker, AgreesWithUnitStepOracle) {
  const auto o = criteria::checker_against_oracle(40);
  EXPECT_TRUE(o.pass) << o.detail;
}

TEST(Checker, ReachabilityWitnessesReplay) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto c = corpus::make_case(seed);
    const Checker checker(c.net);
    for (const auto& q : c.queries) {
      const auto v = checker.check(q);
      if (!v.trace) continue;
      std::string why;
      EXPECT_TRUE(corpus::replays(checker, *v.trace, &why)) << seed << ": " << q.label << ": " << why;
    }
  }
}

TEST(BoundedResponse, ToyBoundary) {
  const auto o = criteria::observer_boundary();
  EXPECT_TRUE(o.pass) << o.detail;
  const Checker c(fixture::toy_responder(5));
  const auto unbounded = c.check(parse_queries("response req => resp within inf").at(0));
  EXPECT_EQ(unbounded.status, Status::Satisfied);
}

TEST(BoundedResponse, NeverAnsweredIsViolated) {
  Network n = fixture::toy_responder(5);
  n.automata[1].edges.pop_back();  // responder never answers
  n.automata[1].locations[1].invariant.clear();
  const Checker c(n);
  EXPECT_EQ(c.check(parse_queries("response req => resp within 10").at(0)).status, Status::Violated);
  const auto v = c.check(parse_queries("response req => resp within inf").at(0));
  EXPECT_EQ(v.status, Status::Violated);
  ASSERT_TRUE(v.trace_network);
}

TEST(Ssu, FixtureSuite) {
  const auto o = criteria::ssu_suite();
  EXPECT_TRUE(o.pass) << o.detail;
}

TEST(Ssu, ExtraQueries) {
  const Checker c(fixture::ssu_network());
  for (const auto& q : fixture::ssu_extra_queries()) EXPECT_EQ(c.check(q).status, Status::Satisfied) << q.label;
}

TEST(Ssu, TightResponseBound) {
  const Checker c(fixture::ssu_network());
  const auto tight = c.check(parse_queries("response C1.RTurn => C6.Run within 21").at(0));
  EXPECT_EQ(tight.status, Status::Satisfied);
  const auto v = c.check(parse_queries("response C1.RTurn => C6.Run within 20").at(0));
  ASSERT_EQ(v.status, Status::Violated);
  ASSERT_TRUE(v.trace && v.trace_network);
  std::string why;
  EXPECT_TRUE(corpus::replays(Checker(*v.trace_network), *v.trace, &why)) << why;
  const std::string text = format_trace(Checker(*v.trace_network), *v.trace);
  EXPECT_EQ(text.rfind("0. init", 0), 0u) << text.substr(0, 80);
  EXPECT_NE(text.find("Obs"), std::string::npos);
}

TEST(Ssu, SubsumptionShrinksTheSearch) {
  CheckOptions off;
  off.subsumption = false;
  const Checker c(fixture::ssu_network());
  const auto a = c.check_deadlock_free();
  const auto b = c.check_deadlock_free(off);
  EXPECT_EQ(a.status, b.status);
  EXPECT_LT(a.stats.states_stored, b.stats.states_stored);
}
