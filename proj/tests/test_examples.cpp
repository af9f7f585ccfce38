// Small worked cases for each module's operations.
#include <gtest/gtest.h>

#include "adlv/checker.hpp"
#include "adlv/parser.hpp"
#include "adlv/transform.hpp"
#include "adlv/uppaal.hpp"
#include "support/corpus.hpp"
#include "support/fixture.hpp"

using namespace adlv;

namespace {

Status status(const Network& net, const std::string& query) {
  return Checker(net).check(parse_queries(query).at(0)).status;
}

const Location& loc(const TimedAutomaton& ta, const std::string& name) {
  return ta.locations.at(ta.find_location(name).value());
}

AnalysisFunction function_of(const std::string& body) {
  return parse_model("faa M {\n" + body + "\n}").functions.at(0);
}

}  // namespace

// ---- timed automata ------------------------------------------------------

TEST(TaExamples, Diagnostics) {
  Network n = fixture::toy_responder(5);
  n.automata[1].locations[1].invariant = {{"y", ExprOp::Ge, 3}};
  ASSERT_FALSE(validate_ta(n).empty());
  EXPECT_EQ(validate_ta(n)[0].rule, "INVARIANT-NOT-UPPER");
  EXPECT_TRUE(validate_ta(Network{}).empty());
}

TEST(TaExamples, MaxConstants) {
  Network n;
  TimedAutomaton a;
  a.name = "A";
  a.clocks = {"clk", "idle"};
  a.add_location("L", LocationKind::Normal, {{"clk", ExprOp::Le, 10}});
  Edge e;
  e.clock_guard = {{"clk", ExprOp::Ge, 8}};
  a.edges.push_back(e);
  n.automata.push_back(a);
  const auto m = max_clock_constants(n);
  EXPECT_EQ(m.at("A.clk"), 10);
  EXPECT_EQ(m.at("A.idle"), 0);
  const auto composed =
      attach_observer(fixture::ssu_network(), parse_queries("response C1.RTurn => C6.Run within 50").at(0));
  EXPECT_EQ(max_clock_constants(composed).at("Obs.obstime"), 50);
}

// ---- transform -------------------------------------------------------------

TEST(TransformExamples, BareSkeleton) {
  const auto af = function_of("function F { trigger event exec 0; }");
  const TimedAutomaton ta = transform_af_base(af);
  ASSERT_EQ(ta.locations.size(), 2u);
  ASSERT_EQ(ta.edges.size(), 2u);
  EXPECT_EQ(ta.edges[0].source, ta.initial);
  EXPECT_EQ(ta.edges[0].role, EdgeRole::Read);
  EXPECT_EQ(ta.edges[1].target, ta.initial);
  EXPECT_EQ(ta.edges[1].role, EdgeRole::Write);
}

TEST(TransformExamples, TorqueSensorCopiesAndPublishes) {
  const Network net = fixture::ssu_network();
  const TimedAutomaton* c2 = net.find_automaton("C2");
  bool reads = false, writes = false;
  for (const auto& e : c2->edges) {
    for (const auto& u : e.updates) {
      if (e.role == EdgeRole::Read && u.target == "pos") reads = to_string(u.value) == "TorqueSensor_pos";
      if (e.role == EdgeRole::Write && u.target == "SteeringColumnCalculator_tq") writes = to_string(u.value) == "torque";
    }
  }
  EXPECT_TRUE(reads);
  EXPECT_TRUE(writes);
  // The wheel position reaches the column calculator's cp.
  const TimedAutomaton* c1 = net.find_automaton("C1");
  bool carries = false;
  for (const auto& e : c1->edges)
    for (const auto& u : e.updates)
      carries = carries || (e.role == EdgeRole::Write && u.target == "SteeringColumnCalculator_cp" &&
                            to_string(u.value) == "wp");
  EXPECT_TRUE(carries);
  const TimedAutomaton* c3 = net.find_automaton("C3");
  for (const char* s : {"Idle", "RCal", "LCal", "NCal", "MCal"}) EXPECT_TRUE(c3->find_location(s)) << s;
}

TEST(TransformExamples, ExtendWritesWithoutWriteEdges) {
  const FaaModel m = fixture::ssu_model();
  const auto ctx = TransformContext::build(m);
  TimedAutomaton ta;
  ta.name = "X";
  ta.add_location("L");
  EXPECT_EQ(extend_writes(ta, m.functions[0], m.connectors, ctx), ta);
}

TEST(TransformExamples, TimeRuleArithmetic) {
  const FaaModel m = parse_model(R"(faa M {
  function F { trigger time period 10 exec 2; in trigger port go: int[0..1]; }
  function Z { trigger time period 10 exec 0; in trigger port go: int[0..1]; }
})");
  const auto ctx = TransformContext::build(m);
  const TimedAutomaton f = apply_time_trigger_rule(m.functions[0], ctx);
  EXPECT_EQ(f.locations.size(), 3u);
  EXPECT_EQ(to_string(loc(f, "Run").invariant), "clk <= 2");
  EXPECT_EQ(to_string(loc(f, "Finish").invariant), "clk <= 8");
  bool release = false;
  for (const auto& e : f.edges)
    if (e.role == EdgeRole::Release) release = e.clock_guard == std::vector<ClockAtom>{{"clk", ExprOp::Ge, 8}};
  EXPECT_TRUE(release);
  const TimedAutomaton z = apply_time_trigger_rule(m.functions[1], ctx);
  EXPECT_EQ(to_string(loc(z, "Run").invariant), "clk <= 0");
  EXPECT_TRUE(loc(z, "Run").is_committed());
  EXPECT_EQ(to_string(loc(z, "Finish").invariant), "clk <= 10");

  // Committed Run: only that automaton moves.
  const Network net = transform_faa(parse_model(R"(faa M {
  function Z { trigger time period 10 exec 0; in trigger port go: int[0..1]; }
  function Q { trigger time period 3 exec 1; in trigger port go: int[0..1]; }
  env E { write Z.go := 1 every 10; write Q.go := 1 every 3; }
})"));
  const Checker c(net);
  const auto v = c.check(parse_queries("E<> Z.Run").at(0));
  ASSERT_EQ(v.status, Status::Satisfied);
  ASSERT_TRUE(v.trace);
  const auto succ = c.successors(v.trace->steps.back().state);
  ASSERT_FALSE(succ.empty());
  for (const auto& x : succ) EXPECT_EQ(x.move.parts.at(0).automaton, 0u) << c.label(x.move);
}

TEST(TransformExamples, EventRuleInvariants) {
  const auto ctx = TransformContext::build(parse_model(R"(faa M {
  function A { trigger event exec 2; in trigger port t: int[0..1]; }
  function B { trigger event exec 0; in trigger port t: int[0..1]; }
})"));
  const auto m = parse_model(R"(faa M {
  function A { trigger event exec 2; in trigger port t: int[0..1]; }
  function B { trigger event exec 0; in trigger port t: int[0..1]; }
})");
  EXPECT_EQ(to_string(loc(apply_event_trigger_rule(m.functions[0], ctx), "Run").invariant), "clk <= 2");
  EXPECT_TRUE(loc(apply_event_trigger_rule(m.functions[1], ctx), "Run").is_urgent());
}

TEST(TransformExamples, Refinement) {
  const auto one = function_of(R"(function F {
    trigger event exec 2; in trigger port t: int[0..1];
    annex { state S initial budget 2 {} }
  })");
  const TimedAutomaton base = transform_af_base(AnalysisFunction{one.name, {}, one.ports, one.trigger, {}, {}});
  const TimedAutomaton refined = refine_run(transform_af_base(AnalysisFunction{one.name, {}, one.ports, one.trigger, {}, {}}), "Run", one);
  EXPECT_EQ(refined.locations.size(), base.locations.size());
  EXPECT_EQ(refined.edges.size(), base.edges.size());

  const Network two = transform_faa(parse_model(R"(faa M {
  function F {
    trigger event exec 2; in trigger port t: int[0..1];
    annex { state A initial budget 1 { on true -> B; } state B budget 1 {} }
  }
  env E { write F.t := 1 every 5; }
})"));
  const TimedAutomaton* f = two.find_automaton("F");
  EXPECT_EQ(to_string(loc(*f, "A").invariant), "clk <= 1");
  EXPECT_EQ(to_string(loc(*f, "B").invariant), "clk <= 2");
  EXPECT_EQ(status(two, "A[] F.B imply F.clk <= 2"), Status::Satisfied);
  EXPECT_EQ(status(two, "E<> F.B and F.clk == 2"), Status::Satisfied);
}

TEST(TransformExamples, ZeroBoundObserver) {
  const Network net = fixture::toy_responder(1);
  EXPECT_EQ(status(net, "response req => resp within 0"), Status::Violated);
  EXPECT_EQ(status(net, "response req => resp within 1"), Status::Satisfied);
}

TEST(TransformExamples, Environments) {
  const FaaModel m = parse_model(R"(faa M {
  function B { trigger event exec 1; in trigger port t: int[0..1]; in port w: int[0..3]; }
  env Once { write B.w := 1; }
})");
  const auto ctx = TransformContext::build(m);
  const TimedAutomaton empty = build_env(EnvSpec{"Idle", {}, {}}, m, ctx);
  EXPECT_EQ(empty.locations.size(), 1u);
  EXPECT_TRUE(empty.edges.empty());
  const Network net = transform_faa(m);
  EXPECT_EQ(status(net, "E<> B_w == 1"), Status::Satisfied);
  EXPECT_EQ(status(net, "A[] Once.Loop imply B_w == 1"), Status::Satisfied);
}

TEST(TransformExamples, NetworkCounts) {
  const Network lone = transform_faa(parse_model("faa M { function F { trigger event exec 1; in trigger port t: int[0..1]; } }"));
  EXPECT_EQ(lone.automata.size(), 1u);
  EXPECT_EQ(status(lone, "A[] F.Init"), Status::Satisfied);

  // TIME source feeding an EVENT sink: one channel per connector plus the
  // source's TimeTriggerOut, one global per input port plus ConnectT.
  const Network chain = transform_faa(parse_model(R"(faa M {
  function S { trigger time period 5 exec 1; out port o: int[0..3]; }
  function D { trigger event exec 1; in trigger port t: int[0..3]; in port d: int[0..3]; }
  connect S.o -> D.t;
  connect S.o -> D.d;
})"));
  EXPECT_EQ(chain.automata.size(), 2u);
  EXPECT_EQ(chain.channels.size(), 3u);
  EXPECT_EQ(chain.globals.size(), 3u);
  EXPECT_NE(chain.find_global("D_t"), nullptr);
  EXPECT_NE(chain.find_global("D_d"), nullptr);
  EXPECT_NE(chain.find_global("S_ConnectT"), nullptr);

  // The fixture chain is wired sender-to-reader.
  const Network ssu = fixture::ssu_network();
  auto reads_on = [&](const char* a) {
    for (const auto& e : ssu.find_automaton(a)->edges)
      if (e.role == EdgeRole::Read) return e.action ? e.action->channel : std::string{};
    return std::string{};
  };
  EXPECT_EQ(reads_on("C2"), "SteeringWheel_wp__TorqueSensor_trig");
  EXPECT_EQ(reads_on("C3"), "TorqueSensor_torque__SteeringColumnCalculator_trig");
}

// ---- DBM -------------------------------------------------------------------

TEST(DbmExamples, Init) {
  EXPECT_EQ(dbm_init(0).dim(), 1u);
  EXPECT_EQ(dbm_init(0).at(0, 0), Bound::le(0));
  const Dbm z = dbm_init(2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(z.at(i, j), Bound::le(0));
  for (std::size_t n = 0; n < 6; ++n) EXPECT_FALSE(dbm_init(n).is_empty());
}

TEST(DbmExamples, Canonicalize) {
  Dbm d(3);
  d.set(1, 0, Bound::le(3));
  d.set(2, 1, Bound::le(2));
  d.set(2, 0, Bound::le(10));
  ASSERT_TRUE(d.canonicalize());
  EXPECT_EQ(d.at(2, 0), Bound::le(5));
  EXPECT_EQ(canonicalize(d), d);
  Dbm e(2);
  e.set(1, 0, Bound::le(1));
  e.set(0, 1, Bound::le(-2));
  EXPECT_FALSE(e.canonicalize());
  EXPECT_TRUE(e.is_empty());
}

TEST(DbmExamples, UpAndConstrain) {
  const Dbm u = up(dbm_init(1));
  EXPECT_EQ(u.at(0, 1), Bound::le(0));
  EXPECT_TRUE(u.at(1, 0).infinite);
  Dbm two = up(dbm_init(2));
  EXPECT_EQ(two.at(1, 2), Bound::le(0));
  EXPECT_EQ(up(two), two);
  const Dbm c = constrain(up(dbm_init(1)), 1, ExprOp::Le, 5);
  EXPECT_EQ(c.at(1, 0), Bound::le(5));
  EXPECT_EQ(c.at(0, 1), Bound::le(0));
  EXPECT_TRUE(constrain(up(dbm_init(1)), 1, ExprOp::Lt, 0).is_empty());
  const Dbm eight = constrain(constrain(c, 1, ExprOp::Le, 8), 1, ExprOp::Ge, 5);
  const Dbm at8 = constrain(constrain(constrain(up(dbm_init(1)), 1, ExprOp::Le, 8), 1, ExprOp::Ge, 8), 1, ExprOp::Ge, 8);
  EXPECT_EQ(at8.at(1, 0), Bound::le(8));
  EXPECT_EQ(at8.at(0, 1), Bound::le(-8));
  EXPECT_EQ(eight.at(1, 0), Bound::le(5));
}

TEST(DbmExamples, Reset) {
  Dbm z = up(dbm_init(2));
  z = constrain(constrain(z, 1, ExprOp::Ge, 3), 1, ExprOp::Le, 5);
  EXPECT_EQ(constrain(reset(z, 1, 0), 1, ExprOp::Eq, 0), reset(z, 1, 0));
  const Dbm r = reset(z, 1, 0);
  EXPECT_EQ(r.at(1, 0), Bound::le(0));
  EXPECT_EQ(r.at(2, 0), Bound::le(5));
  EXPECT_EQ(r.at(0, 2), Bound::le(-3));
  EXPECT_EQ(r.at(2, 1), Bound::le(5));
  EXPECT_EQ(r.at(1, 2), Bound::le(-3));
  EXPECT_EQ(reset(reset(z, 1, 0), 2, 0), dbm_init(2));
}

TEST(DbmExamples, InclusionAndExtrapolation) {
  EXPECT_TRUE(includes(up(dbm_init(1)), dbm_init(1)));
  EXPECT_FALSE(includes(dbm_init(1), up(dbm_init(1))));
  const Dbm z = constrain(up(dbm_init(1)), 1, ExprOp::Le, 12);
  EXPECT_TRUE(extrapolate(z, {0, 10}).at(1, 0).infinite);
  const Dbm w = constrain(up(dbm_init(1)), 1, ExprOp::Le, 7);
  EXPECT_EQ(extrapolate(w, {0, 10}), w);
}

// ---- checker ---------------------------------------------------------------

TEST(CheckerExamples, InitialStates) {
  Network n;
  TimedAutomaton a;
  a.name = "A";
  a.clocks = {"clk"};
  a.add_location("L", LocationKind::Normal, {{"clk", ExprOp::Le, 5}});
  n.automata.push_back(a);
  const auto s = Checker(n).initial_state();
  EXPECT_EQ(s.zone.at(1, 0), Bound::le(5));
  EXPECT_EQ(s.zone.at(0, 1), Bound::le(0));
  n.automata[0].locations[0].kind = LocationKind::Committed;
  EXPECT_EQ(Checker(n).initial_state().zone.at(1, 0), Bound::le(0));

  const Checker ssu(fixture::ssu_network());
  const auto s0 = ssu.initial_state();
  for (std::size_t i = 0; i < s0.locations.size(); ++i)
    EXPECT_EQ(ssu.network().automata[i].locations[static_cast<std::size_t>(s0.locations[i])].name,
              ssu.network().automata[i].name == "PerfectClock" ? "Loop" : "Init");
}

TEST(CheckerExamples, Broadcast) {
  Network n = fixture::toy_responder(5);
  n.automata.pop_back();  // no receivers for req
  const Checker c(n);
  auto s = c.initial_state();
  s.zone = constrain(s.zone, 1, ExprOp::Ge, 10);
  const auto succ = c.successors(s);
  ASSERT_EQ(succ.size(), 1u);
  EXPECT_EQ(succ[0].move.parts.size(), 1u);
  EXPECT_EQ(succ[0].move.channel, "req");

  Network two = fixture::toy_responder(5);
  two.automata.push_back(two.automata[1]);
  two.automata.back().name = "Resp2";
  const Checker c2(two);
  auto t = c2.initial_state();
  t.zone = constrain(t.zone, 1, ExprOp::Ge, 10);
  const auto succ2 = c2.successors(t);
  ASSERT_EQ(succ2.size(), 1u);
  EXPECT_EQ(succ2[0].move.parts.size(), 3u);

  // A receiver that never listens does not block the sender.
  Network deaf = fixture::toy_responder(5);
  deaf.automata[1].edges[0].guard = make_bool(false);
  EXPECT_EQ(status(deaf, "A[] not deadlock"), Status::Satisfied);
}

TEST(CheckerExamples, TrivialQueries) {
  const Network n = fixture::toy_responder(5);
  const auto f = Checker(n).check(parse_queries("A[] false").at(0));
  EXPECT_EQ(f.status, Status::Violated);
  ASSERT_TRUE(f.trace);
  EXPECT_EQ(f.trace->steps.size(), 1u);
  EXPECT_EQ(status(n, "E<> false"), Status::Violated);
  const auto i = Checker(n).check(parse_queries("E<> Req.Loop and Resp.Idle").at(0));
  EXPECT_EQ(i.status, Status::Satisfied);
  ASSERT_TRUE(i.trace);
  EXPECT_EQ(i.trace->steps.size(), 1u);
  EXPECT_EQ(status(n, "Resp.Busy --> Resp.Busy"), Status::Satisfied);
  EXPECT_EQ(status(fixture::ssu_network(), "E<> C3.RCal"), Status::Satisfied);

  Network still;
  TimedAutomaton a;
  a.name = "A";
  a.add_location("L");
  still.automata.push_back(a);
  EXPECT_EQ(Checker(still).check_deadlock_free().status, Status::Violated);
}

TEST(CheckerExamples, LassoWithoutGoal) {
  Network n;
  TimedAutomaton a;
  a.name = "A";
  a.clocks = {"x"};
  a.add_location("P0", LocationKind::Normal, {{"x", ExprOp::Le, 1}});
  a.add_location("P1", LocationKind::Normal, {{"x", ExprOp::Le, 1}});
  a.add_location("Q");
  Edge e;
  e.source = 0;
  e.target = 1;
  e.resets = {{"x", 0}};
  a.edges.push_back(e);
  e.source = 1;
  e.target = 0;
  a.edges.push_back(e);
  n.automata.push_back(a);
  const auto v = Checker(n).check(parse_queries("A.P0 or A.P1 --> A.Q").at(0));
  EXPECT_EQ(v.status, Status::Violated);
  ASSERT_TRUE(v.trace && v.trace->loop_start);
  EXPECT_EQ(v.message, "cycle avoids the goal");
}

TEST(CheckerExamples, TimeRuleExplorationTerminates) {
  const Network net = transform_faa(parse_model(R"(faa M {
  function F { trigger time period 10 exec 2; in trigger port go: int[0..1]; }
  env E { write F.go := 1 every 1; }
})"));
  const auto v = Checker(net).check_deadlock_free();
  EXPECT_EQ(v.status, Status::Satisfied);
  EXPECT_LT(v.stats.states_stored, 1000u);
}

TEST(CheckerExamples, ObserverTraceExceedsBound) {
  const Checker c(fixture::toy_responder(5));
  const auto v = c.check(parse_queries("response req => resp within 4").at(0));
  ASSERT_EQ(v.status, Status::Violated);
  ASSERT_TRUE(v.trace && v.trace_network);
  const Checker composed(*v.trace_network);
  EXPECT_TRUE(composed.eval(v.trace->steps.back().state, parse_expression("Obs.obstime > 4"), Reading::Universal));
}

TEST(CheckerExamples, AtomReadings) {
  Network n;
  TimedAutomaton a;
  a.name = "A";
  a.clocks = {"clk"};
  a.add_location("L", LocationKind::Normal, {{"clk", ExprOp::Le, 2}});
  n.automata.push_back(a);
  const Checker c(n);
  SymbolicState s = c.initial_state();
  EXPECT_TRUE(c.eval(s, parse_expression("A.clk <= 2"), Reading::Universal));
  s.zone = constrain(up(dbm_init(1)), 1, ExprOp::Le, 3);
  EXPECT_FALSE(c.eval(s, parse_expression("A.clk <= 2"), Reading::Universal));
  EXPECT_TRUE(c.eval(s, parse_expression("A.clk <= 2"), Reading::Existential));
  EXPECT_TRUE(c.eval(s, parse_expression("A.L"), Reading::Universal));
}

// ---- export ----------------------------------------------------------------

TEST(UppaalExamples, Documents) {
  const std::string empty = export_xml(Network{}).xml;
  EXPECT_NE(empty.find("<declaration></declaration>"), std::string::npos);
  const FaaModel m = parse_model("faa M { function system { trigger event exec 1; in trigger port t: int[0..1]; } }");
  const auto out = export_xml(transform_faa(m));
  ASSERT_EQ(out.warnings.size(), 1u);
  EXPECT_NE(out.xml.find("system_v"), std::string::npos);
  const auto qs = parse_queries("A[] not deadlock\nC3.Idle --> C3.RCal or C3.LCal or C3.NCal or C3.MCal\n");
  EXPECT_EQ(export_queries(qs), "A[] not deadlock\nC3.Idle --> (C3.RCal or C3.LCal or C3.NCal or C3.MCal)\n");
}
