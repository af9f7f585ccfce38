#include <gtest/gtest.h>

#include <algorithm>

#include "adlv/fuzz.hpp"
#include "adlv/parser.hpp"
#include "adlv/transform.hpp"
#include "support/criteria.hpp"
#include "support/fixture.hpp"

using namespace adlv;

namespace {

const char* kPair = R"(faa Pair {
  function Src {
    trigger time period 8 exec 3;
    in trigger port go: int[0..1];
    out port v: int[0..3];
    annex {
      state S initial {
        on true / v := 2 -> T;
      }
      state T {}
    }
  }
  function Dst as D {
    trigger event exec 2;
    in trigger port t: int[0..1];
    in port w: int[0..3];
    out port r: int[0..3];
    annex {
      compute r := w;
    }
  }
  connect Src.v -> Dst.t;
  connect Src.v -> Dst.w;
  env Clock {
    write Src.go := 1 every 4;
  }
}
)";

const Edge* only_edge(const TimedAutomaton& ta, EdgeRole role) {
  const Edge* found = nullptr;
  for (const auto& e : ta.edges) {
    if (e.role != role) continue;
    if (found) return nullptr;
    found = &e;
  }
  return found;
}

const Location& loc(const TimedAutomaton& ta, const std::string& name) {
  return ta.locations.at(ta.find_location(name).value());
}

}  // namespace

TEST(Transform, GlobalsAndChannels) {
  const Network net = transform_faa(parse_model(kPair));
  ASSERT_NE(net.find_global("Dst_t"), nullptr);
  ASSERT_NE(net.find_global("Dst_w"), nullptr);
  EXPECT_EQ(net.find_global("Dst_w")->type, DataType::int_range(0, 3));
  EXPECT_NE(net.find_global("Src_go"), nullptr);
  EXPECT_EQ(net.find_global("Src_ConnectT")->initial, 1);
  EXPECT_TRUE(net.has_channel("Src_v__Dst_t"));
  EXPECT_TRUE(net.has_channel("Src_v__Dst_w"));
  EXPECT_TRUE(net.has_channel("Src_TimeTriggerOut"));
  EXPECT_EQ(net.aliases.at("Src_v__Dst_t"), "EventTriggerOut");
  EXPECT_EQ(net.aliases.at("Src_TimeTriggerOut"), "TimeTriggerOut");
  EXPECT_TRUE(validate_ta(net).empty());
}

TEST(Transform, EventFunction) {
  const Network net = transform_faa(parse_model(kPair));
  const TimedAutomaton* d = net.find_automaton("D");
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(d->template_or_name(), "Dst");
  EXPECT_EQ(d->locations[d->initial].name, "Init");
  EXPECT_EQ(loc(*d, "Run").invariant, (std::vector<ClockAtom>{{"clk", ExprOp::Le, 2}}));
  EXPECT_EQ(d->final_exec, d->find_location("Run"));

  const Edge* read = only_edge(*d, EdgeRole::Read);
  ASSERT_NE(read, nullptr);
  EXPECT_EQ(read->source, d->initial);
  EXPECT_TRUE(read->receives());
  EXPECT_EQ(read->action->channel, "Src_v__Dst_t");
  EXPECT_EQ(to_string(read->guard), "Dst_t == 1");
  EXPECT_EQ(read->resets, (std::vector<ClockReset>{{"clk", 0}}));

  // No outgoing connectors: the write only deactivates the trigger.
  const Edge* write = only_edge(*d, EdgeRole::Write);
  ASSERT_NE(write, nullptr);
  ASSERT_FALSE(write->updates.empty());
  EXPECT_EQ(write->updates.back().target, "Dst_t");
  EXPECT_EQ(to_string(write->updates.back().value), "0");
  EXPECT_EQ(write->target, d->initial);
}

TEST(Transform, TimeFunctionWithAnnex) {
  const Network net = transform_faa(parse_model(kPair));
  const TimedAutomaton* s = net.find_automaton("Src");
  ASSERT_NE(s, nullptr);
  for (const char* l : {"S", "T"}) EXPECT_EQ(to_string(loc(*s, l).invariant), "clk <= 3") << l;
  EXPECT_EQ(s->final_exec, s->find_location("T"));  // single final state, no Done
  EXPECT_EQ(to_string(loc(*s, "Finish").invariant), "clk <= 5");

  const Edge* release = only_edge(*s, EdgeRole::Release);
  ASSERT_NE(release, nullptr);
  EXPECT_EQ(release->target, s->initial);
  EXPECT_EQ(release->action, (ChannelAction{"Src_TimeTriggerOut", true}));
  EXPECT_EQ(release->clock_guard, (std::vector<ClockAtom>{{"clk", ExprOp::Ge, 5}}));

  // Write carries both connector payloads, then a committed notify chain in connector order.
  const Edge* write = only_edge(*s, EdgeRole::Write);
  ASSERT_NE(write, nullptr);
  EXPECT_EQ(s->locations[write->source].name, "T");
  std::vector<std::string> targets;
  for (const auto& u : write->updates) targets.push_back(u.target);
  EXPECT_EQ(targets, (std::vector<std::string>{"Dst_t", "Dst_w", "Src_go"}));
  std::vector<std::string> chain;
  std::size_t at = write->target;
  while (s->locations[at].is_committed() && s->locations[at].name != "Done") {
    const auto it = std::find_if(s->edges.begin(), s->edges.end(),
                                 [&](const Edge& e) { return e.source == at && e.role == EdgeRole::Notify; });
    ASSERT_NE(it, s->edges.end());
    chain.push_back(it->action->channel);
    at = it->target;
  }
  EXPECT_EQ(chain, (std::vector<std::string>{"Src_v__Dst_t", "Src_v__Dst_w"}));
  EXPECT_EQ(s->locations[at].name, "Finish");
}

TEST(Transform, Environment) {
  const Network net = transform_faa(parse_model(kPair));
  const TimedAutomaton* env = net.find_automaton("Clock");
  ASSERT_NE(env, nullptr);
  EXPECT_EQ(to_string(loc(*env, "Loop").invariant), "x0 <= 4");
  const Edge* write = only_edge(*env, EdgeRole::Env);
  ASSERT_NE(write, nullptr);
  EXPECT_EQ(write->clock_guard, (std::vector<ClockAtom>{{"x0", ExprOp::Ge, 4}}));
  EXPECT_EQ(write->updates.at(0).target, "Src_go");
}

TEST(Transform, RuleFunctionsThrowOnBadInput) {
  AnalysisFunction f = parse_model(kPair).functions[0];
  f.trigger.period = 3;
  const auto ctx = TransformContext::build(parse_model(kPair));
  EXPECT_THROW(apply_time_trigger_rule(f, ctx), RuleError);
  f.trigger.period.reset();
  EXPECT_THROW(apply_time_trigger_rule(f, ctx), RuleError);
  AnalysisFunction g = parse_model(kPair).functions[0];
  EXPECT_THROW(refine_run(transform_af_base(g), "Nowhere", g), RefineError);
}

TEST(Transform, ShapeCheckCatchesTampering) {
  const FaaModel m = parse_model(kPair);
  Network net = transform_faa(m);
  EXPECT_TRUE(check_shape(net, m).empty());
  for (auto& e : net.find_automaton("D")->edges)
    if (e.role == EdgeRole::Write) e.updates.pop_back();
  EXPECT_FALSE(check_shape(net, m).empty());
}

TEST(Transform, FixtureShape) {
  const FaaModel m = fixture::ssu_model();
  const Network net = transform_faa(m);
  EXPECT_TRUE(check_shape(net, m).empty());
  EXPECT_TRUE(validate_ta(net).empty());
  EXPECT_EQ(net.automata.size(), 7u);
  for (const char* a : {"C1", "C2", "C3", "C4", "C5", "C6", "PerfectClock"}) EXPECT_NE(net.find_automaton(a), nullptr) << a;
}

TEST(Transform, FuzzedModelsKeepShape) {
  const auto o = criteria::transform_shapes(60);
  EXPECT_TRUE(o.pass) << o.detail;
}

TEST(Observer, Structure) {
  const TimedAutomaton obs = build_observer("a", "b", 4);
  EXPECT_EQ(obs.name, "Obs");
  EXPECT_EQ(obs.clocks, std::vector<std::string>{"obstime"});
  ASSERT_TRUE(obs.find_location("error"));
  EXPECT_TRUE(loc(obs, "Run").invariant.empty());
  EXPECT_EQ(obs.edges.size(), 3u);
  const auto it = std::find_if(obs.edges.begin(), obs.edges.end(),
                               [&](const Edge& e) { return e.target == *obs.find_location("error"); });
  ASSERT_NE(it, obs.edges.end());
  EXPECT_EQ(it->clock_guard, (std::vector<ClockAtom>{{"obstime", ExprOp::Gt, 4}}));
  const TimedAutomaton unbounded = build_observer("a", "b", std::nullopt);
  EXPECT_TRUE(unbounded.find_location("error"));
  EXPECT_EQ(unbounded.edges.size(), 2u);
}

TEST(Observer, LocationEventsAreInstrumented) {
  const Network base = fixture::ssu_network();
  const auto q = parse_queries("response C1.RTurn => C6.Run within 50").at(0);
  const Network net = attach_observer(base, q);
  EXPECT_EQ(net.automata.size(), base.automata.size() + 1);
  EXPECT_TRUE(net.has_channel("obs_C1_RTurn"));
  EXPECT_TRUE(net.has_channel("obs_C6_Run"));
  // The read into C6.Run already synchronises, so a committed probe announces it.
  const TimedAutomaton* c6 = net.find_automaton("C6");
  ASSERT_TRUE(c6->find_location("Run_probe1"));
  EXPECT_TRUE(loc(*c6, "Run_probe1").is_committed());
  EXPECT_TRUE(validate_ta(net).empty());
  EXPECT_THROW(attach_observer(net, q), ObserverError);
  EXPECT_THROW(attach_observer(base, parse_queries("response Nope.X => C6.Run within 5").at(0)), ObserverError);
  EXPECT_THROW(attach_observer(base, parse_queries("response C1.RTurn and C1.Sense => C6.Run within 5").at(0)),
               ObserverError);
}

TEST(Observer, LeadsToForm) {
  const Query q = observer_leads_to();
  EXPECT_EQ(q.kind, QueryKind::LeadsTo);
  EXPECT_EQ(to_string(q), "Obs.Run --> Obs.Init");
}
