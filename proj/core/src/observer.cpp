#include <algorithm>
#include <set>

#include "adlv/transform.hpp"

namespace adlv {

namespace {

Edge observer_edge(std::size_t from, std::size_t to) {
  Edge e;
  e.source = from;
  e.target = to;
  e.role = EdgeRole::Observer;
  return e;
}

// Returns the channel that signals `event`, instrumenting the network if the
// event is a location entry.
std::string event_channel(Network& net, const ExprPtr& event) {
  if (!event || event->op != ExprOp::Ident)
    throw ObserverError("response events must be channels or Automaton.Location atoms, got '" +
                        to_string(event) + "'");
  if (event->qualifier.empty()) {
    if (!net.has_channel(event->name)) throw ObserverError("unknown channel '" + event->name + "'");
    return event->name;
  }
  TimedAutomaton* ta = net.find_automaton(event->qualifier);
  if (!ta) throw ObserverError("unknown automaton '" + event->qualifier + "'");
  auto loc = ta->find_location(event->name);
  if (!loc) throw ObserverError("unknown location '" + event->qualified_name() + "'");

  const std::string chan = "obs_" + ta->name + "_" + event->name;
  if (net.has_channel(chan)) return chan;
  net.channels.push_back(chan);
  net.aliases[chan] = "enter " + event->qualified_name();

  std::set<std::string> taken;
  for (const auto& l : ta->locations) taken.insert(l.name);
  const std::size_t original = ta->edges.size();
  int probes = 0;
  for (std::size_t k = 0; k < original; ++k) {
    if (ta->edges[k].target != *loc) continue;
    if (!ta->edges[k].action) {
      ta->edges[k].action = ChannelAction{chan, true};
      continue;
    }
    // The edge already synchronises: announce the entry from a committed probe.
    std::string name = event->name + "_probe" + std::to_string(++probes);
    while (taken.count(name)) name += "_";
    taken.insert(name);
    std::size_t probe = ta->add_location(name, LocationKind::Committed);
    ta->edges[k].target = probe;
    Edge n = observer_edge(probe, *loc);
    n.action = ChannelAction{chan, true};
    ta->edges.push_back(std::move(n));
  }
  return chan;
}

}  // namespace

TimedAutomaton build_observer(const std::string& event1, const std::string& event2,
                              std::optional<std::int64_t> max_time) {
  TimedAutomaton obs;
  obs.name = "Obs";
  obs.clocks = {"obstime"};
  const std::size_t init = obs.add_location("Init");
  // No invariant on Run: the observer must never stop time for the system.
  const std::size_t run = obs.add_location("Run");
  const std::size_t error = obs.add_location("error");
  obs.initial = init;

  Edge req = observer_edge(init, run);
  req.action = ChannelAction{event1, false};
  req.resets.push_back({"obstime", 0});
  obs.edges.push_back(std::move(req));

  Edge resp = observer_edge(run, init);
  resp.action = ChannelAction{event2, false};
  obs.edges.push_back(std::move(resp));

  if (max_time) {
    Edge late = observer_edge(run, error);
    late.clock_guard.push_back(ClockAtom{"obstime", ExprOp::Gt, *max_time});
    obs.edges.push_back(std::move(late));
  }
  return obs;
}

Network attach_observer(Network net, const Query& q) {
  if (q.kind != QueryKind::BoundedResponse) throw ObserverError("not a response query");
  if (q.bound && *q.bound < 0) throw ObserverError("negative response bound");
  if (net.find_automaton("Obs")) throw ObserverError("network already has an automaton named Obs");
  const std::string e1 = event_channel(net, q.first);
  const std::string e2 = event_channel(net, q.second);
  net.automata.push_back(build_observer(e1, e2, q.bound));
  return net;
}

Query observer_leads_to() {
  return Query::leads_to(make_ident("Run", "Obs"), make_ident("Init", "Obs"));
}

namespace {

bool mentions(const ExprPtr& e, const std::string& var) {
  for (const Expr* id : identifiers(e))
    if (id->qualifier.empty() && id->name == var) return true;
  return false;
}

bool resets_clk(const Edge& e) {
  return std::any_of(e.resets.begin(), e.resets.end(),
                     [](const ClockReset& r) { return r.clock == "clk" && r.value == 0; });
}

}  // namespace

std::vector<std::string> check_shape(const Network& net, const FaaModel& model) {
  std::vector<std::string> out;
  const TransformContext ctx = TransformContext::build(model);

  for (const auto& f : model.functions) {
    const std::string fn = f.instance_name();
    const TimedAutomaton* ta = net.find_automaton(fn);
    if (!ta) {
      out.push_back(fn + ": automaton missing");
      continue;
    }
    const bool is_time = f.trigger.policy == TriggerKind::Time;
    auto src_it = ctx.trigger_sources.find(f.name);
    const std::size_t sources = src_it == ctx.trigger_sources.end() ? 0 : src_it->second.size();

    // Reads out of l_0, one per trigger source, each testing the trigger.
    std::size_t reads = 0;
    for (const auto& e : ta->edges) {
      if (e.source != ta->initial) continue;
      if (e.role != EdgeRole::Read) {
        out.push_back(fn + ": non-read edge leaves the initial location");
        continue;
      }
      ++reads;
      bool tests = false;
      if (is_time) tests = mentions(e.guard, ctx.time_tokens.at(f.name));
      if (sources == 0 && !is_time)
        tests = (e.guard && e.guard->op == ExprOp::BoolLit && e.guard->value == 0);
      for (const Port* p : f.trigger_ports())
        if (const auto* g = ctx.port_global(f.name, p->name)) tests = tests || mentions(e.guard, *g);
      if (!tests) out.push_back(fn + ": read edge guard does not test the trigger");
      if (!resets_clk(e)) out.push_back(fn + ": read edge does not reset clk");
    }
    if (reads != std::max<std::size_t>(1, sources))
      out.push_back(fn + ": expected " + std::to_string(std::max<std::size_t>(1, sources)) +
                    " read edges, found " + std::to_string(reads));

    // Writes end by deactivating the trigger.
    std::vector<std::string> deact;
    for (const Port* p : f.trigger_ports())
      if (const auto* g = ctx.port_global(f.name, p->name)) deact.push_back(*g);
    std::size_t writes = 0;
    for (const auto& e : ta->edges) {
      if (e.role != EdgeRole::Write) continue;
      ++writes;
      if (!resets_clk(e)) out.push_back(fn + ": write edge does not reset clk");
      if (e.updates.size() < deact.size()) {
        out.push_back(fn + ": write edge too short to deactivate the trigger");
        continue;
      }
      const std::size_t off = e.updates.size() - deact.size();
      for (std::size_t i = 0; i < deact.size(); ++i) {
        const auto& u = e.updates[off + i];
        if (u.target != deact[i] || !u.value || u.value->op != ExprOp::IntLit || u.value->value != 0)
          out.push_back(fn + ": write edge does not end by deactivating " + deact[i]);
      }
    }
    if (writes != 1) out.push_back(fn + ": expected one write edge, found " + std::to_string(writes));

    // One update per outgoing connector, on write edges only.
    for (const auto& c : model.connectors) {
      if (c.source.function != f.name) continue;
      const std::string* g = ctx.port_global(c.target.function, c.target.port);
      if (!g) continue;
      const bool trig = ctx.trigger_ports.count(c.target.to_string()) > 0;
      auto matches = [&](const Assignment& u) {
        if (u.target != *g || !u.value) return false;
        if (trig) return u.value->op == ExprOp::IntLit && u.value->value == 1;
        return u.value->op == ExprOp::Ident && u.value->name == c.source.port;
      };
      // Parallel connectors into the same destination each contribute an identical update.
      const auto expected = std::count_if(model.connectors.begin(), model.connectors.end(), [&](const Connector& d) {
        return d.source.function == f.name && d.target.to_string() == c.target.to_string() &&
               (trig || d.source.port == c.source.port);
      });
      for (const auto& e : ta->edges) {
        auto n = std::count_if(e.updates.begin(), e.updates.end(), matches);
        if (e.role == EdgeRole::Write && n != expected)
          out.push_back(fn + ": write edge carries " + std::to_string(n) + " updates for " +
                        c.to_string());
        if (e.role != EdgeRole::Write && n != 0)
          out.push_back(fn + ": non-write edge updates " + *g);
      }
    }

    // Timing rules.
    const std::int64_t m = f.trigger.execution_time;
    auto upper = [](const Location& l) -> std::optional<std::int64_t> {
      for (const auto& a : l.invariant)
        if (a.clock == "clk" && a.op == ExprOp::Le) return a.bound;
      return std::nullopt;
    };
    for (const auto& e : ta->edges) {
      if (e.role != EdgeRole::Read) continue;
      auto b = upper(ta->locations[e.target]);
      const bool budgets = std::any_of(f.behavior.state_machine.begin(),
                                       f.behavior.state_machine.end(),
                                       [](const AnnexState& s) { return s.budget.has_value(); });
      if (!b || (budgets ? *b > m : *b != m))
        out.push_back(fn + ": execution location lacks invariant clk <= " + std::to_string(m));
    }
    if (is_time) {
      const std::int64_t slack = *f.trigger.period - m;
      std::size_t releases = 0;
      for (const auto& e : ta->edges) {
        if (e.role != EdgeRole::Release) continue;
        ++releases;
        const auto& fin = ta->locations[e.source];
        if (upper(fin) != slack)
          out.push_back(fn + ": Finish invariant is not clk <= " + std::to_string(slack));
        if (e.clock_guard != std::vector<ClockAtom>{ClockAtom{"clk", ExprOp::Ge, slack}})
          out.push_back(fn + ": release guard is not clk >= " + std::to_string(slack));
        if (!e.emits()) out.push_back(fn + ": release does not emit TimeTriggerOut");
        if (!resets_clk(e)) out.push_back(fn + ": release does not reset clk");
      }
      if (releases != 1) out.push_back(fn + ": expected one release edge");
    }
  }
  return out;
}

}  // namespace adlv
