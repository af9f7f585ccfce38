#include "adlv/transform.hpp"

#include <algorithm>
#include <set>

namespace adlv {

std::string port_global_name(const std::string& fn, const std::string& port) {
  return fn + "_" + port;
}

namespace {

const DataType kFlag = DataType::int_range(0, 1);

std::string unique_name(std::string base, const std::set<std::string>& taken) {
  while (taken.count(base)) base += "_";
  return base;
}

std::string claim(std::string base, std::set<std::string>& taken) {
  std::string n = unique_name(std::move(base), taken);
  taken.insert(n);
  return n;
}

std::set<std::string> location_names(const TimedAutomaton& ta) {
  std::set<std::string> out;
  for (const auto& l : ta.locations) out.insert(l.name);
  return out;
}

std::set<std::string> annex_names(const AnalysisFunction& af) {
  std::set<std::string> out;
  for (const auto& s : af.behavior.state_machine) out.insert(s.name);
  return out;
}

ExprPtr eq(const std::string& var, std::int64_t v) {
  return make_binary(ExprOp::Eq, make_ident(var), make_int(v));
}

Assignment assign(const std::string& target, ExprPtr value) {
  return Assignment{target, std::move(value), {}};
}

TimedAutomaton function_shell(const AnalysisFunction& af, bool timed) {
  TimedAutomaton ta;
  ta.name = af.instance_name();
  ta.template_name = af.name;
  if (timed) ta.clocks.push_back("clk");
  for (const auto& p : af.ports) ta.data_vars.push_back(VariableDecl{p.name, p.type, p.type.lo, {}});
  for (const auto& v : af.behavior.parameters) ta.data_vars.push_back(v);
  return ta;
}

// READ(P_in): copy every input port's global into the local of the same name,
// then run the computation constraints.
std::vector<Assignment> read_updates(const AnalysisFunction& af, const TransformContext* ctx) {
  std::vector<Assignment> out;
  for (const Port* p : af.inputs()) {
    if (p->is_trigger) continue;
    if (ctx) {
      if (const auto* g = ctx->port_global(af.name, p->name)) out.push_back(assign(p->name, make_ident(*g)));
    } else {
      out.push_back(assign(p->name, make_ident(port_global_name(af.name, p->name))));
    }
  }
  for (const auto& a : af.behavior.computations) out.push_back(a);
  return out;
}

std::vector<std::string> trigger_globals(const AnalysisFunction& af, const TransformContext* ctx) {
  std::vector<std::string> out;
  for (const Port* p : af.trigger_ports()) {
    if (!ctx) {
      out.push_back(port_global_name(af.name, p->name));
    } else if (const auto* g = ctx->port_global(af.name, p->name)) {
      out.push_back(*g);
    }
  }
  return out;
}

std::vector<Assignment> trigger_reset(const AnalysisFunction& af, const TransformContext* ctx) {
  std::vector<Assignment> out;
  for (const auto& g : trigger_globals(af, ctx)) out.push_back(assign(g, make_int(0)));
  return out;
}

ExprPtr any_trigger_active(const AnalysisFunction& af, const TransformContext* ctx) {
  std::vector<ExprPtr> parts;
  for (const auto& g : trigger_globals(af, ctx)) parts.push_back(eq(g, 1));
  return make_or(parts);
}

Edge make_edge(std::size_t from, std::size_t to, EdgeRole role) {
  Edge e;
  e.source = from;
  e.target = to;
  e.role = role;
  return e;
}

const std::vector<TriggerSource>& sources_of(const TransformContext& ctx, const std::string& fn) {
  static const std::vector<TriggerSource> none;
  auto it = ctx.trigger_sources.find(fn);
  return it == ctx.trigger_sources.end() ? none : it->second;
}

const std::string& source_global(const TransformContext& ctx, const std::string& fn,
                                 const TriggerSource& s) {
  return *ctx.port_global(fn, s.port);
}

}  // namespace

const std::string* TransformContext::port_global(const std::string& fn,
                                                 const std::string& port) const {
  auto it = port_globals.find(fn + "." + port);
  return it == port_globals.end() ? nullptr : &it->second;
}

TransformContext TransformContext::build(const FaaModel& model) {
  TransformContext ctx;
  ctx.globals = model.globals;
  std::set<std::string> names;
  for (const auto& g : model.globals) names.insert(g.name);

  std::set<std::string> connected;
  for (const auto& c : model.connectors) connected.insert(c.target.to_string());
  if (model.environment)
    for (const auto& w : model.environment->writes) connected.insert(w.target.to_string());

  for (const auto& f : model.functions) {
    if (f.trigger.policy == TriggerKind::Time) {
      std::string tok = claim(f.name + "_ConnectT", names);
      ctx.globals.push_back(VariableDecl{tok, kFlag, 1, {}});
      ctx.time_tokens[f.name] = tok;
    }
    for (const Port* p : f.inputs()) {
      const std::string key = f.name + "." + p->name;
      if (!connected.count(key)) continue;
      std::string g = claim(port_global_name(f.name, p->name), names);
      ctx.globals.push_back(
          VariableDecl{g, p->is_trigger ? kFlag : p->type, p->is_trigger ? 0 : p->type.lo, {}});
      ctx.port_globals[key] = g;
      if (p->is_trigger) ctx.trigger_ports.insert(key);
    }
  }

  std::set<std::string> chans;
  auto add_channel = [&](std::string base, const std::string& alias) {
    std::string c = claim(std::move(base), chans);
    ctx.channels.push_back(c);
    ctx.aliases[c] = alias;
    return c;
  };
  for (const auto& c : model.connectors) {
    const Port* dst = model.find_port(c.target);
    bool trig = dst && dst->is_trigger;
    std::string ch = add_channel(c.source.function + "_" + c.source.port + "__" +
                                     c.target.function + "_" + c.target.port,
                                 trig ? "EventTriggerOut" : "DataOut");
    ctx.connector_channels.push_back(ch);
    if (trig) ctx.trigger_sources[c.target.function].push_back(TriggerSource{ch, c.target.port});
  }
  if (model.environment) {
    const auto& env = *model.environment;
    for (std::size_t i = 0; i < env.writes.size(); ++i) {
      const auto& w = env.writes[i];
      const Port* dst = model.find_port(w.target);
      const auto* fn = model.find_function(w.target.function);
      bool trig = dst && dst->is_trigger;
      std::string alias = !trig ? "DataOut"
                          : (fn && fn->trigger.policy == TriggerKind::Time) ? "TimeTriggerIn"
                                                                             : "DesiredEventTrigger";
      std::string ch = add_channel(env.name + "_w" + std::to_string(i) + "__" +
                                       w.target.function + "_" + w.target.port,
                                   alias);
      ctx.env_channels.push_back(ch);
      if (trig) ctx.trigger_sources[w.target.function].push_back(TriggerSource{ch, w.target.port});
    }
  }
  for (const auto& f : model.functions)
    if (f.trigger.policy == TriggerKind::Time)
      ctx.time_out_channels[f.name] = add_channel(f.name + "_TimeTriggerOut", "TimeTriggerOut");
  return ctx;
}

TimedAutomaton refine_run(TimedAutomaton ta, const std::string& run, const AnalysisFunction& af) {
  const auto& ba = af.behavior;
  if (!ba.has_state_machine()) return ta;
  const AnnexState* init = ba.initial_state();
  if (!init) throw AnnexError(af.name, "annex state machine has no initial state");
  auto run_idx = ta.find_location(run);
  if (!run_idx) throw RefineError(af.name, "no location '" + run + "' to refine");

  const std::int64_t etime = af.trigger.execution_time;
  bool any_budget = false;
  std::int64_t total = 0;
  for (const auto& s : ba.state_machine)
    if (s.budget) {
      any_budget = true;
      total += *s.budget;
    }
  if (any_budget && total != etime)
    throw RefineError(af.name, "state budgets sum to " + std::to_string(total) +
                                   " but execution time is " + std::to_string(etime));
  std::vector<const AnnexState*> finals;
  for (const auto& s : ba.state_machine)
    if (s.is_final()) finals.push_back(&s);
  if (finals.empty()) throw RefineError(af.name, "annex state machine has no final state");

  const Location run_loc = ta.locations[*run_idx];
  const bool timed = ta.has_clock("clk");

  // New location table: Run's slot is taken by the annex states in declaration order.
  std::vector<Location> locs;
  std::vector<std::size_t> remap(ta.locations.size());
  std::map<std::string, std::size_t> state_idx;
  std::int64_t prefix = 0;
  for (std::size_t i = 0; i < ta.locations.size(); ++i) {
    if (i != *run_idx) {
      remap[i] = locs.size();
      locs.push_back(ta.locations[i]);
      continue;
    }
    for (const auto& s : ba.state_machine) {
      prefix += s.budget.value_or(0);
      Location l{s.name, run_loc.kind, {}};
      if (timed) l.invariant.push_back(ClockAtom{"clk", ExprOp::Le, any_budget ? prefix : etime});
      state_idx[s.name] = locs.size();
      locs.push_back(std::move(l));
    }
  }
  std::size_t exit = state_idx.at(finals.front()->name);
  if (finals.size() > 1) {
    std::set<std::string> taken;
    for (const auto& l : locs) taken.insert(l.name);
    exit = locs.size();
    locs.push_back(Location{unique_name("Done", taken), LocationKind::Committed, {}});
  }
  const std::size_t entry = state_idx.at(init->name);

  std::vector<Edge> edges;
  for (auto e : ta.edges) {
    e.source = e.source == *run_idx ? exit : remap[e.source];
    e.target = e.target == *run_idx ? entry : remap[e.target];
    edges.push_back(std::move(e));
  }
  for (const auto& s : ba.state_machine) {
    for (const auto& t : s.transitions) {
      Edge e = make_edge(state_idx.at(s.name), state_idx.at(t.target), EdgeRole::Internal);
      if (!is_true_literal(t.guard)) e.guard = t.guard;
      e.updates = t.assignments;
      edges.push_back(std::move(e));
    }
  }
  if (finals.size() > 1)
    for (const auto* s : finals) edges.push_back(make_edge(state_idx.at(s->name), exit, EdgeRole::Internal));

  if (ta.initial == *run_idx)
    ta.initial = entry;
  else
    ta.initial = remap[ta.initial];
  if (ta.final_exec) ta.final_exec = *ta.final_exec == *run_idx ? exit : remap[*ta.final_exec];
  ta.locations = std::move(locs);
  ta.edges = std::move(edges);
  return ta;
}

TimedAutomaton transform_af_base(const AnalysisFunction& af) {
  if (af.behavior.has_state_machine() && !af.behavior.initial_state())
    throw AnnexError(af.name, "annex state machine has no initial state");
  TimedAutomaton ta = function_shell(af, false);
  auto taken = annex_names(af);
  const std::size_t l0 = ta.add_location(claim("Init", taken));
  // Entered by the read edge and left by the write edge; both atomic.
  const std::size_t lf = ta.add_location(claim("Run", taken), LocationKind::Committed);
  ta.initial = l0;
  ta.final_exec = lf;

  Edge read = make_edge(l0, lf, EdgeRole::Read);
  read.guard = any_trigger_active(af, nullptr);
  read.updates = read_updates(af, nullptr);
  ta.edges.push_back(std::move(read));

  Edge write = make_edge(lf, l0, EdgeRole::Write);
  write.updates = trigger_reset(af, nullptr);
  ta.edges.push_back(std::move(write));

  const std::string run_name = ta.locations[lf].name;
  return refine_run(std::move(ta), run_name, af);
}

TimedAutomaton apply_event_trigger_rule(const AnalysisFunction& af, const TransformContext& ctx) {
  const std::int64_t etime = af.trigger.execution_time;
  if (etime < 0) throw RuleError(af.name, "negative execution time");
  TimedAutomaton ta = function_shell(af, true);
  auto taken = annex_names(af);
  const std::size_t init = ta.add_location(claim("Init", taken));
  const std::size_t run =
      ta.add_location(claim("Run", taken), etime == 0 ? LocationKind::Urgent : LocationKind::Normal,
                      {ClockAtom{"clk", ExprOp::Le, etime}});
  ta.initial = init;
  ta.final_exec = run;

  const auto reads = read_updates(af, &ctx);
  const auto& sources = sources_of(ctx, af.name);
  if (sources.empty()) {
    Edge e = make_edge(init, run, EdgeRole::Read);
    e.guard = any_trigger_active(af, &ctx);
    e.updates = reads;
    e.resets.push_back({"clk", 0});
    ta.edges.push_back(std::move(e));
  }
  for (const auto& s : sources) {
    Edge e = make_edge(init, run, EdgeRole::Read);
    e.guard = eq(source_global(ctx, af.name, s), 1);
    e.action = ChannelAction{s.channel, false};
    e.updates = reads;
    e.resets.push_back({"clk", 0});
    ta.edges.push_back(std::move(e));
  }

  Edge w = make_edge(run, init, EdgeRole::Write);
  w.updates = trigger_reset(af, &ctx);
  w.resets.push_back({"clk", 0});
  ta.edges.push_back(std::move(w));

  const std::string run_name = ta.locations[run].name;
  return refine_run(std::move(ta), run_name, af);
}

TimedAutomaton apply_time_trigger_rule(const AnalysisFunction& af, const TransformContext& ctx) {
  const std::int64_t m = af.trigger.execution_time;
  if (!af.trigger.period) throw RuleError(af.name, "time trigger without period");
  const std::int64_t n = *af.trigger.period;
  if (m < 0) throw RuleError(af.name, "negative execution time");
  if (n <= m) throw RuleError(af.name, "period must exceed execution time");
  auto tok_it = ctx.time_tokens.find(af.name);
  auto out_it = ctx.time_out_channels.find(af.name);
  if (tok_it == ctx.time_tokens.end() || out_it == ctx.time_out_channels.end())
    throw RuleError(af.name, "context has no time-trigger declarations for this function");
  const std::string& connect_t = tok_it->second;

  TimedAutomaton ta = function_shell(af, true);
  std::set<std::string> local_names;
  for (const auto& v : ta.data_vars) local_names.insert(v.name);
  const std::string receive = unique_name("ReceiveTrigg", local_names);
  ta.data_vars.push_back(VariableDecl{receive, kFlag, 0, {}});

  const auto& sources = sources_of(ctx, af.name);
  auto taken = annex_names(af);
  std::vector<ClockAtom> init_inv;
  if (sources.empty()) init_inv.push_back(ClockAtom{"clk", ExprOp::Le, 0});
  const std::size_t init = ta.add_location(claim("Init", taken), LocationKind::Normal, init_inv);
  const std::size_t run =
      ta.add_location(claim("Run", taken), m == 0 ? LocationKind::Committed : LocationKind::Normal,
                      {ClockAtom{"clk", ExprOp::Le, m}});
  const std::size_t finish = ta.add_location(claim("Finish", taken), LocationKind::Normal,
                                             {ClockAtom{"clk", ExprOp::Le, n - m}});
  ta.initial = init;
  ta.final_exec = run;

  std::vector<Assignment> reads{assign(receive, make_ident(connect_t))};
  for (auto& a : read_updates(af, &ctx)) reads.push_back(std::move(a));
  auto read_edge = [&](ExprPtr guard, std::optional<ChannelAction> act) {
    Edge e = make_edge(init, run, EdgeRole::Read);
    e.guard = std::move(guard);
    e.action = std::move(act);
    e.updates = reads;
    e.resets.push_back({"clk", 0});
    ta.edges.push_back(std::move(e));
  };
  if (sources.empty()) read_edge(eq(connect_t, 1), std::nullopt);
  for (const auto& s : sources)
    read_edge(make_and({eq(source_global(ctx, af.name, s), 1), eq(connect_t, 1)}),
              ChannelAction{s.channel, false});

  Edge w = make_edge(run, finish, EdgeRole::Write);
  w.updates = trigger_reset(af, &ctx);
  w.resets.push_back({"clk", 0});
  ta.edges.push_back(std::move(w));

  Edge rel = make_edge(finish, init, EdgeRole::Release);
  rel.clock_guard.push_back(ClockAtom{"clk", ExprOp::Ge, n - m});
  rel.action = ChannelAction{out_it->second, true};
  rel.updates = {assign(connect_t, make_ident(receive)), assign(receive, make_int(0))};
  rel.resets.push_back({"clk", 0});
  ta.edges.push_back(std::move(rel));

  const std::string run_name = ta.locations[run].name;
  return refine_run(std::move(ta), run_name, af);
}

TimedAutomaton extend_writes(TimedAutomaton ta, const AnalysisFunction& source,
                             const std::vector<Connector>& connectors, const TransformContext& ctx) {
  std::vector<Assignment> payload;
  std::vector<std::string> channels;
  for (std::size_t i = 0; i < connectors.size(); ++i) {
    const auto& c = connectors[i];
    if (c.source.function != source.name) continue;
    const std::string* g = ctx.port_global(c.target.function, c.target.port);
    if (!g) continue;
    if (ctx.trigger_ports.count(c.target.to_string()))
      payload.push_back(assign(*g, make_int(1)));
    else
      payload.push_back(assign(*g, make_ident(c.source.port)));
    if (i < ctx.connector_channels.size()) channels.push_back(ctx.connector_channels[i]);
  }
  if (payload.empty()) return ta;

  auto taken = location_names(ta);
  const std::size_t original = ta.edges.size();
  int chain = 0;
  for (std::size_t k = 0; k < original; ++k) {
    if (ta.edges[k].role != EdgeRole::Write) continue;
    ++chain;
    std::vector<Assignment> updates = payload;
    for (auto& u : ta.edges[k].updates) updates.push_back(std::move(u));
    ta.edges[k].updates = std::move(updates);

    const std::size_t dest = ta.edges[k].target;
    std::size_t from = 0;
    for (std::size_t j = 0; j < channels.size(); ++j) {
      std::string base = "Write" + (chain > 1 ? std::to_string(chain) + "_" : std::string()) +
                         std::to_string(j + 1);
      std::size_t loc = ta.add_location(claim(base, taken), LocationKind::Committed);
      if (j == 0)
        ta.edges[k].target = loc;
      else
        ta.edges.back().target = loc;
      from = loc;
      Edge n = make_edge(from, dest, EdgeRole::Notify);
      n.action = ChannelAction{channels[j], true};
      ta.edges.push_back(std::move(n));
    }
  }
  return ta;
}

TimedAutomaton build_env(const EnvSpec& env, const FaaModel& model, const TransformContext& ctx) {
  (void)model;
  TimedAutomaton ta;
  ta.name = env.name;
  std::set<std::string> taken;
  std::vector<std::size_t> once;
  std::vector<std::size_t> periodic;
  for (std::size_t i = 0; i < env.writes.size(); ++i)
    (env.writes[i].period ? periodic : once).push_back(i);

  auto channel = [&](std::size_t i) { return ctx.env_channels.at(i); };
  auto target = [&](std::size_t i) -> const std::string& {
    const auto& w = env.writes[i];
    const std::string* g = ctx.port_global(w.target.function, w.target.port);
    if (!g) throw RuleError(env.name, "no global for " + w.target.to_string());
    return *g;
  };

  std::optional<std::size_t> start;
  if (!once.empty()) start = ta.add_location(claim("Start", taken), LocationKind::Committed);
  std::vector<ClockAtom> inv;
  for (std::size_t i : periodic) {
    std::string clock = "x" + std::to_string(i);
    ta.clocks.push_back(clock);
    inv.push_back(ClockAtom{clock, ExprOp::Le, *env.writes[i].period});
  }
  const std::size_t loop = ta.add_location(claim("Loop", taken), LocationKind::Normal, inv);
  ta.initial = start.value_or(loop);

  // Values land before the notification so receivers see them in their guards.
  if (start) {
    Edge e = make_edge(*start, loop, EdgeRole::Env);
    for (std::size_t i : once) e.updates.push_back(assign(target(i), env.writes[i].value));
    std::size_t k = ta.edges.size();
    ta.edges.push_back(std::move(e));
    for (std::size_t j = 0; j < once.size(); ++j) {
      std::size_t loc = ta.add_location(claim("Once" + std::to_string(j + 1), taken),
                                        LocationKind::Committed);
      if (j == 0)
        ta.edges[k].target = loc;
      else
        ta.edges.back().target = loc;
      Edge n = make_edge(loc, loop, EdgeRole::Notify);
      n.action = ChannelAction{channel(once[j]), true};
      ta.edges.push_back(std::move(n));
    }
  }
  for (std::size_t i : periodic) {
    const std::string clock = "x" + std::to_string(i);
    std::size_t loc = ta.add_location(claim("Tick" + std::to_string(i), taken), LocationKind::Committed);
    Edge e = make_edge(loop, loc, EdgeRole::Env);
    e.clock_guard.push_back(ClockAtom{clock, ExprOp::Ge, *env.writes[i].period});
    e.updates.push_back(assign(target(i), env.writes[i].value));
    e.resets.push_back({clock, 0});
    ta.edges.push_back(std::move(e));
    Edge n = make_edge(loc, loop, EdgeRole::Notify);
    n.action = ChannelAction{channel(i), true};
    ta.edges.push_back(std::move(n));
  }
  return ta;
}

Network transform_faa(const FaaModel& model) {
  TransformContext ctx = TransformContext::build(model);
  Network net;
  net.globals = ctx.globals;
  net.channels = ctx.channels;
  net.aliases = ctx.aliases;
  for (const auto& f : model.functions) {
    TimedAutomaton ta = f.trigger.policy == TriggerKind::Time ? apply_time_trigger_rule(f, ctx)
                                                              : apply_event_trigger_rule(f, ctx);
    net.automata.push_back(extend_writes(std::move(ta), f, model.connectors, ctx));
  }
  if (model.environment) net.automata.push_back(build_env(*model.environment, model, ctx));
  return net;
}

}  // namespace adlv
