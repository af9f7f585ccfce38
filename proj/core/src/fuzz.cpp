#include "adlv/fuzz.hpp"

#include <random>
#include <set>
#include <stdexcept>

namespace adlv {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(gen_); }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(range(0, static_cast<std::int64_t>(v.size()) - 1))];
  }

 private:
  std::mt19937_64 gen_;
};

DataType random_type(Rng& rng) {
  switch (rng.range(0, 2)) {
    case 0: return DataType::boolean();
    case 1: return DataType::int_range(0, 1);
    default: return DataType::int_range(0, 3);
  }
}

ExprPtr constant_for(Rng& rng, const DataType& t) {
  const auto v = rng.range(t.lo, t.hi);
  return t.is_bool() ? make_bool(v != 0) : make_int(v);
}

struct Slot {
  std::string name;
  DataType type;
};

std::vector<std::int64_t> split(Rng& rng, std::int64_t total, std::size_t parts) {
  std::vector<std::int64_t> out(parts, 0);
  for (std::int64_t unit = 0; unit < total; ++unit)
    ++out[static_cast<std::size_t>(rng.range(0, static_cast<std::int64_t>(parts) - 1))];
  return out;
}

void random_annex(Rng& rng, AnalysisFunction& f) {
  auto& ba = f.behavior;
  std::vector<Slot> readable, writable;
  for (const auto& p : f.ports) {
    if (p.is_trigger) continue;
    readable.push_back({p.name, p.type});
    if (p.is_output()) writable.push_back({p.name, p.type});
  }
  const auto nparams = rng.range(0, 1);
  for (std::int64_t i = 0; i < nparams; ++i) {
    VariableDecl v;
    v.name = "q" + std::to_string(i);
    v.type = DataType::int_range(0, 3);
    ba.parameters.push_back(v);
    readable.push_back({v.name, v.type});
    writable.push_back({v.name, v.type});
  }
  auto assignment = [&]() {
    const Slot& dst = rng.pick(writable);
    std::vector<Slot> same;
    for (const auto& s : readable)
      if (s.type == dst.type && s.name != dst.name) same.push_back(s);
    ExprPtr value = !same.empty() && rng.chance(0.5) ? make_ident(rng.pick(same).name)
                                                     : constant_for(rng, dst.type);
    return Assignment{dst.name, value, {}};
  };
  if (!writable.empty()) {
    const auto n = rng.range(0, 2);
    for (std::int64_t i = 0; i < n; ++i) ba.computations.push_back(assignment());
  }
  if (!readable.empty() && rng.chance(0.3)) {
    const Slot& s = rng.pick(readable);
    const ConditionKind kinds[] = {ConditionKind::Pre, ConditionKind::Post, ConditionKind::Invariant};
    ba.parameter_constraints.push_back(
        {kinds[rng.range(0, 2)], make_binary(ExprOp::Ge, make_ident(s.name), make_int(s.type.lo)), {}});
  }
  if (!rng.chance(0.5)) return;
  const auto k = static_cast<std::size_t>(rng.range(1, 3));
  std::vector<AnnexState> states(k);
  for (std::size_t i = 0; i < k; ++i) states[i].name = "S" + std::to_string(i);
  states[0].initial = true;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const auto nt = rng.range(1, 2);
    for (std::int64_t t = 0; t < nt; ++t) {
      AnnexTransition tr;
      tr.target = states[static_cast<std::size_t>(rng.range(static_cast<std::int64_t>(i) + 1,
                                                           static_cast<std::int64_t>(k) - 1))]
                      .name;
      if (!readable.empty() && rng.chance(0.6)) {
        const Slot& s = rng.pick(readable);
        tr.guard = make_binary(ExprOp::Eq, make_ident(s.name), constant_for(rng, s.type));
      }
      if (!writable.empty() && rng.chance(0.5)) tr.assignments.push_back(assignment());
      states[i].transitions.push_back(std::move(tr));
    }
  }
  if (rng.chance(0.5)) {
    const auto parts = split(rng, f.trigger.execution_time, k);
    for (std::size_t i = 0; i < k; ++i) states[i].budget = parts[i];
  }
  ba.state_machine = std::move(states);
}

}  // namespace

FaaModel random_model(std::uint64_t seed, const ModelFuzzOptions& opts) {
  Rng rng(seed);
  FaaModel m;
  m.name = "Fuzz" + std::to_string(seed);
  const auto n = rng.range(1, opts.max_functions);
  for (std::int64_t i = 0; i < n; ++i) {
    AnalysisFunction f;
    f.name = "F" + std::to_string(i);
    if (rng.chance(0.3)) f.instance = "I" + std::to_string(i);
    const bool time = rng.chance(0.4);
    f.trigger.policy = time ? TriggerKind::Time : TriggerKind::Event;
    f.trigger.execution_time = rng.range(0, 3);
    if (time) f.trigger.period = f.trigger.execution_time + rng.range(1, 6);
    if (rng.chance(time ? 0.4 : 0.8)) {
      Port t;
      t.name = "t";
      t.is_trigger = true;
      t.type = DataType::int_range(0, 1);
      f.ports.push_back(t);
    }
    for (auto dir : {PortDirection::In, PortDirection::Out}) {
      const auto np = rng.range(0, opts.max_data_ports);
      for (std::int64_t k = 0; k < np; ++k) {
        Port p;
        p.name = (dir == PortDirection::In ? "i" : "o") + std::to_string(k);
        p.direction = dir;
        p.type = random_type(rng);
        if (rng.chance(0.1)) p.kind = PortKind::ClientServer;
        f.ports.push_back(p);
      }
    }
    if (opts.annexes) random_annex(rng, f);
    m.functions.push_back(std::move(f));
  }

  std::vector<PortRef> outs, ins;
  for (const auto& f : m.functions)
    for (const auto& p : f.ports) (p.is_output() ? outs : ins).push_back({f.name, p.name});
  std::set<std::pair<std::string, std::string>> seen;
  if (!outs.empty() && !ins.empty()) {
    const auto nc = rng.range(0, opts.max_connectors);
    for (std::int64_t k = 0; k < nc; ++k) {
      const PortRef& src = rng.pick(outs);
      const PortRef& dst = rng.pick(ins);
      const Port* sp = m.find_port(src);
      const Port* dp = m.find_port(dst);
      if (!dp->is_trigger && !(sp->type == dp->type)) continue;
      if (!seen.insert({src.to_string(), dst.to_string()}).second) continue;
      m.connectors.push_back({src, dst, {}});
    }
  }
  if (opts.environment && !ins.empty() && rng.chance(0.6)) {
    EnvSpec env;
    env.name = "Env";
    const auto nw = rng.range(1, 2);
    for (std::int64_t k = 0; k < nw; ++k) {
      EnvWrite w;
      w.target = rng.pick(ins);
      const Port* p = m.find_port(w.target);
      w.value = p->is_trigger ? make_int(1) : constant_for(rng, p->type);
      if (rng.chance(0.6)) w.period = rng.range(1, 4);
      env.writes.push_back(std::move(w));
    }
    m.environment = std::move(env);
  }
  if (has_errors(validate_model(m)))
    throw std::logic_error("random_model produced an invalid model for seed " + std::to_string(seed));
  return m;
}

Network random_network(std::uint64_t seed, const NetworkFuzzOptions& opts) {
  Rng rng(seed);
  Network net;
  const auto nchan = rng.range(1, 2);
  for (std::int64_t c = 0; c < nchan; ++c) net.channels.push_back("c" + std::to_string(c));
  const auto nvars = rng.range(1, 2);
  for (std::int64_t v = 0; v < nvars; ++v) {
    VariableDecl d;
    d.name = "v" + std::to_string(v);
    d.type = DataType::int_range(0, static_cast<std::int32_t>(rng.range(1, opts.max_range - 1)));
    net.globals.push_back(d);
  }
  const ExprOp cmp[] = {ExprOp::Le, ExprOp::Ge, ExprOp::Eq};
  for (int a = 0; a < opts.automata; ++a) {
    TimedAutomaton ta;
    ta.name = "P" + std::to_string(a);
    ta.clocks = {"x"};
    const auto nloc = rng.range(2, opts.max_locations);
    for (std::int64_t l = 0; l < nloc; ++l) {
      Location loc;
      loc.name = "L" + std::to_string(l);
      if (opts.special_locations && l > 0) {
        const auto r = rng.range(0, 9);
        if (r == 0) loc.kind = LocationKind::Urgent;
        if (r == 1) loc.kind = LocationKind::Committed;
      }
      if (rng.chance(0.4)) loc.invariant.push_back({"x", ExprOp::Le, rng.range(1, opts.max_constant)});
      ta.locations.push_back(std::move(loc));
    }
    const auto nedges = rng.range(1, opts.max_edges);
    for (std::int64_t k = 0; k < nedges; ++k) {
      Edge e;
      e.source = static_cast<std::size_t>(rng.range(0, nloc - 1));
      e.target = static_cast<std::size_t>(rng.range(0, nloc - 1));
      if (rng.chance(0.4))
        e.action = ChannelAction{rng.pick(net.channels), rng.chance(0.5)};
      if (!e.receives() && rng.chance(0.5))
        e.clock_guard.push_back({"x", cmp[rng.range(0, 2)], rng.range(0, opts.max_constant)});
      const auto& g = rng.pick(net.globals);
      if (rng.chance(0.3))
        e.guard = make_binary(ExprOp::Eq, make_ident(g.name), make_int(rng.range(g.type.lo, g.type.hi)));
      if (rng.chance(0.4)) {
        const auto& u = rng.pick(net.globals);
        e.updates.push_back({u.name, make_int(rng.range(u.type.lo, u.type.hi)), {}});
      }
      if (rng.chance(0.5)) e.resets.push_back({"x", 0});
      ta.edges.push_back(std::move(e));
    }
    net.automata.push_back(std::move(ta));
  }
  if (!validate_ta(net).empty())
    throw std::logic_error("random_network produced an invalid network for seed " + std::to_string(seed));
  return net;
}

}  // namespace adlv
