#include "system.hpp"

#include <algorithm>

namespace adlv::detail {

namespace {

CPtr node(CNode n) { return std::make_shared<const CNode>(std::move(n)); }

CNode make(CNode::Kind kind, ExprOp op, std::int64_t value = 0, int index = -1) {
  CNode n;
  n.kind = kind;
  n.op = op;
  n.value = value;
  n.index = index;
  return n;
}

bool clock_comparable(ExprOp op) {
  return op == ExprOp::Lt || op == ExprOp::Le || op == ExprOp::Eq || op == ExprOp::Ge ||
         op == ExprOp::Gt;
}

}  // namespace

System::System(const Network& n) : net(n) {
  clocks.push_back("0");
  for (const auto& g : net.globals) {
    global_idx_[g.name] = static_cast<int>(vars.size());
    vars.push_back(VarInfo{g.name, g.type.lo, g.type.hi, g.initial});
  }
  for (const auto& ta : net.automata) {
    auto& locals = local_idx_.emplace_back();
    auto& cl = clock_idx_.emplace_back();
    for (const auto& v : ta.data_vars) {
      locals[v.name] = static_cast<int>(vars.size());
      vars.push_back(VarInfo{ta.name + "." + v.name, v.type.lo, v.type.hi, v.initial});
    }
    for (const auto& c : ta.clocks) {
      cl[c] = static_cast<int>(clocks.size());
      clocks.push_back(ta.name + "." + c);
    }
  }
  for (std::size_t i = 0; i < net.channels.size(); ++i)
    channel_idx_[net.channels[i]] = static_cast<int>(i);

  auto clock_of = [&](std::size_t a, const std::string& c) {
    auto it = clock_idx_[a].find(c);
    if (it == clock_idx_[a].end())
      throw TypeError("unknown clock '" + c + "' in " + net.automata[a].name);
    return it->second;
  };
  auto atoms = [&](std::size_t a, const std::vector<ClockAtom>& in) {
    std::vector<CAtom> out;
    for (const auto& at : in) out.push_back(CAtom{clock_of(a, at.clock), at.op, at.bound});
    return out;
  };

  const auto consts = max_clock_constants(net);
  maxc.assign(clocks.size(), 0);
  for (std::size_t i = 1; i < clocks.size(); ++i)
    if (auto it = consts.find(clocks[i]); it != consts.end()) maxc[i] = it->second;

  for (std::size_t a = 0; a < net.automata.size(); ++a) {
    const auto& ta = net.automata[a];
    CAutomaton ca;
    ca.initial = static_cast<int>(ta.initial);
    for (const auto& l : ta.locations) ca.locations.push_back(CLocation{l.kind, atoms(a, l.invariant)});
    ca.active.resize(ta.locations.size());
    ca.recv.resize(ta.locations.size());
    for (const auto& e : ta.edges) {
      CEdge ce;
      ce.source = static_cast<int>(e.source);
      ce.target = static_cast<int>(e.target);
      if (!is_true_literal(e.guard)) ce.guard = compile(e.guard, static_cast<int>(a), false);
      ce.clock_guard = atoms(a, e.clock_guard);
      if (e.action) {
        auto it = channel_idx_.find(e.action->channel);
        if (it == channel_idx_.end()) throw TypeError("undeclared channel '" + e.action->channel + "'");
        ce.channel = it->second;
        ce.emit = e.action->emit;
      }
      for (const auto& u : e.updates) {
        auto it = local_idx_[a].find(u.target);
        int idx;
        if (it != local_idx_[a].end()) {
          idx = it->second;
        } else if (auto g = global_idx_.find(u.target); g != global_idx_.end()) {
          idx = g->second;
        } else {
          throw TypeError("unknown assignment target '" + u.target + "' in " + ta.name);
        }
        ce.updates.emplace_back(idx, compile(u.value, static_cast<int>(a), false));
      }
      for (const auto& r : e.resets) ce.resets.emplace_back(clock_of(a, r.clock), r.value);
      const int id = static_cast<int>(ca.edges.size());
      if (e.receives())
        ca.recv[e.source][ce.channel].push_back(id);
      else
        ca.active[e.source].push_back(id);
      ca.edges.push_back(std::move(ce));
    }
    compute_inactive(ca, ta.clocks.empty() ? 0 : clock_of(a, ta.clocks.front()), ta.clocks.size());
    autos.push_back(std::move(ca));
  }
}

void System::compute_inactive(CAutomaton& ca, int first, std::size_t count) {
  const std::size_t n = ca.locations.size();
  std::vector<std::vector<char>> live(n, std::vector<char>(count, 0));
  auto mark = [&](std::size_t l, const std::vector<CAtom>& atoms) {
    for (const auto& at : atoms) live[l][static_cast<std::size_t>(at.clock - first)] = 1;
  };
  for (std::size_t l = 0; l < n; ++l) mark(l, ca.locations[l].invariant);
  for (const auto& e : ca.edges) mark(static_cast<std::size_t>(e.source), e.clock_guard);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& e : ca.edges)
      for (std::size_t c = 0; c < count; ++c) {
        auto& src = live[static_cast<std::size_t>(e.source)][c];
        if (src || !live[static_cast<std::size_t>(e.target)][c]) continue;
        const int clock = first + static_cast<int>(c);
        bool reset = false;
        for (const auto& r : e.resets) reset = reset || r.first == clock;
        if (!reset) src = changed = true;
      }
  }
  ca.inactive.assign(n, {});
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t c = 0; c < count; ++c)
      if (!live[l][c]) ca.inactive[l].push_back(first + static_cast<int>(c));
}

int System::find_automaton(const std::string& name) const {
  for (std::size_t i = 0; i < net.automata.size(); ++i)
    if (net.automata[i].name == name) return static_cast<int>(i);
  int found = -1;
  for (std::size_t i = 0; i < net.automata.size(); ++i)
    if (net.automata[i].template_or_name() == name) {
      if (found >= 0) return -1;  // ambiguous template name
      found = static_cast<int>(i);
    }
  return found;
}

CPtr System::compile_query(const ExprPtr& e) const {
  CPtr n = compile(e, -1, true);
  if (n->kind == CNode::Kind::Clock && n->op == ExprOp::Ident) throw TypeError("bare clock used as a formula");
  return n;
}

CPtr System::compile(const ExprPtr& e, int automaton, bool query) const {
  if (!e) return node(make(CNode::Kind::Const, ExprOp::BoolLit, 1));
  switch (e->op) {
    case ExprOp::IntLit:
    case ExprOp::BoolLit: return node(make(CNode::Kind::Const, e->op, e->value));
    case ExprOp::Ident: {
      CNode n;
      int a = automaton;
      if (!e->qualifier.empty()) {
        if (!query) throw TypeError("qualified name '" + e->qualified_name() + "' in automaton");
        a = find_automaton(e->qualifier);
        if (a < 0) throw TypeError("unknown automaton '" + e->qualifier + "'");
        const auto& ta = net.automata[a];
        if (auto l = ta.find_location(e->name)) {
          n.kind = CNode::Kind::Loc;
          n.automaton = a;
          n.index = static_cast<int>(*l);
          return node(n);
        }
      }
      if (a >= 0) {
        if (auto it = local_idx_[a].find(e->name); it != local_idx_[a].end()) {
          n.kind = CNode::Kind::Var;
          n.index = it->second;
          return node(n);
        }
        if (auto it = clock_idx_[a].find(e->name); it != clock_idx_[a].end()) {
          n.kind = CNode::Kind::Clock;
          n.op = ExprOp::Ident;  // bare reference, not yet an atom
          n.index = it->second;
          n.has_clock = true;
          return node(n);
        }
      }
      if (e->qualifier.empty()) {
        if (auto it = global_idx_.find(e->name); it != global_idx_.end()) {
          n.kind = CNode::Kind::Var;
          n.index = it->second;
          return node(n);
        }
      }
      throw TypeError("unresolved identifier '" + e->qualified_name() + "'");
    }
    case ExprOp::Not:
    case ExprOp::Neg: {
      auto sub = compile(e->lhs, automaton, query);
      if (sub->has_clock && e->op == ExprOp::Neg) throw TypeError("arithmetic on a clock");
      if (sub->kind == CNode::Kind::Clock && sub->op == ExprOp::Ident) throw TypeError("bare clock in boolean context");
      CNode n = make(CNode::Kind::Unary, e->op);
      n.has_clock = sub->has_clock;
      n.lhs = sub;
      return node(n);
    }
    default: break;
  }
  auto l = compile(e->lhs, automaton, query);
  auto r = compile(e->rhs, automaton, query);
  auto bare = [](const CNode& c) { return c.kind == CNode::Kind::Clock && c.op == ExprOp::Ident; };
  if (bare(*l) || bare(*r)) {
    // Clock atoms compare a clock against an integer constant.
    if (!clock_comparable(e->op)) throw TypeError("clocks only appear in comparisons with constants");
    const bool left = bare(*l);
    const CNode& clk = left ? *l : *r;
    const CNode& other = left ? *r : *l;
    if (other.kind != CNode::Kind::Const) throw TypeError("clock compared to a non-constant");
    CNode n = make(CNode::Kind::Clock, left ? e->op : mirror(e->op), other.value, clk.index);
    n.has_clock = true;
    return node(n);
  }
  if ((l->has_clock || r->has_clock) && !is_boolean_connective(e->op))
    throw TypeError("clock constraint used as a value");
  CNode n = make(CNode::Kind::Binary, e->op);
  n.has_clock = l->has_clock || r->has_clock;
  n.lhs = l;
  n.rhs = r;
  return node(n);
}

void System::collect_clock_constants(const CNode& n, std::vector<std::int64_t>& out) const {
  if (n.kind == CNode::Kind::Clock) {
    out[n.index] = std::max(out[n.index], n.value < 0 ? -n.value : n.value);
  }
  if (n.lhs) collect_clock_constants(*n.lhs, out);
  if (n.rhs) collect_clock_constants(*n.rhs, out);
}

void System::collect_clocks(const CNode& n, std::vector<char>& out) {
  if (n.kind == CNode::Kind::Clock) out[static_cast<std::size_t>(n.index)] = 1;
  if (n.lhs) collect_clocks(*n.lhs, out);
  if (n.rhs) collect_clocks(*n.rhs, out);
}

std::int64_t System::eval(const CNode& n, const std::vector<std::int32_t>& locs,
                          const std::vector<std::int32_t>& v) const {
  switch (n.kind) {
    case CNode::Kind::Const: return n.value;
    case CNode::Kind::Var: return v[n.index];
    case CNode::Kind::Loc: return locs[n.automaton] == n.index ? 1 : 0;
    case CNode::Kind::Clock: throw TypeError("clock atom evaluated without a zone");
    case CNode::Kind::Unary: {
      auto x = eval(*n.lhs, locs, v);
      return n.op == ExprOp::Not ? (x == 0 ? 1 : 0) : -x;
    }
    case CNode::Kind::Binary: break;
  }
  switch (n.op) {
    case ExprOp::And: return eval(*n.lhs, locs, v) != 0 && eval(*n.rhs, locs, v) != 0;
    case ExprOp::Or: return eval(*n.lhs, locs, v) != 0 || eval(*n.rhs, locs, v) != 0;
    case ExprOp::Imply: return eval(*n.lhs, locs, v) == 0 || eval(*n.rhs, locs, v) != 0;
    default: break;
  }
  const auto a = eval(*n.lhs, locs, v);
  const auto b = eval(*n.rhs, locs, v);
  switch (n.op) {
    case ExprOp::Add: return a + b;
    case ExprOp::Sub: return a - b;
    case ExprOp::Lt: return a < b;
    case ExprOp::Le: return a <= b;
    case ExprOp::Eq: return a == b;
    case ExprOp::Ne: return a != b;
    case ExprOp::Ge: return a >= b;
    case ExprOp::Gt: return a > b;
    default: return 0;
  }
}

}  // namespace adlv::detail
