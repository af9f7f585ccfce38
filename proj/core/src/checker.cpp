#include "adlv/checker.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "adlv/transform.hpp"
#include "system.hpp"

namespace adlv {

using detail::CAtom;
using detail::CEdge;
using detail::CNode;
using detail::System;

namespace {

using Fed = std::vector<Dbm>;
constexpr std::size_t kNone = static_cast<std::size_t>(-1);

bool any_committed(const System& sys, const std::vector<std::int32_t>& locs) {
  for (std::size_t a = 0; a < locs.size(); ++a)
    if (sys.autos[a].locations[locs[a]].kind == LocationKind::Committed) return true;
  return false;
}

bool no_delay(const System& sys, const std::vector<std::int32_t>& locs) {
  for (std::size_t a = 0; a < locs.size(); ++a)
    if (sys.autos[a].locations[locs[a]].kind != LocationKind::Normal) return true;
  return false;
}

bool apply_invariants(const System& sys, const std::vector<std::int32_t>& locs, Dbm& z) {
  for (std::size_t a = 0; a < locs.size(); ++a)
    for (const CAtom& at : sys.autos[a].locations[locs[a]].invariant)
      if (!z.constrain(at.clock, at.op, at.bound)) return false;
  return true;
}

bool holds(std::int64_t v, ExprOp op, std::int64_t c) {
  switch (op) {
    case ExprOp::Lt: return v < c;
    case ExprOp::Le: return v <= c;
    case ExprOp::Eq: return v == c;
    case ExprOp::Ge: return v >= c;
    case ExprOp::Gt: return v > c;
    default: return false;
  }
}

// Points of z where n evaluates to `positive`, as a union of zones.
void sat(const System& sys, const CNode& n, bool positive, const SymbolicState& s, const Dbm& z,
         Fed& out) {
  if (z.is_empty()) return;
  if (!n.has_clock) {
    if ((sys.eval(n, s.locations, s.vars) != 0) == positive) out.push_back(z);
    return;
  }
  switch (n.kind) {
    case CNode::Kind::Clock: {
      ExprOp op = positive ? n.op : negate(n.op);
      if (op == ExprOp::Ne) {
        for (ExprOp part : {ExprOp::Lt, ExprOp::Gt}) {
          Dbm d = z;
          if (d.constrain(n.index, part, n.value)) out.push_back(std::move(d));
        }
      } else {
        Dbm d = z;
        if (d.constrain(n.index, op, n.value)) out.push_back(std::move(d));
      }
      return;
    }
    case CNode::Kind::Unary: sat(sys, *n.lhs, !positive, s, z, out); return;
    default: break;
  }
  const bool conj = (n.op == ExprOp::And) == positive;
  const bool lp = n.op == ExprOp::Imply ? !positive : positive;
  if (conj) {
    Fed left;
    sat(sys, *n.lhs, lp, s, z, left);
    for (const auto& d : left) sat(sys, *n.rhs, positive, s, d, out);
  } else {
    sat(sys, *n.lhs, lp, s, z, out);
    sat(sys, *n.rhs, positive, s, z, out);
  }
}

bool exists_point(const System& sys, const CNode& n, const SymbolicState& s) {
  Fed f;
  sat(sys, n, true, s, s.zone, f);
  return !f.empty();
}

bool for_all_points(const System& sys, const CNode& n, const SymbolicState& s) {
  Fed f;
  sat(sys, n, false, s, s.zone, f);
  return f.empty();
}

// z minus w, as disjoint zones.
Fed subtract(const Dbm& z, const Dbm& w) {
  if (w.is_empty() || z.is_empty()) return z.is_empty() ? Fed{} : Fed{z};
  Fed out;
  Dbm rest = z;
  for (std::size_t i = 0; i < z.dim(); ++i)
    for (std::size_t j = 0; j < z.dim(); ++j) {
      if (i == j) continue;
      const Dbm::raw_t b = w.raw(i, j);
      if (b == Dbm::kInf || b >= rest.raw(i, j)) continue;
      Dbm piece = rest;
      if (piece.constrain(j, i, 1 - b)) out.push_back(std::move(piece));
      if (!rest.constrain(i, j, b)) return out;
    }
  return out;
}

bool guard_ok(const System& sys, const CEdge& e, const SymbolicState& s) {
  return !e.guard || sys.eval(*e.guard, s.locations, s.vars) != 0;
}

std::string move_label(const System& sys, const Move& m) {
  std::ostringstream os;
  os << (m.channel.empty() ? "tau" : "sync " + m.channel) << " {";
  for (std::size_t k = 0; k < m.parts.size(); ++k) {
    const auto& ta = sys.net.automata[m.parts[k].automaton];
    const auto& e = ta.edges[m.parts[k].edge];
    if (k) os << ", ";
    os << ta.name << ": " << ta.locations[e.source].name << "->" << ta.locations[e.target].name;
  }
  os << "}";
  return os.str();
}

// Every discrete step enabled in s, as (edge choices, clock-guard zone).
void enumerate_moves(const System& sys, const SymbolicState& s,
                     const std::function<void(const Move&)>& visit) {
  const auto& locs = s.locations;
  const bool committed = any_committed(sys, locs);
  auto is_committed = [&](std::size_t a) {
    return sys.autos[a].locations[locs[a]].kind == LocationKind::Committed;
  };
  for (std::size_t a = 0; a < sys.autos.size(); ++a) {
    const auto& ca = sys.autos[a];
    for (int eid : ca.active[locs[a]]) {
      const CEdge& e = ca.edges[eid];
      if (!guard_ok(sys, e, s)) continue;
      if (e.channel < 0) {
        if (committed && !is_committed(a)) continue;
        Move m;
        m.parts.push_back({a, static_cast<std::size_t>(eid)});
        visit(m);
        continue;
      }
      std::vector<std::size_t> who;
      std::vector<std::vector<int>> options;
      bool has_committed = is_committed(a);
      for (std::size_t b = 0; b < sys.autos.size(); ++b) {
        if (b == a) continue;
        const auto& rm = sys.autos[b].recv[locs[b]];
        auto it = rm.find(e.channel);
        if (it == rm.end()) continue;
        std::vector<int> ok;
        for (int r : it->second)
          if (guard_ok(sys, sys.autos[b].edges[r], s)) ok.push_back(r);
        if (ok.empty()) continue;
        who.push_back(b);
        options.push_back(std::move(ok));
        has_committed = has_committed || is_committed(b);
      }
      if (committed && !has_committed) continue;
      // Each participating receiver picks one of its enabled edges.
      std::vector<std::size_t> pick(options.size(), 0);
      for (;;) {
        Move m;
        m.channel = sys.net.channels[e.channel];
        m.parts.push_back({a, static_cast<std::size_t>(eid)});
        for (std::size_t k = 0; k < who.size(); ++k)
          m.parts.push_back({who[k], static_cast<std::size_t>(options[k][pick[k]])});
        visit(m);
        std::size_t k = 0;
        while (k < pick.size() && ++pick[k] == options[k].size()) pick[k++] = 0;
        if (k == pick.size()) break;
      }
    }
  }
}

const CEdge& edge_of(const System& sys, const Move::Part& p) {
  return sys.autos[p.automaton].edges[p.edge];
}

// Extrapolation bounds and the clocks a query reads, which are never freed.
struct Abstraction {
  std::vector<std::int64_t> maxc;
  std::vector<char> pinned;
};

Abstraction abstraction_for(const System& sys, std::initializer_list<const CNode*> extra) {
  Abstraction abs{sys.maxc, std::vector<char>(sys.dim(), 0)};
  for (const CNode* n : extra)
    if (n) {
      sys.collect_clock_constants(*n, abs.maxc);
      System::collect_clocks(*n, abs.pinned);
    }
  return abs;
}

// Delay-close, free dead clocks, extrapolate.
void normalize(const System& sys, const Abstraction& abs, SymbolicState& t) {
  if (!no_delay(sys, t.locations)) {
    t.zone.up();
    apply_invariants(sys, t.locations, t.zone);
  }
  for (std::size_t a = 0; a < t.locations.size(); ++a)
    for (int c : sys.autos[a].inactive[t.locations[a]])
      if (!abs.pinned[c]) t.zone.free_clock(c);
  t.zone.extrapolate(abs.maxc);
}

std::optional<SymbolicState> fire(const System& sys, const Abstraction& abs,
                                  const SymbolicState& s, const Move& m) {
  SymbolicState t;
  t.locations = s.locations;
  t.zone = s.zone;
  for (const auto& p : m.parts)
    for (const CAtom& at : edge_of(sys, p).clock_guard)
      if (!t.zone.constrain(at.clock, at.op, at.bound)) return std::nullopt;
  for (const auto& p : m.parts) {
    const CEdge& e = edge_of(sys, p);
    for (const auto& [clock, value] : e.resets) t.zone.reset(clock, value);
    t.locations[p.automaton] = e.target;
  }
  if (!apply_invariants(sys, t.locations, t.zone)) return std::nullopt;

  // Data updates run in sequence, sender first, on the pre-state locations.
  t.vars = s.vars;
  for (const auto& p : m.parts)
    for (const auto& [idx, expr] : edge_of(sys, p).updates) {
      const std::int64_t v = sys.eval(*expr, s.locations, t.vars);
      const auto& info = sys.vars[idx];
      if (v < info.lo || v > info.hi)
        throw RangeError(move_label(sys, m) + ": " + info.name + " := " + std::to_string(v) +
                         " is outside [" + std::to_string(info.lo) + ", " +
                         std::to_string(info.hi) + "]");
      t.vars[idx] = static_cast<std::int32_t>(v);
    }
  normalize(sys, abs, t);
  return t;
}

SymbolicState initial(const System& sys, const Abstraction& abs) {
  SymbolicState s;
  for (const auto& ca : sys.autos) s.locations.push_back(ca.initial);
  for (const auto& v : sys.vars) s.vars.push_back(v.initial);
  s.zone = dbm_init(sys.dim() - 1);
  if (!apply_invariants(sys, s.locations, s.zone))
    throw EmptyInitial("initial location invariants do not hold at time 0");
  normalize(sys, abs, s);
  return s;
}

void expand(const System& sys, const Abstraction& abs, const SymbolicState& s,
            std::vector<Successor>& out) {
  enumerate_moves(sys, s, [&](const Move& m) {
    if (auto t = fire(sys, abs, s, m)) out.push_back(Successor{m, std::move(*t)});
  });
}

// Deadlock: some valuation in s enables no discrete step, now or after delay.
bool is_deadlock(const System& sys, const SymbolicState& s) {
  const bool can_delay = !no_delay(sys, s.locations);
  Fed enabled;
  enumerate_moves(sys, s, [&](const Move& m) {
    Dbm g = s.zone;
    for (const auto& p : m.parts)
      for (const CAtom& at : edge_of(sys, p).clock_guard)
        if (!g.constrain(at.clock, at.op, at.bound)) return;
    std::vector<std::int32_t> locs = s.locations;
    std::vector<std::int64_t> reset_value(sys.dim(), -1);
    for (const auto& p : m.parts) {
      const CEdge& e = edge_of(sys, p);
      locs[p.automaton] = e.target;
      for (const auto& [clock, value] : e.resets) reset_value[clock] = value;
    }
    for (std::size_t a = 0; a < locs.size(); ++a)
      for (const CAtom& at : sys.autos[a].locations[locs[a]].invariant) {
        if (reset_value[at.clock] >= 0) {
          if (!holds(reset_value[at.clock], at.op, at.bound)) return;
        } else if (!g.constrain(at.clock, at.op, at.bound)) {
          return;
        }
      }
    if (can_delay) {
      g.down();
      for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = 0; j < g.dim(); ++j)
          if (!g.constrain(i, j, s.zone.raw(i, j))) return;
    }
    enabled.push_back(std::move(g));
  });
  Fed rest{s.zone};
  for (const auto& w : enabled) {
    Fed next;
    for (const auto& piece : rest)
      for (auto& d : subtract(piece, w)) next.push_back(std::move(d));
    rest = std::move(next);
    if (rest.empty()) return false;
  }
  return !rest.empty();
}

struct KeyHash {
  std::size_t operator()(const std::vector<std::int32_t>& k) const {
    std::size_t h = k.size();
    for (auto v : k) h = h * 1000003u ^ static_cast<std::size_t>(v + 0x9e37);
    return h;
  }
};

struct Node {
  SymbolicState state;
  std::size_t parent = kNone;
  Move move;
};

class Explorer {
 public:
  Explorer(const System& sys, const CheckOptions& opts, bool inclusion)
      : sys_(sys), opts_(opts), inclusion_(inclusion) {}

  std::vector<Node> nodes;
  Stats stats;

  /// Index of the stored node and whether it is new; kNone if subsumed.
  std::pair<std::size_t, bool> add(SymbolicState s, std::size_t parent, Move m) {
    std::vector<std::int32_t> key = s.locations;
    key.insert(key.end(), s.vars.begin(), s.vars.end());
    auto& bucket = passed_[std::move(key)];
    if (inclusion_) {
      for (std::size_t idx : bucket)
        if (nodes[idx].state.zone.includes(s.zone)) return {kNone, false};
      std::erase_if(bucket, [&](std::size_t idx) { return s.zone.includes(nodes[idx].state.zone); });
    } else {
      for (std::size_t idx : bucket)
        if (nodes[idx].state.zone == s.zone) return {idx, false};
    }
    if (nodes.size() >= opts_.max_states)
      throw BudgetExceeded("more than " + std::to_string(opts_.max_states) + " stored states");
    nodes.push_back(Node{std::move(s), parent, std::move(m)});
    bucket.push_back(nodes.size() - 1);
    waiting_.push_back(nodes.size() - 1);
    stats.states_stored = nodes.size();
    return {nodes.size() - 1, true};
  }

  std::size_t next() {
    if (waiting_.empty()) return kNone;
    std::size_t idx;
    if (opts_.order == SearchOrder::Bfs) {
      idx = waiting_.front();
      waiting_.pop_front();
    } else {
      idx = waiting_.back();
      waiting_.pop_back();
    }
    ++stats.states_explored;
    return idx;
  }

  Trace trace_to(std::size_t idx) const {
    std::vector<std::size_t> chain;
    for (std::size_t k = idx; k != kNone; k = nodes[k].parent) chain.push_back(k);
    std::reverse(chain.begin(), chain.end());
    Trace t;
    for (std::size_t k : chain) {
      TraceStep step;
      if (nodes[k].parent != kNone) {
        step.move = nodes[k].move;
        step.label = move_label(sys_, nodes[k].move);
      } else {
        step.label = "init";
      }
      step.state = nodes[k].state;
      t.steps.push_back(std::move(step));
    }
    return t;
  }

 private:
  const System& sys_;
  const CheckOptions& opts_;
  bool inclusion_;
  std::unordered_map<std::vector<std::int32_t>, std::vector<std::size_t>, KeyHash> passed_;
  std::deque<std::size_t> waiting_;
};

using Clock = std::chrono::steady_clock;

// Stored-state search for a goal state; the goal's meaning is up to the caller.
struct SearchOutcome {
  std::optional<Trace> trace;
  bool found = false;
  std::string range_error;
  bool budget = false;
  std::string budget_message;
};

SearchOutcome search(const System& sys, const Abstraction& abs,
                     const CheckOptions& opts, Stats& stats,
                     const std::function<bool(const SymbolicState&)>& goal) {
  SearchOutcome out;
  Explorer ex(sys, opts, opts.subsumption);
  try {
    auto [root, fresh] = ex.add(initial(sys, abs), kNone, {});
    (void)fresh;
    if (goal(ex.nodes[root].state)) {
      out.found = true;
      out.trace = ex.trace_to(root);
    }
    while (!out.found) {
      const std::size_t u = ex.next();
      if (u == kNone) break;
      std::vector<Successor> succ;
      try {
        expand(sys, abs, ex.nodes[u].state, succ);
      } catch (const RangeError& e) {
        out.range_error = e.what();
        out.trace = ex.trace_to(u);
        break;
      }
      for (auto& sc : succ) {
        auto [idx, added] = ex.add(std::move(sc.state), u, std::move(sc.move));
        if (!added) continue;
        if (goal(ex.nodes[idx].state)) {
          out.found = true;
          out.trace = ex.trace_to(idx);
          break;
        }
      }
    }
  } catch (const BudgetExceeded& e) {
    out.budget = true;
    out.budget_message = e.what();
  }
  stats.states_explored = ex.stats.states_explored;
  stats.states_stored = ex.stats.states_stored;
  return out;
}

Verdict finish(Verdict v, Clock::time_point start) {
  v.stats.wall_time = Clock::now() - start;
  return v;
}

bool settle_errors(Verdict& v, SearchOutcome& o) {
  if (o.budget) {
    v.status = Status::Unknown;
    v.message = o.budget_message;
    return true;
  }
  if (!o.range_error.empty()) {
    v.status = Status::Violated;
    v.message = "range error: " + o.range_error;
    v.trace = std::move(o.trace);
    return true;
  }
  return false;
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::Satisfied: return "Satisfied";
    case Status::Violated: return "Violated";
    case Status::Unknown: return "Unknown";
  }
  return "Unknown";
}

Checker::Checker(Network net) : net_(std::move(net)) {
  for (const auto& ta : net_.automata)
    for (const auto& e : ta.edges)
      if (e.receives() && !e.clock_guard.empty())
        throw TypeError("receiving edge with a clock guard in " + ta.name);
  sys_ = std::make_unique<System>(net_);
}

Checker::~Checker() = default;
Checker::Checker(Checker&& o) noexcept : net_(std::move(o.net_)), sys_(std::move(o.sys_)) {
  if (sys_) sys_ = std::make_unique<System>(net_);
}
Checker& Checker::operator=(Checker&& o) noexcept {
  net_ = std::move(o.net_);
  sys_ = o.sys_ ? std::make_unique<System>(net_) : nullptr;
  o.sys_.reset();
  return *this;
}

SymbolicState Checker::initial_state() const { return initial(*sys_, abstraction_for(*sys_, {})); }

std::vector<Successor> Checker::successors(const SymbolicState& s) const {
  std::vector<Successor> out;
  expand(*sys_, abstraction_for(*sys_, {}), s, out);
  return out;
}

bool Checker::eval(const SymbolicState& s, const ExprPtr& expr, Reading reading) const {
  auto n = sys_->compile_query(expr);
  return reading == Reading::Universal ? for_all_points(*sys_, *n, s) : exists_point(*sys_, *n, s);
}

std::string Checker::label(const Move& m) const { return move_label(*sys_, m); }

std::vector<std::string> Checker::clock_names() const { return sys_->clocks; }

std::vector<std::string> Checker::var_names() const {
  std::vector<std::string> out;
  for (const auto& v : sys_->vars) out.push_back(v.name);
  return out;
}

std::string Checker::describe(const SymbolicState& s) const {
  std::ostringstream os;
  os << "(";
  for (std::size_t a = 0; a < s.locations.size(); ++a)
    os << (a ? " " : "") << net_.automata[a].name << "."
       << net_.automata[a].locations[s.locations[a]].name;
  os << ")";
  for (std::size_t i = 0; i < s.vars.size(); ++i) os << " " << sys_->vars[i].name << "=" << s.vars[i];
  if (s.zone.clocks() > 0) os << " [" << s.zone.to_string(sys_->clocks) << "]";
  return os.str();
}

Verdict Checker::check(const Query& q, const CheckOptions& opts) const {
  Verdict v;
  switch (q.kind) {
    case QueryKind::Invariant: v = check_invariant(q.first, opts); break;
    case QueryKind::Reach: v = check_reachability(q.first, opts); break;
    case QueryKind::LeadsTo: v = check_leads_to(q.first, q.second, opts); break;
    case QueryKind::BoundedResponse: return check_bounded_response(q, opts);
    case QueryKind::DeadlockFree: v = check_deadlock_free(opts); break;
  }
  v.query = q;
  return v;
}

Verdict Checker::check_invariant(const ExprPtr& expr, const CheckOptions& opts) const {
  const auto start = Clock::now();
  Verdict v;
  v.query = Query::invariant(expr);
  auto phi = sys_->compile_query(expr);
  const auto abs = abstraction_for(*sys_, {phi.get()});
  auto o = search(*sys_, abs, opts, v.stats,
                  [&](const SymbolicState& s) { return !for_all_points(*sys_, *phi, s); });
  if (settle_errors(v, o)) return finish(std::move(v), start);
  if (o.found) {
    v.status = Status::Violated;
    v.message = "invariant violated";
    v.trace = std::move(o.trace);
  } else {
    v.status = Status::Satisfied;
  }
  return finish(std::move(v), start);
}

Verdict Checker::check_reachability(const ExprPtr& expr, const CheckOptions& opts) const {
  const auto start = Clock::now();
  Verdict v;
  v.query = Query::reach(expr);
  auto phi = sys_->compile_query(expr);
  const auto abs = abstraction_for(*sys_, {phi.get()});
  auto o = search(*sys_, abs, opts, v.stats,
                  [&](const SymbolicState& s) { return exists_point(*sys_, *phi, s); });
  if (settle_errors(v, o)) return finish(std::move(v), start);
  if (o.found) {
    v.status = Status::Satisfied;
    v.trace = std::move(o.trace);
  } else {
    v.status = Status::Violated;
    v.message = "no reachable state satisfies the formula";
  }
  return finish(std::move(v), start);
}

Verdict Checker::check_deadlock_free(const CheckOptions& opts) const {
  const auto start = Clock::now();
  Verdict v;
  v.query = Query::deadlock_free();
  auto o = search(*sys_, abstraction_for(*sys_, {}), opts, v.stats,
                  [&](const SymbolicState& s) { return is_deadlock(*sys_, s); });
  if (settle_errors(v, o)) return finish(std::move(v), start);
  if (o.found) {
    v.status = Status::Violated;
    v.message = "deadlock reachable";
    v.trace = std::move(o.trace);
  } else {
    v.status = Status::Satisfied;
  }
  return finish(std::move(v), start);
}

Verdict Checker::check_leads_to(const ExprPtr& p, const ExprPtr& q, const CheckOptions& opts) const {
  const auto start = Clock::now();
  Verdict v;
  v.query = Query::leads_to(p, q);
  auto cp = sys_->compile_query(p);
  auto cq = sys_->compile_query(q);
  const auto abs = abstraction_for(*sys_, {cp.get(), cq.get()});

  // Full graph with equality storage; inclusion would merge lasso-relevant states.
  Explorer ex(*sys_, opts, false);
  std::vector<std::vector<std::pair<std::size_t, Move>>> succ;
  try {
    ex.add(initial(*sys_, abs), kNone, {});
    for (;;) {
      const std::size_t u = ex.next();
      if (u == kNone) break;
      std::vector<Successor> out;
      try {
        expand(*sys_, abs, ex.nodes[u].state, out);
      } catch (const RangeError& e) {
        v.status = Status::Violated;
        v.message = std::string("range error: ") + e.what();
        v.trace = ex.trace_to(u);
        v.stats = ex.stats;
        return finish(std::move(v), start);
      }
      if (succ.size() <= u) succ.resize(u + 1);
      for (auto& sc : out) {
        Move m = sc.move;
        auto [idx, added] = ex.add(std::move(sc.state), u, std::move(sc.move));
        (void)added;
        succ[u].emplace_back(idx, std::move(m));
      }
    }
  } catch (const BudgetExceeded& e) {
    v.status = Status::Unknown;
    v.message = e.what();
    v.stats = ex.stats;
    return finish(std::move(v), start);
  }
  v.stats = ex.stats;
  const std::size_t n = ex.nodes.size();
  succ.resize(n);

  std::vector<char> is_q(n), is_p(n), terminal(n), safe(n, 0);
  std::vector<std::vector<std::size_t>> pred(n);
  std::vector<std::size_t> pending(n, 0);
  for (std::size_t u = 0; u < n; ++u) {
    const auto& s = ex.nodes[u].state;
    is_q[u] = for_all_points(*sys_, *cq, s);
    is_p[u] = exists_point(*sys_, *cp, s);
    terminal[u] = succ[u].empty() || (!no_delay(*sys_, s.locations) && s.zone.unbounded_above());
  }
  for (std::size_t u = 0; u < n; ++u) {
    if (is_q[u]) continue;
    for (const auto& [w, m] : succ[u]) {
      if (is_q[w]) continue;
      ++pending[u];
      pred[w].push_back(u);
    }
  }
  // A non-q node is safe when every path from it reaches q in finitely many steps.
  std::vector<std::size_t> work;
  for (std::size_t u = 0; u < n; ++u)
    if (!is_q[u] && !terminal[u] && pending[u] == 0) {
      safe[u] = 1;
      work.push_back(u);
    }
  while (!work.empty()) {
    const std::size_t w = work.back();
    work.pop_back();
    for (std::size_t u : pred[w])
      if (--pending[u] == 0 && !terminal[u] && !safe[u]) {
        safe[u] = 1;
        work.push_back(u);
      }
  }

  std::size_t bad = kNone;
  for (std::size_t u = 0; u < n && bad == kNone; ++u)
    if (is_p[u] && !is_q[u] && !safe[u]) bad = u;
  if (bad == kNone) {
    v.status = Status::Satisfied;
    return finish(std::move(v), start);
  }

  Trace t = ex.trace_to(bad);
  std::map<std::size_t, std::size_t> pos{{bad, t.steps.size() - 1}};
  std::size_t cur = bad;
  for (;;) {
    if (terminal[cur]) {
      v.message = succ[cur].empty() ? "maximal path ends without reaching the goal"
                                    : "time can diverge without reaching the goal";
      break;
    }
    const std::pair<std::size_t, Move>* step = nullptr;
    for (const auto& e : succ[cur])
      if (!is_q[e.first] && !safe[e.first]) {
        step = &e;
        break;
      }
    if (!step) break;  // unreachable: unsafe nodes always have an unsafe successor
    TraceStep ts;
    ts.move = step->second;
    ts.label = move_label(*sys_, step->second);
    ts.state = ex.nodes[step->first].state;
    t.steps.push_back(std::move(ts));
    if (auto it = pos.find(step->first); it != pos.end()) {
      t.loop_start = it->second;
      v.message = "cycle avoids the goal";
      break;
    }
    pos[step->first] = t.steps.size() - 1;
    cur = step->first;
  }
  v.status = Status::Violated;
  v.trace = std::move(t);
  return finish(std::move(v), start);
}

Verdict Checker::check_bounded_response(const Query& q, const CheckOptions& opts) const {
  const auto start = Clock::now();
  Network composed = attach_observer(net_, q);
  Checker inner(composed);
  Verdict v = q.bound ? inner.check_invariant(make_unary(ExprOp::Not, make_ident("error", "Obs")), opts)
                      : inner.check(observer_leads_to(), opts);
  v.query = q;
  if (v.status == Status::Violated && v.message == "invariant violated")
    v.message = "observer reached its error location";
  // Re-fire the last move without freeing clocks so the error state shows obstime.
  if (v.status == Status::Violated && v.trace && v.trace->steps.size() >= 2) {
    auto& steps = v.trace->steps;
    const Abstraction keep{inner.sys_->maxc, std::vector<char>(inner.sys_->dim(), 1)};
    if (steps.back().move)
      if (auto t = fire(*inner.sys_, keep, steps[steps.size() - 2].state, *steps.back().move))
        steps.back().state = std::move(*t);
  }
  v.trace_network = std::make_shared<const Network>(std::move(composed));
  v.stats.wall_time = Clock::now() - start;
  return v;
}

SymbolicState initial_state(const Network& net) { return Checker(net).initial_state(); }
std::vector<Successor> successors(const Network& net, const SymbolicState& s) {
  return Checker(net).successors(s);
}
Verdict check_invariant(const Network& net, const ExprPtr& e, const CheckOptions& o) {
  return Checker(net).check_invariant(e, o);
}
Verdict check_reachability(const Network& net, const ExprPtr& e, const CheckOptions& o) {
  return Checker(net).check_reachability(e, o);
}
Verdict check_deadlock_free(const Network& net, const CheckOptions& o) {
  return Checker(net).check_deadlock_free(o);
}
Verdict check_leads_to(const Network& net, const ExprPtr& p, const ExprPtr& q, const CheckOptions& o) {
  return Checker(net).check_leads_to(p, q, o);
}
Verdict check_bounded_response(const Network& net, const Query& q, const CheckOptions& o) {
  return Checker(net).check_bounded_response(q, o);
}
bool eval_expr(const Network& net, const SymbolicState& s, const ExprPtr& e, Reading r) {
  return Checker(net).eval(s, e, r);
}

}  // namespace adlv
