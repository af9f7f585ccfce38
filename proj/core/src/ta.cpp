#include "adlv/ta.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace adlv {

ExprPtr ClockAtom::to_expr() const {
  return make_binary(op, make_ident(clock), make_int(bound));
}

const char* to_string(EdgeRole role) {
  switch (role) {
    case EdgeRole::Internal: return "internal";
    case EdgeRole::Read: return "read";
    case EdgeRole::Write: return "write";
    case EdgeRole::Notify: return "notify";
    case EdgeRole::Release: return "release";
    case EdgeRole::Env: return "env";
    case EdgeRole::Observer: return "observer";
  }
  return "internal";
}

std::optional<EdgeRole> parse_edge_role(std::string_view text) {
  for (auto r : {EdgeRole::Internal, EdgeRole::Read, EdgeRole::Write, EdgeRole::Notify,
                 EdgeRole::Release, EdgeRole::Env, EdgeRole::Observer})
    if (text == to_string(r)) return r;
  return std::nullopt;
}

std::optional<std::size_t> TimedAutomaton::find_location(std::string_view loc) const {
  for (std::size_t i = 0; i < locations.size(); ++i)
    if (locations[i].name == loc) return i;
  return std::nullopt;
}

std::size_t TimedAutomaton::add_location(std::string loc, LocationKind kind,
                                         std::vector<ClockAtom> invariant) {
  locations.push_back(Location{std::move(loc), kind, std::move(invariant)});
  return locations.size() - 1;
}

bool TimedAutomaton::has_clock(std::string_view c) const {
  return std::find(clocks.begin(), clocks.end(), c) != clocks.end();
}

const VariableDecl* TimedAutomaton::find_var(std::string_view v) const {
  for (const auto& d : data_vars)
    if (d.name == v) return &d;
  return nullptr;
}

const TimedAutomaton* Network::find_automaton(std::string_view a) const {
  for (const auto& ta : automata)
    if (ta.name == a) return &ta;
  return nullptr;
}

TimedAutomaton* Network::find_automaton(std::string_view a) {
  for (auto& ta : automata)
    if (ta.name == a) return &ta;
  return nullptr;
}

const VariableDecl* Network::find_global(std::string_view v) const {
  for (const auto& d : globals)
    if (d.name == v) return &d;
  return nullptr;
}

bool Network::has_channel(std::string_view c) const {
  return std::find(channels.begin(), channels.end(), c) != channels.end();
}

Diagnostics validate_ta(const Network& net) {
  Diagnostics out;
  auto error = [&](std::string rule, std::string where, std::string msg) {
    out.push_back(Diagnostic{Severity::Error, std::move(rule), std::move(where), std::move(msg)});
  };

  std::set<std::string> chans;
  for (const auto& c : net.channels)
    if (!chans.insert(c).second) error("DUP-CHANNEL", c, "channel declared twice");

  std::set<std::string> globals;
  for (const auto& g : net.globals) {
    if (!globals.insert(g.name).second) error("NAME-SHADOW", g.name, "global declared twice");
    if (!g.type.contains(g.initial)) error("VAR-INITIAL-RANGE", g.name, "initial value out of range");
  }

  std::set<std::string> autos;
  for (const auto& ta : net.automata) {
    const std::string& A = ta.name;
    if (!autos.insert(A).second) error("DUP-AUTOMATON", A, "automaton declared twice");

    std::set<std::string> locals;
    for (const auto& c : ta.clocks) {
      if (!locals.insert(c).second) error("DUP-CLOCK", A + "." + c, "clock declared twice");
      if (globals.count(c)) error("NAME-SHADOW", A + "." + c, "clock shadows a global");
    }
    for (const auto& v : ta.data_vars) {
      if (!locals.insert(v.name).second)
        error("NAME-SHADOW", A + "." + v.name, "local declared twice");
      if (globals.count(v.name)) error("NAME-SHADOW", A + "." + v.name, "local shadows a global");
      if (!v.type.contains(v.initial))
        error("VAR-INITIAL-RANGE", A + "." + v.name, "initial value out of range");
    }

    if (ta.initial >= ta.locations.size()) error("BAD-INITIAL", A, "initial location out of range");
    if (ta.final_exec && *ta.final_exec >= ta.locations.size())
      error("BAD-INITIAL", A, "final location out of range");

    std::set<std::string> locs;
    for (const auto& l : ta.locations) {
      if (!locs.insert(l.name).second) error("DUP-LOCATION", A + "." + l.name, "duplicate location");
      for (const auto& atom : l.invariant) {
        if (!atom.is_upper())
          error("INVARIANT-NOT-UPPER", A + "." + l.name,
                "invariant atom " + to_string(atom.to_expr()) + " is not an upper bound");
        if (!ta.has_clock(atom.clock))
          error("UNKNOWN-CLOCK", A + "." + l.name, "unknown clock '" + atom.clock + "'");
      }
    }

    auto is_var = [&](const std::string& n) { return ta.find_var(n) || globals.count(n); };
    auto check_data_expr = [&](const ExprPtr& e, const std::string& where) {
      for (const Expr* id : identifiers(e)) {
        if (!id->qualifier.empty() || !is_var(id->name))
          error("UNKNOWN-VARIABLE", where, "unknown variable '" + id->qualified_name() + "'");
      }
    };

    for (std::size_t i = 0; i < ta.edges.size(); ++i) {
      const Edge& e = ta.edges[i];
      const std::string where = A + ".edge" + std::to_string(i);
      if (e.source >= ta.locations.size() || e.target >= ta.locations.size())
        error("BAD-EDGE-ENDPOINT", where, "edge endpoint out of range");
      if (e.action && !chans.count(e.action->channel))
        error("UNDECLARED-CHANNEL", where, "channel '" + e.action->channel + "' not declared");
      if (e.receives() && !e.clock_guard.empty())
        error("RECEIVER-CLOCK-GUARD", where, "broadcast receivers may not carry clock guards");
      check_data_expr(e.guard, where);
      for (const auto& atom : e.clock_guard)
        if (!ta.has_clock(atom.clock))
          error("UNKNOWN-CLOCK", where, "unknown clock '" + atom.clock + "'");
      for (const auto& u : e.updates) {
        if (!is_var(u.target))
          error("UNKNOWN-VARIABLE", where, "unknown assignment target '" + u.target + "'");
        check_data_expr(u.value, where);
      }
      for (const auto& r : e.resets) {
        if (!ta.has_clock(r.clock))
          error("UNKNOWN-CLOCK", where, "unknown clock '" + r.clock + "'");
        if (r.value < 0) error("RESET-NEGATIVE", where, "clock reset to a negative value");
      }
    }
  }
  return out;
}

std::map<std::string, std::int64_t> max_clock_constants(const Network& net) {
  std::map<std::string, std::int64_t> out;
  for (const auto& ta : net.automata) {
    auto bump = [&](const ClockAtom& a) {
      auto& m = out[ta.name + "." + a.clock];
      m = std::max(m, a.bound);
    };
    for (const auto& c : ta.clocks) out.emplace(ta.name + "." + c, 0);
    for (const auto& l : ta.locations)
      for (const auto& a : l.invariant) bump(a);
    for (const auto& e : ta.edges) {
      for (const auto& a : e.clock_guard) bump(a);
      for (const auto& r : e.resets) {
        auto& m = out[ta.name + "." + r.clock];
        m = std::max(m, r.value);
      }
    }
  }
  return out;
}

std::string to_string(const std::vector<ClockAtom>& conj, Syntax syntax) {
  std::vector<ExprPtr> parts;
  for (const auto& a : conj) parts.push_back(a.to_expr());
  return to_string(make_and(parts), syntax);
}

namespace {

const char* kind_text(LocationKind k) {
  switch (k) {
    case LocationKind::Normal: return "";
    case LocationKind::Urgent: return " urgent";
    case LocationKind::Committed: return " committed";
  }
  return "";
}

}  // namespace

std::string to_string(const Edge& e, const TimedAutomaton& owner) {
  std::ostringstream os;
  auto loc = [&](std::size_t i) {
    return i < owner.locations.size() ? owner.locations[i].name : "?" + std::to_string(i);
  };
  os << loc(e.source) << " --";
  std::vector<ExprPtr> guard;
  if (!is_true_literal(e.guard)) guard.push_back(e.guard);
  for (const auto& a : e.clock_guard) guard.push_back(a.to_expr());
  if (!guard.empty()) os << " [" << to_string(make_and(guard)) << "]";
  if (e.action) os << ' ' << e.action->channel << (e.action->emit ? '!' : '?');
  if (!e.updates.empty() || !e.resets.empty()) {
    os << " /";
    bool first = true;
    for (const auto& u : e.updates) {
      os << (first ? " " : ", ") << to_string(u);
      first = false;
    }
    for (const auto& r : e.resets) {
      os << (first ? " " : ", ") << r.clock << " := " << r.value;
      first = false;
    }
  }
  os << " --> " << loc(e.target) << "  # " << to_string(e.role);
  return os.str();
}

std::string dump(const TimedAutomaton& ta) {
  std::ostringstream os;
  os << "automaton " << ta.name;
  if (!ta.template_name.empty() && ta.template_name != ta.name) os << " : " << ta.template_name;
  os << " {\n";
  if (!ta.clocks.empty()) {
    os << "  clock";
    for (const auto& c : ta.clocks) os << ' ' << c;
    os << ";\n";
  }
  for (const auto& v : ta.data_vars)
    os << "  var " << v.name << ": " << to_string(v.type) << " = " << v.initial << ";\n";
  for (std::size_t i = 0; i < ta.locations.size(); ++i) {
    const auto& l = ta.locations[i];
    os << "  location " << l.name << kind_text(l.kind);
    if (i == ta.initial) os << " initial";
    if (ta.final_exec && *ta.final_exec == i) os << " final";
    if (!l.invariant.empty()) os << " { " << to_string(l.invariant) << " }";
    os << ";\n";
  }
  for (const auto& e : ta.edges) os << "  " << to_string(e, ta) << "\n";
  os << "}\n";
  return os.str();
}

std::string dump(const Network& net) {
  std::ostringstream os;
  for (const auto& c : net.channels) {
    os << "broadcast chan " << c << ";";
    if (auto it = net.aliases.find(c); it != net.aliases.end()) os << "  // " << it->second;
    os << "\n";
  }
  for (const auto& g : net.globals)
    os << "var " << g.name << ": " << to_string(g.type) << " = " << g.initial << ";\n";
  for (const auto& ta : net.automata) os << "\n" << dump(ta);
  return os.str();
}

}  // namespace adlv
