// Timed automata networks: the target of the transformation and the input of
// the checker. Only broadcast channels exist.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adlv/expr.hpp"
#include "adlv/types.hpp"

namespace adlv {

enum class LocationKind : std::uint8_t { Normal, Urgent, Committed };

/// `clock op bound`; op is one of Lt, Le, Eq, Ge, Gt.
struct ClockAtom {
  std::string clock;
  ExprOp op = ExprOp::Le;
  std::int64_t bound = 0;

  bool is_upper() const { return op == ExprOp::Lt || op == ExprOp::Le; }
  ExprPtr to_expr() const;
  friend bool operator==(const ClockAtom&, const ClockAtom&) = default;
};

struct Location {
  std::string name;
  LocationKind kind = LocationKind::Normal;
  std::vector<ClockAtom> invariant;  // conjunction

  bool is_committed() const { return kind == LocationKind::Committed; }
  bool is_urgent() const { return kind == LocationKind::Urgent; }
  friend bool operator==(const Location&, const Location&) = default;
};

struct ChannelAction {
  std::string channel;
  bool emit = true;

  friend bool operator==(const ChannelAction&, const ChannelAction&) = default;
};

struct ClockReset {
  std::string clock;
  std::int64_t value = 0;

  friend bool operator==(const ClockReset&, const ClockReset&) = default;
};

/// What an edge does in the generated model. Informational only; the checker
/// ignores it. Exported as a comment and recovered on import.
enum class EdgeRole : std::uint8_t { Internal, Read, Write, Notify, Release, Env, Observer };

const char* to_string(EdgeRole role);
std::optional<EdgeRole> parse_edge_role(std::string_view text);

struct Edge {
  std::size_t source = 0;
  std::size_t target = 0;
  ExprPtr guard;  // over data variables; null means true
  std::vector<ClockAtom> clock_guard;
  std::optional<ChannelAction> action;
  std::vector<Assignment> updates;  // applied in order
  std::vector<ClockReset> resets;
  EdgeRole role = EdgeRole::Internal;

  bool emits() const { return action && action->emit; }
  bool receives() const { return action && !action->emit; }
  friend bool operator==(const Edge& a, const Edge& b) {
    return a.source == b.source && a.target == b.target && equal(a.guard, b.guard) &&
           a.clock_guard == b.clock_guard && a.action == b.action && a.updates == b.updates &&
           a.resets == b.resets && a.role == b.role;
  }
};

struct TimedAutomaton {
  std::string name;           // instance name, used by queries
  std::string template_name;  // exported template; empty means `name`
  std::vector<Location> locations;
  std::size_t initial = 0;
  std::optional<std::size_t> final_exec;
  std::vector<std::string> clocks;
  std::vector<VariableDecl> data_vars;
  std::vector<Edge> edges;

  const std::string& template_or_name() const {
    return template_name.empty() ? name : template_name;
  }
  std::optional<std::size_t> find_location(std::string_view loc) const;
  std::size_t add_location(std::string loc, LocationKind kind = LocationKind::Normal,
                           std::vector<ClockAtom> invariant = {});
  bool has_clock(std::string_view c) const;
  const VariableDecl* find_var(std::string_view v) const;

  friend bool operator==(const TimedAutomaton&, const TimedAutomaton&) = default;
};

struct Network {
  std::vector<TimedAutomaton> automata;
  std::vector<std::string> channels;
  std::vector<VariableDecl> globals;
  /// Channel name -> role name (TimeTriggerOut, EventTriggerOut, ...), for display.
  std::map<std::string, std::string> aliases;

  const TimedAutomaton* find_automaton(std::string_view a) const;
  TimedAutomaton* find_automaton(std::string_view a);
  const VariableDecl* find_global(std::string_view v) const;
  bool has_channel(std::string_view c) const;

  friend bool operator==(const Network&, const Network&) = default;
};

/// Rule identifiers: INVARIANT-NOT-UPPER, UNDECLARED-CHANNEL, DUP-CHANNEL,
/// BAD-INITIAL, BAD-EDGE-ENDPOINT, DUP-LOCATION, DUP-CLOCK, DUP-AUTOMATON,
/// NAME-SHADOW, UNKNOWN-CLOCK, UNKNOWN-VARIABLE, RECEIVER-CLOCK-GUARD,
/// RESET-NEGATIVE, VAR-INITIAL-RANGE.
Diagnostics validate_ta(const Network& net);

/// Keyed by `Automaton.clock`. Clocks never compared map to 0.
std::map<std::string, std::int64_t> max_clock_constants(const Network& net);

/// Human-readable `.ta` dump. Deterministic.
std::string dump(const Network& net);
std::string dump(const TimedAutomaton& ta);
std::string to_string(const Edge& e, const TimedAutomaton& owner);
std::string to_string(const std::vector<ClockAtom>& conj, Syntax syntax = Syntax::Dsl);

}  // namespace adlv
