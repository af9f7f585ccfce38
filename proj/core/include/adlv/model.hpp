// Analysis-level architecture model: analysis functions, ports, connectors,
// trigger policies and behavioral annexes, plus structural validation.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adlv/expr.hpp"
#include "adlv/types.hpp"

namespace adlv {

enum class PortDirection : std::uint8_t { In, Out };
enum class PortKind : std::uint8_t { Flow, ClientServer };

struct Port {
  std::string name;
  PortDirection direction = PortDirection::In;
  PortKind kind = PortKind::Flow;
  DataType type;
  bool is_trigger = false;
  SourceSpan span;

  bool is_input() const { return direction == PortDirection::In; }
  bool is_output() const { return direction == PortDirection::Out; }

  friend bool operator==(const Port& a, const Port& b) {
    return a.name == b.name && a.direction == b.direction && a.kind == b.kind &&
           a.type == b.type && a.is_trigger == b.is_trigger;
  }
};

struct PortRef {
  std::string function;
  std::string port;

  std::string to_string() const { return function + "." + port; }
  friend bool operator==(const PortRef&, const PortRef&) = default;
};

struct Connector {
  PortRef source;
  PortRef target;
  SourceSpan span;

  std::string to_string() const { return source.to_string() + " -> " + target.to_string(); }
  friend bool operator==(const Connector& a, const Connector& b) {
    return a.source == b.source && a.target == b.target;
  }
};

enum class TriggerKind : std::uint8_t { Time, Event };

struct TriggerPolicy {
  TriggerKind policy = TriggerKind::Event;
  std::optional<std::int64_t> period;
  std::int64_t execution_time = 0;
  SourceSpan span;

  friend bool operator==(const TriggerPolicy& a, const TriggerPolicy& b) {
    return a.policy == b.policy && a.period == b.period && a.execution_time == b.execution_time;
  }
};

enum class ConditionKind : std::uint8_t { Pre, Post, Invariant };

struct Condition {
  ConditionKind kind = ConditionKind::Invariant;
  ExprPtr expr;
  SourceSpan span;

  friend bool operator==(const Condition& a, const Condition& b) {
    return a.kind == b.kind && equal(a.expr, b.expr);
  }
};

struct AnnexTransition {
  ExprPtr guard;
  std::vector<Assignment> assignments;
  std::string target;
  SourceSpan span;

  friend bool operator==(const AnnexTransition& a, const AnnexTransition& b) {
    const bool same_guard = equal(a.guard, b.guard) || (is_true_literal(a.guard) && is_true_literal(b.guard));
    return same_guard && a.assignments == b.assignments && a.target == b.target;
  }
};

struct AnnexState {
  std::string name;
  bool initial = false;
  /// Share of the execution time spent in this state; absent means "up to the whole budget".
  std::optional<std::int64_t> budget;
  std::vector<AnnexTransition> transitions;
  SourceSpan span;

  bool is_final() const { return transitions.empty(); }

  friend bool operator==(const AnnexState& a, const AnnexState& b) {
    return a.name == b.name && a.initial == b.initial && a.budget == b.budget &&
           a.transitions == b.transitions;
  }
};

struct BehaviorAnnex {
  std::vector<VariableDecl> parameters;
  std::vector<Condition> parameter_constraints;
  std::vector<AnnexState> state_machine;
  std::vector<Assignment> computations;

  bool has_state_machine() const { return !state_machine.empty(); }
  const AnnexState* initial_state() const;

  friend bool operator==(const BehaviorAnnex&, const BehaviorAnnex&) = default;
};

struct AnalysisFunction {
  std::string name;
  std::string instance;  // `as C1`; names the automaton, empty means `name`
  std::vector<Port> ports;
  TriggerPolicy trigger;
  BehaviorAnnex behavior;
  SourceSpan span;

  const std::string& instance_name() const { return instance.empty() ? name : instance; }
  const Port* find_port(std::string_view port) const;
  std::vector<const Port*> inputs() const;
  std::vector<const Port*> outputs() const;
  std::vector<const Port*> trigger_ports() const;

  friend bool operator==(const AnalysisFunction& a, const AnalysisFunction& b) {
    return a.name == b.name && a.instance == b.instance && a.ports == b.ports &&
           a.trigger == b.trigger && a.behavior == b.behavior;
  }
};

struct EnvWrite {
  PortRef target;
  ExprPtr value;
  std::optional<std::int64_t> period;
  SourceSpan span;

  friend bool operator==(const EnvWrite& a, const EnvWrite& b) {
    return a.target == b.target && equal(a.value, b.value) && a.period == b.period;
  }
};

struct EnvSpec {
  std::string name;
  std::vector<EnvWrite> writes;
  SourceSpan span;

  friend bool operator==(const EnvSpec& a, const EnvSpec& b) {
    return a.name == b.name && a.writes == b.writes;
  }
};

struct FaaModel {
  std::string name;
  std::vector<AnalysisFunction> functions;
  std::vector<Connector> connectors;
  std::vector<VariableDecl> globals;
  std::optional<EnvSpec> environment;
  SourceSpan span;

  const AnalysisFunction* find_function(std::string_view fn) const;
  const Port* find_port(const PortRef& ref) const;

  friend bool operator==(const FaaModel& a, const FaaModel& b) {
    return a.name == b.name && a.functions == b.functions && a.connectors == b.connectors &&
           a.globals == b.globals && a.environment == b.environment;
  }
};

/// Checks every structural rule of the model. Errors make the model
/// unsuitable for transformation; warnings and infos are advisory.
///
/// Rule identifiers:
///   DUP-FUNCTION, DUP-PORT, DUP-VARIABLE, DUP-STATE,
///   TYPE-RANGE, VAR-INITIAL-RANGE,
///   TRIGGER-PORT-DIRECTION, TIME-PERIOD, EVENT-PERIOD, EXEC-NEGATIVE,
///   CONNECTOR-UNKNOWN-FUNCTION, CONNECTOR-UNKNOWN-PORT, CONNECTOR-DIRECTION,
///   CONNECTOR-TYPE,
///   ANNEX-UNRESOLVED, ANNEX-TARGET, ANNEX-INITIAL, ANNEX-BUDGET,
///   ENV-TARGET,
///   CONNECTOR-FANIN (warning), CSPORT-REDUCED (info).
Diagnostics validate_model(const FaaModel& model);

}  // namespace adlv
