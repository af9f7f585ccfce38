// Model-to-model compiler from architecture models to timed-automata networks.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "adlv/model.hpp"
#include "adlv/query.hpp"
#include "adlv/ta.hpp"

namespace adlv {

class TransformError : public std::runtime_error {
 public:
  TransformError(std::string kind, std::string function, const std::string& message)
      : std::runtime_error(kind + " in " + function + ": " + message),
        kind_(std::move(kind)),
        function_(std::move(function)) {}
  const std::string& kind() const { return kind_; }
  const std::string& function() const { return function_; }

 private:
  std::string kind_;
  std::string function_;
};

struct RuleError : TransformError {
  RuleError(std::string fn, const std::string& msg) : TransformError("RuleError", std::move(fn), msg) {}
};
struct AnnexError : TransformError {
  AnnexError(std::string fn, const std::string& msg)
      : TransformError("AnnexError", std::move(fn), msg) {}
};
struct RefineError : TransformError {
  RefineError(std::string fn, const std::string& msg)
      : TransformError("RefineError", std::move(fn), msg) {}
};
struct ObserverError : TransformError {
  explicit ObserverError(const std::string& msg) : TransformError("ObserverError", "observer", msg) {}
};

/// Something that activates a trigger port: a connector or an environment write.
struct TriggerSource {
  std::string channel;
  std::string port;  // trigger port of the receiving function
};

/// Naming and declarations shared by all generated automata.
struct TransformContext {
  std::vector<VariableDecl> globals;
  std::vector<std::string> channels;
  std::map<std::string, std::string> aliases;
  /// `Fn.port` -> global carrying values into that input port.
  std::map<std::string, std::string> port_globals;
  /// Channel per connector, in connector order.
  std::vector<std::string> connector_channels;
  /// Channel per environment write, in write order.
  std::vector<std::string> env_channels;
  /// Function name -> its trigger sources, in declaration order.
  std::map<std::string, std::vector<TriggerSource>> trigger_sources;
  /// `Fn.port` keys of trigger input ports that have a global.
  std::set<std::string> trigger_ports;
  /// Function name -> `<Fn>_ConnectT` (TIME functions only).
  std::map<std::string, std::string> time_tokens;
  /// Function name -> `<Fn>_TimeTriggerOut` (TIME functions only).
  std::map<std::string, std::string> time_out_channels;

  static TransformContext build(const FaaModel& model);
  const std::string* port_global(const std::string& fn, const std::string& port) const;
};

/// `<Fn>_<port>`
std::string port_global_name(const std::string& fn, const std::string& port);

/// Untimed skeleton: Init, annex states (if any), committed l_f.
TimedAutomaton transform_af_base(const AnalysisFunction& af);

/// Appends the connector payload to every Write edge of `source` and expands
/// it into a committed chain emitting one channel per connector.
TimedAutomaton extend_writes(TimedAutomaton ta, const AnalysisFunction& source,
                             const std::vector<Connector>& connectors, const TransformContext& ctx);

TimedAutomaton apply_time_trigger_rule(const AnalysisFunction& af, const TransformContext& ctx);
TimedAutomaton apply_event_trigger_rule(const AnalysisFunction& af, const TransformContext& ctx);

/// Replaces location `run` by the annex state machine.
TimedAutomaton refine_run(TimedAutomaton ta, const std::string& run, const AnalysisFunction& af);

/// Observer named "Obs" with locations Init, Run, error and clock obstime.
/// Without a bound the error location is unreachable.
TimedAutomaton build_observer(const std::string& event1, const std::string& event2,
                              std::optional<std::int64_t> max_time);

TimedAutomaton build_env(const EnvSpec& env, const FaaModel& model, const TransformContext& ctx);

/// Requires validate_model(model) to be free of errors.
Network transform_faa(const FaaModel& model);

/// Makes the events of a bounded-response query observable and appends the
/// observer. Events are channel names or `Automaton.Location` atoms; entering
/// such a location emits `obs_<Automaton>_<Location>`.
Network attach_observer(Network net, const Query& bounded_response);

/// The leads-to query an unbounded response check reduces to.
Query observer_leads_to();

/// Structural invariants of generated networks; one message per violation.
std::vector<std::string> check_shape(const Network& net, const FaaModel& model);

}  // namespace adlv
