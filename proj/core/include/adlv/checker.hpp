// Zone-graph exploration of a network and evaluation of the five query kinds.
#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "adlv/dbm.hpp"
#include "adlv/query.hpp"
#include "adlv/ta.hpp"

namespace adlv {

namespace detail {
class System;
}

/// Unresolved or ill-typed identifier in a guard, update or query.
struct TypeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptyInitial : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// An update drove a variable outside its declared range.
struct RangeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SymbolicState {
  std::vector<std::int32_t> locations;  // one per automaton
  std::vector<std::int32_t> vars;       // globals, then each automaton's locals
  Dbm zone;

  friend bool operator==(const SymbolicState&, const SymbolicState&) = default;
};

/// One discrete step: the moving automata and the edge each one took.
struct Move {
  struct Part {
    std::size_t automaton = 0;
    std::size_t edge = 0;
    friend bool operator==(const Part&, const Part&) = default;
  };
  std::vector<Part> parts;  // sender (or the lone mover) first
  std::string channel;      // empty for internal moves

  friend bool operator==(const Move&, const Move&) = default;
};

struct Successor {
  Move move;
  SymbolicState state;
};

struct TraceStep {
  std::optional<Move> move;  // absent for the initial state
  std::string label;         // `init`, `sync <chan> {A: L->L', ...}` or `tau {A: L->L'}`
  SymbolicState state;
};

struct Trace {
  std::vector<TraceStep> steps;
  /// Lasso traces: index of the step the final step loops back to.
  std::optional<std::size_t> loop_start;
};

enum class Status : std::uint8_t { Satisfied, Violated, Unknown };
std::string to_string(Status s);

struct Stats {
  std::size_t states_explored = 0;
  std::size_t states_stored = 0;
  std::chrono::duration<double> wall_time{0};
};

struct Verdict {
  Status status = Status::Unknown;
  Query query;
  std::optional<Trace> trace;
  Stats stats;
  std::string message;  // why Violated/Unknown; also range errors
  /// Set when the trace runs over a composed network (observer attached).
  std::shared_ptr<const Network> trace_network;
};

enum class SearchOrder : std::uint8_t { Bfs, Dfs };
enum class Reading : std::uint8_t { Universal, Existential };

struct CheckOptions {
  SearchOrder order = SearchOrder::Bfs;
  std::size_t max_states = 1'000'000;
  bool subsumption = true;
};

class Checker {
 public:
  explicit Checker(Network net);
  ~Checker();
  Checker(Checker&&) noexcept;
  Checker& operator=(Checker&&) noexcept;

  const Network& network() const { return net_; }

  SymbolicState initial_state() const;
  /// Throws RangeError if some enabled transition leaves a variable's range.
  std::vector<Successor> successors(const SymbolicState& s) const;

  bool eval(const SymbolicState& s, const ExprPtr& expr, Reading reading) const;

  Verdict check(const Query& q, const CheckOptions& opts = {}) const;
  Verdict check_invariant(const ExprPtr& expr, const CheckOptions& opts = {}) const;
  Verdict check_reachability(const ExprPtr& expr, const CheckOptions& opts = {}) const;
  Verdict check_deadlock_free(const CheckOptions& opts = {}) const;
  Verdict check_leads_to(const ExprPtr& p, const ExprPtr& q, const CheckOptions& opts = {}) const;
  /// Composes the response observer; `--unbounded` corresponds to an absent bound.
  Verdict check_bounded_response(const Query& q, const CheckOptions& opts = {}) const;

  std::string label(const Move& m) const;
  /// Locations, variables and clock bounds of a state.
  std::string describe(const SymbolicState& s) const;
  std::vector<std::string> clock_names() const;
  std::vector<std::string> var_names() const;

 private:
  Network net_;
  std::unique_ptr<detail::System> sys_;
};

// Free-function forms.
SymbolicState initial_state(const Network& net);
std::vector<Successor> successors(const Network& net, const SymbolicState& s);
Verdict check_invariant(const Network& net, const ExprPtr& expr, const CheckOptions& opts = {});
Verdict check_reachability(const Network& net, const ExprPtr& expr, const CheckOptions& opts = {});
Verdict check_deadlock_free(const Network& net, const CheckOptions& opts = {});
Verdict check_leads_to(const Network& net, const ExprPtr& p, const ExprPtr& q,
                       const CheckOptions& opts = {});
Verdict check_bounded_response(const Network& net, const Query& q, const CheckOptions& opts = {});
bool eval_expr(const Network& net, const SymbolicState& s, const ExprPtr& expr, Reading reading);

/// Text rendering: numbered steps with changed variables and clock bounds.
std::string format_trace(const Checker& checker, const Trace& trace);

}  // namespace adlv
