// Index-resolved form of a Network used by the explorer.
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "adlv/checker.hpp"
#include "adlv/ta.hpp"

namespace adlv::detail {

struct CNode {
  enum class Kind : std::uint8_t { Const, Var, Loc, Clock, Unary, Binary };
  Kind kind = Kind::Const;
  ExprOp op = ExprOp::IntLit;
  std::int64_t value = 0;      // Const; Clock: bound
  int index = -1;              // Var: variable; Loc: location; Clock: clock
  int automaton = -1;          // Loc
  bool has_clock = false;      // some Clock node below
  std::shared_ptr<const CNode> lhs, rhs;
};
using CPtr = std::shared_ptr<const CNode>;

struct CAtom {
  int clock = 0;
  ExprOp op = ExprOp::Le;
  std::int64_t bound = 0;
};

struct CEdge {
  int source = 0;
  int target = 0;
  CPtr guard;  // null means true
  std::vector<CAtom> clock_guard;
  int channel = -1;
  bool emit = false;
  std::vector<std::pair<int, CPtr>> updates;
  std::vector<std::pair<int, std::int64_t>> resets;
};

struct CLocation {
  LocationKind kind = LocationKind::Normal;
  std::vector<CAtom> invariant;
};

struct CAutomaton {
  std::vector<CLocation> locations;
  std::vector<CEdge> edges;
  std::vector<std::vector<int>> active;                // per location: internal and emitting edges
  std::vector<std::map<int, std::vector<int>>> recv;  // per location: channel -> receiving edges
  std::vector<std::vector<int>> inactive;  // per location: clocks reset before they are read
  int initial = 0;
};

struct VarInfo {
  std::string name;  // `g` or `A.x`
  std::int32_t lo = 0;
  std::int32_t hi = 0;
  std::int32_t initial = 0;
};

class System {
 public:
  explicit System(const Network& net);

  const Network& net;
  std::vector<CAutomaton> autos;
  std::vector<VarInfo> vars;
  std::vector<std::string> clocks;  // index 0 is the reference clock
  std::vector<std::int64_t> maxc;   // extrapolation bounds per clock

  std::size_t dim() const { return clocks.size(); }

  /// Query-level expression: qualified names resolve against automata.
  CPtr compile_query(const ExprPtr& e) const;
  /// Largest constant each clock is compared against in `e`.
  void collect_clock_constants(const CNode& n, std::vector<std::int64_t>& out) const;
  /// Marks every clock occurring in `n`.
  static void collect_clocks(const CNode& n, std::vector<char>& out);

  std::int64_t eval(const CNode& n, const std::vector<std::int32_t>& locs,
                    const std::vector<std::int32_t>& vars) const;

 private:
  CPtr compile(const ExprPtr& e, int automaton, bool query) const;
  int find_automaton(const std::string& name) const;
  static void compute_inactive(CAutomaton& ca, int first, std::size_t count);

  std::map<std::string, int> global_idx_;
  std::vector<std::map<std::string, int>> local_idx_;  // per automaton
  std::vector<std::map<std::string, int>> clock_idx_;  // per automaton
  std::map<std::string, int> channel_idx_;
};

}  // namespace adlv::detail
