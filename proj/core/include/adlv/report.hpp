// Per-run report of query verdicts, rendered as text or JSON.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adlv/checker.hpp"

namespace adlv {

const char* version();

struct ClockBounds {
  std::string clock;
  std::int64_t lo = 0;
  bool lo_strict = false;
  std::optional<std::int64_t> hi;  // absent: unbounded
  bool hi_strict = false;
};

struct TraceStepView {
  std::string label;
  std::vector<std::pair<std::string, std::string>> locations;  // automaton, location
  std::vector<std::pair<std::string, std::int32_t>> vars;
  std::vector<ClockBounds> clocks;
};

struct TraceView {
  std::vector<TraceStepView> steps;
  std::optional<std::size_t> loop_start;
  std::string text;  // format_trace output
};

TraceView make_trace_view(const Checker& checker, const Trace& trace);

struct QueryRecord {
  std::string label;
  QueryKind kind = QueryKind::DeadlockFree;
  Status status = Status::Unknown;
  Stats stats;
  std::string message;
  std::optional<TraceView> trace;
  std::optional<std::string> external;  // verdict text from an external verifier
};

/// Resolves traces over composed networks against the right automata.
QueryRecord make_record(const Checker& checker, const Query& q, const Verdict& v);

struct Report {
  std::string model;
  std::string tool_version = version();
  std::string order = "bfs";
  std::size_t max_states = 1'000'000;
  bool subsumption = true;
  std::vector<QueryRecord> records;

  bool all_satisfied() const;
  bool any_violated() const;
  bool any_unknown() const;
};

std::string to_json(const Report& r, int indent = 2);
std::string to_text(const Report& r);

}  // namespace adlv
