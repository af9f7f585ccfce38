#include "adlv/report.hpp"

#include <json.hpp>

#include <sstream>

namespace adlv {

#ifndef ADLV_VERSION
#define ADLV_VERSION "0.0.0"
#endif

const char* version() { return ADLV_VERSION; }

TraceView make_trace_view(const Checker& checker, const Trace& trace) {
  TraceView view;
  const auto& net = checker.network();
  const auto vars = checker.var_names();
  const auto clocks = checker.clock_names();
  for (const auto& step : trace.steps) {
    TraceStepView sv;
    sv.label = step.label;
    for (std::size_t a = 0; a < step.state.locations.size(); ++a)
      sv.locations.emplace_back(net.automata[a].name,
                                net.automata[a].locations[step.state.locations[a]].name);
    for (std::size_t i = 0; i < vars.size(); ++i) sv.vars.emplace_back(vars[i], step.state.vars[i]);
    const Dbm& z = step.state.zone;
    if (!z.is_empty())
      for (std::size_t c = 1; c < z.dim(); ++c) {
        ClockBounds b;
        b.clock = clocks[c];
        const Bound lo = z.at(0, c);
        const Bound hi = z.at(c, 0);
        b.lo = -lo.value;
        b.lo_strict = lo.strict;
        if (!hi.infinite) b.hi = hi.value;
        b.hi_strict = hi.strict;
        sv.clocks.push_back(std::move(b));
      }
    view.steps.push_back(std::move(sv));
  }
  view.loop_start = trace.loop_start;
  view.text = format_trace(checker, trace);
  return view;
}

QueryRecord make_record(const Checker& checker, const Query& q, const Verdict& v) {
  QueryRecord r;
  r.label = q.label.empty() ? to_string(q) : q.label;
  r.kind = q.kind;
  r.status = v.status;
  r.stats = v.stats;
  r.message = v.message;
  if (v.trace) {
    if (v.trace_network)
      r.trace = make_trace_view(Checker(*v.trace_network), *v.trace);
    else
      r.trace = make_trace_view(checker, *v.trace);
  }
  return r;
}

bool Report::all_satisfied() const {
  for (const auto& r : records)
    if (r.status != Status::Satisfied) return false;
  return true;
}

bool Report::any_violated() const {
  for (const auto& r : records)
    if (r.status == Status::Violated) return true;
  return false;
}

bool Report::any_unknown() const {
  for (const auto& r : records)
    if (r.status == Status::Unknown) return true;
  return false;
}

namespace {

double millis(const Stats& s) {
  return std::chrono::duration<double, std::milli>(s.wall_time).count();
}

}  // namespace

std::string to_json(const Report& r, int indent) {
  using nlohmann::json;
  json j;
  j["model"] = r.model;
  j["tool_version"] = r.tool_version;
  j["config"] = {{"order", r.order}, {"max_states", r.max_states}, {"subsumption", r.subsumption}};
  j["queries"] = json::array();
  for (const auto& q : r.records) {
    json jq = {{"label", q.label},
               {"kind", to_string(q.kind)},
               {"status", to_string(q.status)},
               {"states_explored", q.stats.states_explored},
               {"states_stored", q.stats.states_stored},
               {"wall_time_ms", millis(q.stats)}};
    if (!q.message.empty()) jq["message"] = q.message;
    if (q.external) jq["external"] = *q.external;
    if (q.trace) {
      json steps = json::array();
      for (const auto& s : q.trace->steps) {
        json js;
        js["label"] = s.label;
        js["locations"] = json::object();
        for (const auto& [a, l] : s.locations) js["locations"][a] = l;
        js["vars"] = json::object();
        for (const auto& [n, v] : s.vars) js["vars"][n] = v;
        js["clocks"] = json::array();
        for (const auto& c : s.clocks) {
          json b = {{"clock", c.clock}, {"lo", c.lo}, {"lo_strict", c.lo_strict},
                    {"hi_strict", c.hi_strict}};
          b["hi"] = c.hi ? json(*c.hi) : json(nullptr);
          js["clocks"].push_back(std::move(b));
        }
        steps.push_back(std::move(js));
      }
      jq["trace"] = {{"steps", std::move(steps)}};
      jq["trace"]["loop_start"] = q.trace->loop_start ? json(*q.trace->loop_start) : json(nullptr);
    }
    j["queries"].push_back(std::move(jq));
  }
  return j.dump(indent) + "\n";
}

std::string to_text(const Report& r) {
  std::ostringstream os;
  os << "model " << r.model << " (adlv " << r.tool_version << ")\n";
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    const auto& q = r.records[i];
    os << "[" << i + 1 << "] " << q.label << "\n    " << to_string(q.status) << "  ("
       << q.stats.states_stored << " stored, " << q.stats.states_explored << " explored, "
       << static_cast<long long>(millis(q.stats)) << " ms)\n";
    if (!q.message.empty()) os << "    " << q.message << "\n";
    if (q.external) os << "    external: " << *q.external << "\n";
    if (q.trace && q.status != Status::Satisfied) {
      std::istringstream lines(q.trace->text);
      std::string line;
      while (std::getline(lines, line)) os << "    " << line << "\n";
    }
  }
  return os.str();
}

}  // namespace adlv
