#include <sstream>

#include "adlv/parser.hpp"

namespace adlv {

Query Query::invariant(ExprPtr e) {
  Query q;
  q.kind = QueryKind::Invariant;
  q.first = std::move(e);
  return q;
}

Query Query::reach(ExprPtr e) {
  Query q;
  q.kind = QueryKind::Reach;
  q.first = std::move(e);
  return q;
}

Query Query::leads_to(ExprPtr p, ExprPtr r) {
  Query q;
  q.kind = QueryKind::LeadsTo;
  q.first = std::move(p);
  q.second = std::move(r);
  return q;
}

Query Query::bounded_response(ExprPtr request, ExprPtr response, std::optional<std::int64_t> t) {
  Query q;
  q.kind = QueryKind::BoundedResponse;
  q.first = std::move(request);
  q.second = std::move(response);
  q.bound = t;
  return q;
}

Query Query::deadlock_free() { return Query{}; }

std::string to_string(QueryKind kind) {
  switch (kind) {
    case QueryKind::Invariant: return "invariant";
    case QueryKind::Reach: return "reach";
    case QueryKind::LeadsTo: return "leads-to";
    case QueryKind::BoundedResponse: return "bounded-response";
    case QueryKind::DeadlockFree: return "deadlock-free";
  }
  return "?";
}

std::string to_string(const Query& q) {
  switch (q.kind) {
    case QueryKind::Invariant: return "A[] " + to_string(q.first);
    case QueryKind::Reach: return "E<> " + to_string(q.first);
    case QueryKind::LeadsTo: return to_string(q.first) + " --> " + to_string(q.second);
    case QueryKind::BoundedResponse:
      return "response " + to_string(q.first) + " => " + to_string(q.second) + " within " +
             (q.bound ? std::to_string(*q.bound) : std::string("inf"));
    case QueryKind::DeadlockFree: return "A[] not deadlock";
  }
  return {};
}

namespace {

std::string type_text(const DataType& t) {
  if (t.is_bool()) return "bool";
  return "int[" + std::to_string(t.lo) + ".." + std::to_string(t.hi) + "]";
}

void print_var(std::ostream& os, const VariableDecl& v, const char* indent) {
  os << indent << "var " << v.name << ": " << type_text(v.type) << " = " << v.initial << ";\n";
}

std::string assigns_text(const std::vector<Assignment>& as) {
  std::string out;
  for (std::size_t i = 0; i < as.size(); ++i) {
    if (i) out += ", ";
    out += to_string(as[i]);
  }
  return out;
}

void print_function(std::ostream& os, const AnalysisFunction& f) {
  os << "  function " << f.name;
  if (!f.instance.empty()) os << " as " << f.instance;
  os << " {\n";
  os << "    trigger ";
  if (f.trigger.policy == TriggerKind::Time) {
    os << "time period " << f.trigger.period.value_or(0);
  } else {
    os << "event";
  }
  os << " exec " << f.trigger.execution_time << ";\n";
  for (const auto& p : f.ports) {
    os << "    " << (p.is_input() ? "in" : "out");
    if (p.is_trigger) os << " trigger";
    if (p.kind == PortKind::ClientServer) os << " client";
    os << " port " << p.name << ": " << type_text(p.type) << ";\n";
  }
  const auto& ba = f.behavior;
  for (const auto& v : ba.parameters) print_var(os, v, "    ");
  if (ba.parameter_constraints.empty() && ba.state_machine.empty() && ba.computations.empty()) {
    os << "  }\n";
    return;
  }
  os << "    annex {\n";
  for (const auto& c : ba.parameter_constraints) {
    const char* kw = c.kind == ConditionKind::Pre    ? "pre"
                     : c.kind == ConditionKind::Post ? "post"
                                                     : "invariant";
    os << "      " << kw << ' ' << to_string(c.expr) << ";\n";
  }
  if (!ba.computations.empty()) os << "      compute " << assigns_text(ba.computations) << ";\n";
  for (const auto& s : ba.state_machine) {
    os << "      state " << s.name;
    if (s.initial) os << " initial";
    if (s.budget) os << " budget " << *s.budget;
    os << " {";
    if (s.transitions.empty()) {
      os << "}\n";
      continue;
    }
    os << '\n';
    for (const auto& t : s.transitions) {
      os << "        on " << to_string(t.guard ? t.guard : make_bool(true));
      if (!t.assignments.empty()) os << " / " << assigns_text(t.assignments);
      os << " -> " << t.target << ";\n";
    }
    os << "      }\n";
  }
  os << "    }\n  }\n";
}

}  // namespace

std::string print_model(const FaaModel& m) {
  std::ostringstream os;
  os << "faa " << m.name << " {\n";
  for (const auto& v : m.globals) print_var(os, v, "  ");
  for (const auto& f : m.functions) print_function(os, f);
  for (const auto& c : m.connectors) os << "  connect " << c.to_string() << ";\n";
  if (m.environment) {
    os << "  env " << m.environment->name << " {";
    if (m.environment->writes.empty()) {
      os << "}\n";
    } else {
      os << '\n';
      for (const auto& w : m.environment->writes) {
        os << "    write " << w.target.to_string() << " := " << to_string(w.value);
        if (w.period) os << " every " << *w.period;
        os << ";\n";
      }
      os << "  }\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace adlv
