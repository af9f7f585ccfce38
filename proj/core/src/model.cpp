#include "adlv/model.hpp"

#include <map>
#include <set>

namespace adlv {

const AnnexState* BehaviorAnnex::initial_state() const {
  for (const auto& s : state_machine)
    if (s.initial) return &s;
  return nullptr;
}

const Port* AnalysisFunction::find_port(std::string_view port) const {
  for (const auto& p : ports)
    if (p.name == port) return &p;
  return nullptr;
}

std::vector<const Port*> AnalysisFunction::inputs() const {
  std::vector<const Port*> out;
  for (const auto& p : ports)
    if (p.is_input()) out.push_back(&p);
  return out;
}

std::vector<const Port*> AnalysisFunction::outputs() const {
  std::vector<const Port*> out;
  for (const auto& p : ports)
    if (p.is_output()) out.push_back(&p);
  return out;
}

std::vector<const Port*> AnalysisFunction::trigger_ports() const {
  std::vector<const Port*> out;
  for (const auto& p : ports)
    if (p.is_input() && p.is_trigger) out.push_back(&p);
  return out;
}

const AnalysisFunction* FaaModel::find_function(std::string_view fn) const {
  for (const auto& f : functions)
    if (f.name == fn) return &f;
  return nullptr;
}

const Port* FaaModel::find_port(const PortRef& ref) const {
  const auto* f = find_function(ref.function);
  return f ? f->find_port(ref.port) : nullptr;
}

namespace {

struct Collector {
  Diagnostics out;
  void add(Severity s, std::string rule, std::string where, std::string msg) {
    out.push_back(Diagnostic{s, std::move(rule), std::move(where), std::move(msg)});
  }
  void error(std::string rule, std::string where, std::string msg) {
    add(Severity::Error, std::move(rule), std::move(where), std::move(msg));
  }
};

void check_type(Collector& c, const DataType& t, const std::string& where) {
  if (t.lo > t.hi)
    c.error("TYPE-RANGE", where, "empty range " + to_string(t));
}

void check_var(Collector& c, const VariableDecl& v, const std::string& where) {
  check_type(c, v.type, where);
  if (v.type.lo <= v.type.hi && !v.type.contains(v.initial))
    c.error("VAR-INITIAL-RANGE", where,
            "initial value " + std::to_string(v.initial) + " outside " + to_string(v.type));
}

void check_function(Collector& c, const AnalysisFunction& f,
                    const std::set<std::string, std::less<>>& global_names) {
  std::set<std::string, std::less<>> names;
  for (const auto& p : f.ports) {
    const std::string where = f.name + "." + p.name;
    if (!names.insert(p.name).second) c.error("DUP-PORT", where, "duplicate port");
    check_type(c, p.type, where);
    if (p.is_trigger && !p.is_input())
      c.error("TRIGGER-PORT-DIRECTION", where, "trigger port must be an input");
    if (p.kind == PortKind::ClientServer)
      c.add(Severity::Info, "CSPORT-REDUCED", where,
            "client-server port analysed as a flow port");
  }
  for (const auto& v : f.behavior.parameters) {
    const std::string where = f.name + "." + v.name;
    if (!names.insert(v.name).second) c.error("DUP-VARIABLE", where, "duplicate name");
    check_var(c, v, where);
  }

  const auto& t = f.trigger;
  if (t.execution_time < 0)
    c.error("EXEC-NEGATIVE", f.name, "execution time must be non-negative");
  if (t.policy == TriggerKind::Time) {
    if (!t.period || *t.period <= t.execution_time)
      c.error("TIME-PERIOD", f.name, "time-triggered function needs period > execution time");
  } else if (t.period) {
    c.error("EVENT-PERIOD", f.name, "event-triggered function must not declare a period");
  }

  auto resolves = [&](const std::string& n) {
    return names.count(n) > 0 || global_names.count(n) > 0;
  };
  auto check_expr = [&](const ExprPtr& e, const std::string& where) {
    for (const Expr* id : identifiers(e)) {
      if ((!id->qualifier.empty() && id->qualifier != f.name) || !resolves(id->name))
        c.error("ANNEX-UNRESOLVED", where, "unresolved identifier '" + id->qualified_name() + "'");
    }
  };
  auto check_assigns = [&](const std::vector<Assignment>& as, const std::string& where) {
    for (const auto& a : as) {
      if (!resolves(a.target))
        c.error("ANNEX-UNRESOLVED", where, "unresolved assignment target '" + a.target + "'");
      check_expr(a.value, where);
    }
  };

  const auto& ba = f.behavior;
  for (const auto& cond : ba.parameter_constraints) check_expr(cond.expr, f.name);
  check_assigns(ba.computations, f.name);

  if (ba.has_state_machine()) {
    std::set<std::string, std::less<>> states;
    int initial = 0;
    bool any_budget = false;
    std::int64_t budget_sum = 0;
    for (const auto& s : ba.state_machine) {
      if (!states.insert(s.name).second)
        c.error("DUP-STATE", f.name + "." + s.name, "duplicate annex state");
      if (s.initial) ++initial;
      if (s.budget) {
        any_budget = true;
        budget_sum += *s.budget;
        if (*s.budget < 0)
          c.error("ANNEX-BUDGET", f.name + "." + s.name, "negative budget");
      }
    }
    if (initial != 1)
      c.error("ANNEX-INITIAL", f.name,
              "exactly one initial state required, found " + std::to_string(initial));
    if (any_budget && budget_sum != t.execution_time)
      c.error("ANNEX-BUDGET", f.name,
              "state budgets sum to " + std::to_string(budget_sum) + ", execution time is " +
                  std::to_string(t.execution_time));
    for (const auto& s : ba.state_machine) {
      const std::string where = f.name + "." + s.name;
      for (const auto& tr : s.transitions) {
        check_expr(tr.guard, where);
        check_assigns(tr.assignments, where);
        if (!states.count(tr.target))
          c.error("ANNEX-TARGET", where, "unknown target state '" + tr.target + "'");
      }
    }
  }
}

}  // namespace

Diagnostics validate_model(const FaaModel& model) {
  Collector c;

  std::set<std::string, std::less<>> globals;
  for (const auto& v : model.globals) {
    if (!globals.insert(v.name).second) c.error("DUP-VARIABLE", v.name, "duplicate global");
    check_var(c, v, v.name);
  }

  std::set<std::string, std::less<>> fns;
  for (const auto& f : model.functions) {
    if (!fns.insert(f.name).second) c.error("DUP-FUNCTION", f.name, "duplicate function");
    if (!f.instance.empty() && f.instance != f.name && !fns.insert(f.instance).second)
      c.error("DUP-FUNCTION", f.instance, "instance name already used");
    check_function(c, f, globals);
  }

  std::map<std::string, int> writers;  // data input port -> number of writers
  for (const auto& con : model.connectors) {
    const std::string where = con.to_string();
    bool endpoints_ok = true;
    for (const PortRef* r : {&con.source, &con.target}) {
      if (!model.find_function(r->function)) {
        c.error("CONNECTOR-UNKNOWN-FUNCTION", where, "unknown function '" + r->function + "'");
        endpoints_ok = false;
      } else if (!model.find_port(*r)) {
        c.error("CONNECTOR-UNKNOWN-PORT", where, "unknown port '" + r->to_string() + "'");
        endpoints_ok = false;
      }
    }
    if (!endpoints_ok) continue;
    const Port* src = model.find_port(con.source);
    const Port* dst = model.find_port(con.target);
    if (!src->is_output() || !dst->is_input())
      c.error("CONNECTOR-DIRECTION", where, "connectors run from an output to an input port");
    // A trigger target only records that the source wrote; its type is not the payload.
    if (!dst->is_trigger && !(src->type == dst->type))
      c.error("CONNECTOR-TYPE", where,
              "type mismatch " + to_string(src->type) + " vs " + to_string(dst->type));
    if (!dst->is_trigger) ++writers[con.target.to_string()];
  }

  if (model.environment) {
    for (const auto& w : model.environment->writes) {
      const Port* p = model.find_port(w.target);
      if (!p || !p->is_input())
        c.error("ENV-TARGET", model.environment->name + "->" + w.target.to_string(),
                "environment writes must target an input port");
      else if (!p->is_trigger)
        ++writers[w.target.to_string()];
    }
  }

  for (const auto& [port, n] : writers)
    if (n > 1)
      c.add(Severity::Warning, "CONNECTOR-FANIN", port,
            std::to_string(n) + " writers; the last write wins");

  return std::move(c.out);
}

}  // namespace adlv
