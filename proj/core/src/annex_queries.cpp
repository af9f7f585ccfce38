#include "adlv/annex_queries.hpp"

#include <algorithm>

namespace adlv {

std::vector<Query> annex_queries(const FaaModel& model) {
  std::vector<Query> out;
  for (const auto& f : model.functions) {
    const std::string& inst = f.instance_name();
    for (const auto& c : f.behavior.parameter_constraints) {
      if (c.kind != ConditionKind::Invariant) continue;
      auto qualified = rewrite_identifiers(c.expr, [&](const Expr& id) {
        if (!id.qualifier.empty() || model.globals.end() != std::find_if(
                model.globals.begin(), model.globals.end(),
                [&](const VariableDecl& g) { return g.name == id.name; }))
          return make_ident(id.name, id.qualifier, id.span);
        return make_ident(id.name, inst, id.span);
      });
      Query q = Query::invariant(qualified);
      q.label = to_string(q);
      out.push_back(std::move(q));
    }
    for (const auto& s : f.behavior.state_machine) {
      Query q = Query::reach(make_ident(s.name, inst));
      q.label = to_string(q);
      out.push_back(std::move(q));
    }
  }
  return out;
}

}  // namespace adlv
