#include "adlv/uppaal.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <algorithm>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "adlv/parser.hpp"

namespace adlv {

namespace {

const std::set<std::string, std::less<>>& reserved_words() {
  static const std::set<std::string, std::less<>> words = {
      "after_update", "and",      "assign",  "before_update", "bool",     "break",
      "broadcast",    "case",     "chan",    "clock",         "commit",   "committed",
      "const",        "continue", "deadlock", "default",      "do",       "double",
      "else",         "exists",   "false",   "for",           "forall",   "guard",
      "if",           "imply",    "init",    "int",           "meta",     "not",
      "or",           "priority", "process", "progress",      "rate",     "return",
      "scalar",       "select",   "state",   "string",        "struct",   "sum",
      "switch",       "sync",     "system",  "trans",         "true",     "typedef",
      "urgent",       "void",     "while",
  };
  return words;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string type_decl(const VariableDecl& v) {
  if (v.type.is_bool()) return "bool " + v.name + " = " + (v.initial ? "true" : "false") + ";";
  return "int[" + std::to_string(v.type.lo) + "," + std::to_string(v.type.hi) + "] " + v.name +
         " = " + std::to_string(v.initial) + ";";
}

// Renames reserved identifiers across the whole network.
Network rename_reserved(const Network& in, Diagnostics& warnings) {
  std::set<std::string> used;
  auto note = [&](const std::string& n) { used.insert(n); };
  for (const auto& g : in.globals) note(g.name);
  for (const auto& c : in.channels) note(c);
  for (const auto& ta : in.automata) {
    note(ta.name);
    note(ta.template_or_name());
    for (const auto& l : ta.locations) note(l.name);
    for (const auto& c : ta.clocks) note(c);
    for (const auto& v : ta.data_vars) note(v.name);
  }
  std::map<std::string, std::string> map;
  for (const auto& n : used) {
    if (!is_uppaal_reserved(n)) continue;
    std::string repl = n + "_v";
    if (used.count(repl)) throw ExportError("cannot rename reserved identifier " + n + ": " + repl + " exists");
    map[n] = repl;
    warnings.push_back({Severity::Warning, "EXPORT-RESERVED", n,
                        "reserved identifier '" + n + "' renamed to '" + repl + "'"});
  }
  if (map.empty()) return in;
  auto r = [&](const std::string& n) {
    auto it = map.find(n);
    return it == map.end() ? n : it->second;
  };
  auto rx = [&](const ExprPtr& e) -> ExprPtr {
    if (!e) return e;
    return rewrite_identifiers(e, [&](const Expr& id) {
      return make_ident(r(id.name), id.qualifier.empty() ? std::string{} : r(id.qualifier), id.span);
    });
  };
  Network net = in;
  for (auto& g : net.globals) g.name = r(g.name);
  for (auto& c : net.channels) c = r(c);
  std::map<std::string, std::string> aliases;
  for (const auto& [c, a] : net.aliases) aliases[r(c)] = a;
  net.aliases = std::move(aliases);
  for (auto& ta : net.automata) {
    ta.name = r(ta.name);
    if (!ta.template_name.empty()) ta.template_name = r(ta.template_name);
    for (auto& l : ta.locations) {
      l.name = r(l.name);
      for (auto& a : l.invariant) a.clock = r(a.clock);
    }
    for (auto& c : ta.clocks) c = r(c);
    for (auto& v : ta.data_vars) v.name = r(v.name);
    for (auto& e : ta.edges) {
      e.guard = rx(e.guard);
      for (auto& a : e.clock_guard) a.clock = r(a.clock);
      if (e.action) e.action->channel = r(e.action->channel);
      for (auto& u : e.updates) {
        u.target = r(u.target);
        u.value = rx(u.value);
      }
      for (auto& c : e.resets) c.clock = r(c.clock);
    }
  }
  return net;
}

std::string guard_text(const Edge& e) {
  ExprPtr g = is_true_literal(e.guard) ? nullptr : e.guard;
  for (const auto& a : e.clock_guard) g = g ? make_binary(ExprOp::And, g, a.to_expr()) : a.to_expr();
  return g ? to_string(g, Syntax::Uppaal) : std::string{};
}

std::string assignment_text(const Edge& e) {
  std::string out;
  for (const auto& u : e.updates) out += (out.empty() ? "" : ", ") + to_string(u, Syntax::Uppaal);
  for (const auto& c : e.resets)
    out += (out.empty() ? "" : ", ") + c.clock + " = " + std::to_string(c.value);
  return out;
}

void label(std::ostream& os, const char* kind, const std::string& text, int x, int y) {
  if (text.empty()) return;
  os << "      <label kind=\"" << kind << "\" x=\"" << x << "\" y=\"" << y << "\">" << escape(text)
     << "</label>\n";
}

}  // namespace

bool is_uppaal_reserved(std::string_view name) { return reserved_words().count(name) > 0; }

XmlExport export_xml(const Network& input, std::string_view tool_version) {
  XmlExport out;
  const Network net = rename_reserved(input, out.warnings);
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n"
     << "<!DOCTYPE nta PUBLIC '-//Uppaal Team//DTD Flat System 1.1//EN' "
        "'http://www.it.uu.se/research/group/darts/uppaal/flat-1_2.dtd'>\n";
  if (!tool_version.empty()) os << "<!-- adlv " << escape(tool_version) << " -->\n";
  os << "<nta>\n  <declaration>";
  std::string decl;
  for (const auto& c : net.channels) {
    decl += "broadcast chan " + c + ";";
    if (auto it = net.aliases.find(c); it != net.aliases.end()) decl += "  // alias: " + it->second;
    decl += "\n";
  }
  for (const auto& g : net.globals) decl += type_decl(g) + "\n";
  os << escape(decl) << "</declaration>\n";

  int next_id = 0;
  for (const auto& ta : net.automata) {
    const bool aliased = !ta.template_name.empty() && ta.template_name != ta.name;
    os << "  <template>\n    <name>" << escape(aliased ? ta.template_name : ta.name) << "</name>\n";
    std::string tdecl;
    for (const auto& c : ta.clocks) tdecl += "clock " + c + ";\n";
    for (const auto& v : ta.data_vars) tdecl += type_decl(v) + "\n";
    if (ta.final_exec) tdecl += "// final: " + ta.locations[*ta.final_exec].name + "\n";
    os << "    <declaration>" << escape(tdecl) << "</declaration>\n";
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < ta.locations.size(); ++i) {
      const auto& l = ta.locations[i];
      const int x = static_cast<int>(i % 4) * 200;
      const int y = static_cast<int>(i / 4) * 150;
      ids.push_back("id" + std::to_string(next_id++));
      os << "    <location id=\"" << ids.back() << "\" x=\"" << x << "\" y=\"" << y << "\">\n"
         << "      <name x=\"" << x - 20 << "\" y=\"" << y - 30 << "\">" << escape(l.name) << "</name>\n";
      if (!l.invariant.empty()) label(os, "invariant", to_string(l.invariant, Syntax::Uppaal), x - 20, y + 15);
      if (l.kind == LocationKind::Committed) os << "      <committed/>\n";
      if (l.kind == LocationKind::Urgent) os << "      <urgent/>\n";
      os << "    </location>\n";
    }
    if (!ta.locations.empty()) os << "    <init ref=\"" << ids[ta.initial] << "\"/>\n";
    for (const auto& e : ta.edges) {
      const int x = static_cast<int>((e.source % 4 + e.target % 4) * 100);
      const int y = static_cast<int>((e.source / 4 + e.target / 4) * 75);
      os << "    <transition>\n"
         << "      <source ref=\"" << ids[e.source] << "\"/>\n"
         << "      <target ref=\"" << ids[e.target] << "\"/>\n";
      label(os, "guard", guard_text(e), x, y - 30);
      if (e.action) label(os, "synchronisation", e.action->channel + (e.action->emit ? "!" : "?"), x, y - 15);
      label(os, "assignment", assignment_text(e), x, y);
      label(os, "comments", to_string(e.role), x, y + 15);
      os << "    </transition>\n";
    }
    os << "  </template>\n";
  }
  std::string sys;
  std::vector<std::string> names;
  for (const auto& ta : net.automata) {
    if (!ta.template_name.empty() && ta.template_name != ta.name)
      sys += ta.name + " = " + ta.template_name + "();\n";
    names.push_back(ta.name);
  }
  if (!names.empty()) {
    sys += "system ";
    for (std::size_t i = 0; i < names.size(); ++i) sys += (i ? ", " : "") + names[i];
    sys += ";\n";
  }
  os << "  <system>" << escape(sys) << "</system>\n</nta>\n";
  out.xml = os.str();
  return out;
}

std::string export_queries(const std::vector<Query>& queries) {
  std::string out;
  for (const auto& q : queries) {
    switch (q.kind) {
      case QueryKind::DeadlockFree: out += "A[] not deadlock\n"; break;
      case QueryKind::Invariant: out += "A[] " + to_string(q.first) + "\n"; break;
      case QueryKind::Reach: out += "E<> " + to_string(q.first) + "\n"; break;
      case QueryKind::LeadsTo: {
        auto side = [](const ExprPtr& e) {
          std::string s = to_string(e);
          return is_boolean_connective(e->op) ? "(" + s + ")" : s;
        };
        out += side(q.first) + " --> " + side(q.second) + "\n";
        break;
      }
      case QueryKind::BoundedResponse:
        out += "// " + to_string(q) + " (observer Obs, T = " +
               (q.bound ? std::to_string(*q.bound) : std::string("inf")) + ")\n";
        out += q.bound ? "A[] !Obs.error\n" : "Obs.Run --> Obs.Init\n";
        break;
    }
  }
  return out;
}

namespace {

namespace pt = boost::property_tree;

struct Decls {
  std::vector<std::string> channels;
  std::map<std::string, std::string> aliases;
  std::vector<VariableDecl> vars;
  std::vector<std::string> clocks;
  std::string final_loc;
};

Decls parse_decls(const std::string& text) {
  static const std::regex chan(R"(broadcast chan (\w+);(?:\s*// alias: (.+))?)");
  static const std::regex ivar(R"(int\[(-?\d+),(-?\d+)\] (\w+) = (-?\d+);)");
  static const std::regex bvar(R"(bool (\w+) = (true|false);)");
  static const std::regex clk(R"(clock (\w+);)");
  static const std::regex fin(R"(// final: (\w+))");
  Decls d;
  std::istringstream in(text);
  std::string line;
  std::smatch m;
  while (std::getline(in, line)) {
    line.erase(0, line.find_first_not_of(" \t\r"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (line.empty()) continue;
    if (std::regex_match(line, m, chan)) {
      d.channels.push_back(m[1]);
      if (m[2].matched) d.aliases[m[1]] = m[2];
    } else if (std::regex_match(line, m, ivar)) {
      VariableDecl v;
      v.name = m[3];
      v.type = DataType::int_range(std::stoi(m[1]), std::stoi(m[2]));
      v.initial = std::stoi(m[4]);
      d.vars.push_back(v);
    } else if (std::regex_match(line, m, bvar)) {
      VariableDecl v;
      v.name = m[1];
      v.type = DataType::boolean();
      v.initial = m[2] == "true";
      d.vars.push_back(v);
    } else if (std::regex_match(line, m, clk)) {
      d.clocks.push_back(m[1]);
    } else if (std::regex_match(line, m, fin)) {
      d.final_loc = m[1];
    } else {
      throw ImportError("unsupported declaration: " + line);
    }
  }
  return d;
}

std::optional<ClockAtom> as_clock_atom(const ExprPtr& e, const std::vector<std::string>& clocks) {
  if (!e || !is_comparison(e->op) || e->op == ExprOp::Ne) return std::nullopt;
  if (e->lhs->op != ExprOp::Ident || e->rhs->op != ExprOp::IntLit) return std::nullopt;
  if (std::find(clocks.begin(), clocks.end(), e->lhs->name) == clocks.end()) return std::nullopt;
  return ClockAtom{e->lhs->name, e->op, e->rhs->value};
}

std::vector<ClockAtom> parse_invariant(const std::string& text, const std::vector<std::string>& clocks) {
  std::vector<ClockAtom> out;
  ExprPtr e = parse_expression(text);
  while (e && e->op == ExprOp::And) {
    auto a = as_clock_atom(e->rhs, clocks);
    if (!a) throw ImportError("invariant is not a clock conjunction: " + text);
    out.push_back(*a);
    e = e->lhs;
  }
  auto a = as_clock_atom(e, clocks);
  if (!a) throw ImportError("invariant is not a clock conjunction: " + text);
  out.push_back(*a);
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

Network import_xml(std::string_view xml) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(xml)};
    pt::read_xml(in, tree, pt::xml_parser::no_comments);
  } catch (const pt::xml_parser_error& e) {
    throw ImportError(std::string("malformed XML: ") + e.what());
  }
  const auto nta = tree.get_child_optional("nta");
  if (!nta) throw ImportError("missing nta root element");

  Network net;
  {
    Decls d = parse_decls(nta->get("declaration", ""));
    if (!d.clocks.empty()) throw ImportError("global clocks are not supported");
    net.channels = std::move(d.channels);
    net.aliases = std::move(d.aliases);
    net.globals = std::move(d.vars);
  }

  std::map<std::string, TimedAutomaton> templates;
  std::vector<std::string> template_order;
  for (const auto& [tag, node] : *nta) {
    if (tag != "template") continue;
    TimedAutomaton ta;
    ta.name = node.get<std::string>("name");
    Decls d = parse_decls(node.get("declaration", ""));
    ta.clocks = d.clocks;
    ta.data_vars = d.vars;
    std::map<std::string, std::size_t> by_id;
    for (const auto& [ltag, loc] : node) {
      if (ltag != "location") continue;
      Location l;
      l.name = loc.get<std::string>("name");
      if (loc.get_child_optional("committed")) l.kind = LocationKind::Committed;
      if (loc.get_child_optional("urgent")) l.kind = LocationKind::Urgent;
      for (const auto& [child_tag, child] : loc)
        if (child_tag == "label" && child.get<std::string>("<xmlattr>.kind") == "invariant")
          l.invariant = parse_invariant(child.data(), ta.clocks);
      by_id[loc.get<std::string>("<xmlattr>.id")] = ta.locations.size();
      ta.locations.push_back(std::move(l));
    }
    auto ref = [&](const std::string& id) {
      auto it = by_id.find(id);
      if (it == by_id.end()) throw ImportError("unknown location id " + id + " in " + ta.name);
      return it->second;
    };
    if (auto init = node.get_optional<std::string>("init.<xmlattr>.ref")) ta.initial = ref(*init);
    for (const auto& [ttag, tr] : node) {
      if (ttag != "transition") continue;
      Edge e;
      e.source = ref(tr.get<std::string>("source.<xmlattr>.ref"));
      e.target = ref(tr.get<std::string>("target.<xmlattr>.ref"));
      for (const auto& [child_tag, child] : tr) {
        if (child_tag != "label") continue;
        const std::string kind = child.get<std::string>("<xmlattr>.kind");
        const std::string text = child.data();
        if (kind == "guard") {
          // Clock atoms sit at the right end of the conjunction chain.
          ExprPtr g = parse_expression(text);
          std::vector<ClockAtom> atoms;
          while (g) {
            ExprPtr last = g->op == ExprOp::And ? g->rhs : g;
            auto a = as_clock_atom(last, ta.clocks);
            if (!a) break;
            atoms.push_back(*a);
            g = g->op == ExprOp::And ? g->lhs : nullptr;
          }
          std::reverse(atoms.begin(), atoms.end());
          e.guard = g;
          e.clock_guard = std::move(atoms);
        } else if (kind == "synchronisation") {
          if (text.size() < 2 || (text.back() != '!' && text.back() != '?'))
            throw ImportError("bad synchronisation label: " + text);
          e.action = ChannelAction{text.substr(0, text.size() - 1), text.back() == '!'};
        } else if (kind == "assignment") {
          for (auto& a : parse_assignments(text)) {
            if (std::find(ta.clocks.begin(), ta.clocks.end(), a.target) != ta.clocks.end()) {
              if (a.value->op != ExprOp::IntLit) throw ImportError("clock reset to a non-constant: " + text);
              e.resets.push_back({a.target, a.value->value});
            } else {
              e.updates.push_back(std::move(a));
            }
          }
        } else if (kind == "comments") {
          auto role = parse_edge_role(text);
          if (!role) throw ImportError("unknown edge role: " + text);
          e.role = *role;
        }
      }
      ta.edges.push_back(std::move(e));
    }
    if (!d.final_loc.empty()) {
      auto f = ta.find_location(d.final_loc);
      if (!f) throw ImportError("unknown final location " + d.final_loc);
      ta.final_exec = *f;
    }
    template_order.push_back(ta.name);
    templates.emplace(ta.name, std::move(ta));
  }

  static const std::regex inst(R"((\w+) = (\w+)\(\);)");
  static const std::regex sys(R"(system ([\w, ]+);)");
  std::map<std::string, std::string> instances;
  std::vector<std::string> order;
  std::istringstream in(nta->get("system", ""));
  std::string line;
  std::smatch m;
  while (std::getline(in, line)) {
    line.erase(0, line.find_first_not_of(" \t\r"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (line.empty()) continue;
    if (std::regex_match(line, m, inst)) {
      instances[m[1]] = m[2];
    } else if (std::regex_match(line, m, sys)) {
      std::istringstream names(m[1].str());
      std::string n;
      while (std::getline(names, n, ',')) {
        n.erase(0, n.find_first_not_of(' '));
        n.erase(n.find_last_not_of(' ') + 1);
        order.push_back(n);
      }
    } else {
      throw ImportError("unsupported system line: " + line);
    }
  }
  for (const auto& name : order) {
    const auto it = instances.find(name);
    const std::string& tpl = it == instances.end() ? name : it->second;
    auto t = templates.find(tpl);
    if (t == templates.end()) throw ImportError("system names unknown template " + tpl);
    TimedAutomaton ta = t->second;
    ta.name = name;
    ta.template_name = it == instances.end() ? std::string{} : tpl;
    net.automata.push_back(std::move(ta));
  }
  return net;
}

bool isomorphic(const Network& a, const Network& b) {
  auto normal = [](Network n) {
    for (auto& ta : n.automata) {
      if (ta.template_name == ta.name) ta.template_name.clear();
      for (auto& e : ta.edges)
        if (is_true_literal(e.guard)) e.guard = nullptr;
    }
    return n;
  };
  return normal(a) == normal(b);
}

}  // namespace adlv
