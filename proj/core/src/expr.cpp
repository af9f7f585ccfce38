#include "adlv/expr.hpp"

#include <stdexcept>

namespace adlv {

bool is_comparison(ExprOp op) {
  switch (op) {
    case ExprOp::Lt:
    case ExprOp::Le:
    case ExprOp::Eq:
    case ExprOp::Ne:
    case ExprOp::Ge:
    case ExprOp::Gt:
      return true;
    default:
      return false;
  }
}

bool is_boolean_connective(ExprOp op) {
  return op == ExprOp::And || op == ExprOp::Or || op == ExprOp::Imply || op == ExprOp::Not;
}

ExprOp mirror(ExprOp cmp) {
  switch (cmp) {
    case ExprOp::Lt: return ExprOp::Gt;
    case ExprOp::Le: return ExprOp::Ge;
    case ExprOp::Ge: return ExprOp::Le;
    case ExprOp::Gt: return ExprOp::Lt;
    default: return cmp;
  }
}

ExprOp negate(ExprOp cmp) {
  switch (cmp) {
    case ExprOp::Lt: return ExprOp::Ge;
    case ExprOp::Le: return ExprOp::Gt;
    case ExprOp::Eq: return ExprOp::Ne;
    case ExprOp::Ne: return ExprOp::Eq;
    case ExprOp::Ge: return ExprOp::Lt;
    case ExprOp::Gt: return ExprOp::Le;
    default: throw std::logic_error("negate: not a comparison");
  }
}

const char* symbol(ExprOp op) {
  switch (op) {
    case ExprOp::Lt: return "<";
    case ExprOp::Le: return "<=";
    case ExprOp::Eq: return "==";
    case ExprOp::Ne: return "!=";
    case ExprOp::Ge: return ">=";
    case ExprOp::Gt: return ">";
    case ExprOp::Add: return "+";
    case ExprOp::Sub: return "-";
    case ExprOp::Neg: return "-";
    default: return "?";
  }
}

ExprPtr make_int(std::int64_t v, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->op = ExprOp::IntLit;
  e->value = v;
  e->span = std::move(span);
  return e;
}

ExprPtr make_bool(bool v, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->op = ExprOp::BoolLit;
  e->value = v ? 1 : 0;
  e->span = std::move(span);
  return e;
}

ExprPtr make_ident(std::string name, std::string qualifier, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->op = ExprOp::Ident;
  e->name = std::move(name);
  e->qualifier = std::move(qualifier);
  e->span = std::move(span);
  return e;
}

ExprPtr make_unary(ExprOp op, ExprPtr operand, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->lhs = std::move(operand);
  e->span = std::move(span);
  return e;
}

ExprPtr make_binary(ExprOp op, ExprPtr lhs, ExprPtr rhs, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  e->span = std::move(span);
  return e;
}

namespace {

ExprPtr fold(ExprOp op, const std::vector<ExprPtr>& operands, bool unit) {
  ExprPtr acc;
  for (const auto& e : operands) {
    if (!e) continue;
    acc = acc ? make_binary(op, acc, e) : e;
  }
  return acc ? acc : make_bool(unit);
}

}  // namespace

ExprPtr make_and(const std::vector<ExprPtr>& operands) { return fold(ExprOp::And, operands, true); }
ExprPtr make_or(const std::vector<ExprPtr>& operands) { return fold(ExprOp::Or, operands, false); }

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->op != b->op) return false;
  switch (a->op) {
    case ExprOp::IntLit:
    case ExprOp::BoolLit:
      return a->value == b->value;
    case ExprOp::Ident:
      return a->name == b->name && a->qualifier == b->qualifier;
    default:
      return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
  }
}

namespace {

void collect(const ExprPtr& e, std::vector<const Expr*>& out) {
  if (!e) return;
  if (e->op == ExprOp::Ident) {
    out.push_back(e.get());
    return;
  }
  collect(e->lhs, out);
  collect(e->rhs, out);
}

}  // namespace

std::vector<const Expr*> identifiers(const ExprPtr& e) {
  std::vector<const Expr*> out;
  collect(e, out);
  return out;
}

ExprPtr rewrite_identifiers(const ExprPtr& e, const std::function<ExprPtr(const Expr&)>& fn) {
  if (!e) return e;
  switch (e->op) {
    case ExprOp::IntLit:
    case ExprOp::BoolLit:
      return e;
    case ExprOp::Ident:
      return fn(*e);
    case ExprOp::Not:
    case ExprOp::Neg:
      return make_unary(e->op, rewrite_identifiers(e->lhs, fn), e->span);
    default:
      return make_binary(e->op, rewrite_identifiers(e->lhs, fn), rewrite_identifiers(e->rhs, fn),
                         e->span);
  }
}

bool is_true_literal(const ExprPtr& e) {
  return !e || (e->op == ExprOp::BoolLit && e->value != 0);
}

namespace {

// Higher binds tighter.
int precedence(ExprOp op) {
  switch (op) {
    case ExprOp::Imply: return 1;
    case ExprOp::Or: return 2;
    case ExprOp::And: return 3;
    case ExprOp::Not: return 4;
    case ExprOp::Lt:
    case ExprOp::Le:
    case ExprOp::Eq:
    case ExprOp::Ne:
    case ExprOp::Ge:
    case ExprOp::Gt:
      return 5;
    case ExprOp::Add:
    case ExprOp::Sub:
      return 6;
    case ExprOp::Neg: return 7;
    default: return 8;
  }
}

void print(const ExprPtr& e, Syntax syntax, std::string& out);

void print_operand(const ExprPtr& e, int parent_prec, bool right_assoc_slot, Syntax syntax,
                   std::string& out) {
  int p = precedence(e->op);
  bool parens = p < parent_prec || (p == parent_prec && right_assoc_slot);
  // '!' in the C-like syntax binds tighter than comparisons; keep explicit grouping.
  if (syntax == Syntax::Uppaal && parent_prec == precedence(ExprOp::Not) && p <= 5 && p != 8)
    parens = true;
  if (parens) out += '(';
  print(e, syntax, out);
  if (parens) out += ')';
}

void print(const ExprPtr& e, Syntax syntax, std::string& out) {
  if (!e) {
    out += "true";
    return;
  }
  const bool c = syntax == Syntax::Uppaal;
  switch (e->op) {
    case ExprOp::IntLit:
      out += std::to_string(e->value);
      return;
    case ExprOp::BoolLit:
      out += e->value ? "true" : "false";
      return;
    case ExprOp::Ident:
      out += e->qualified_name();
      return;
    case ExprOp::Not:
      out += c ? "!" : "not ";
      print_operand(e->lhs, precedence(ExprOp::Not), false, syntax, out);
      return;
    case ExprOp::Neg:
      out += '-';
      print_operand(e->lhs, precedence(ExprOp::Neg), false, syntax, out);
      return;
    default:
      break;
  }
  const char* sym = nullptr;
  switch (e->op) {
    case ExprOp::And: sym = c ? " && " : " and "; break;
    case ExprOp::Or: sym = c ? " || " : " or "; break;
    case ExprOp::Imply: sym = " imply "; break;
    case ExprOp::Add: sym = " + "; break;
    case ExprOp::Sub: sym = " - "; break;
    default: break;
  }
  std::string cmp;
  if (!sym) {
    cmp = std::string(" ") + symbol(e->op) + " ";
    sym = cmp.c_str();
  }
  const int p = precedence(e->op);
  // Comparisons do not chain; imply is right associative; the rest are left associative.
  const bool right_assoc = e->op == ExprOp::Imply;
  const bool non_assoc = is_comparison(e->op);
  print_operand(e->lhs, non_assoc ? p + 1 : (right_assoc ? p + 1 : p), false, syntax, out);
  out += sym;
  print_operand(e->rhs, non_assoc ? p + 1 : p, !right_assoc, syntax, out);
}

}  // namespace

std::string to_string(const ExprPtr& e, Syntax syntax) {
  std::string out;
  print(e, syntax, out);
  return out;
}

std::string to_string(const Assignment& a, Syntax syntax) {
  return a.target + (syntax == Syntax::Uppaal ? " = " : " := ") + to_string(a.value, syntax);
}

}  // namespace adlv
