// Expression AST shared by the model DSL, timed-automaton guards and the
// query language. Nodes are immutable and shared.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "adlv/types.hpp"

namespace adlv {

enum class ExprOp : std::uint8_t {
  IntLit,
  BoolLit,
  Ident,
  Not,
  Neg,
  And,
  Or,
  Imply,
  Add,
  Sub,
  Lt,
  Le,
  Eq,
  Ne,
  Ge,
  Gt,
};

bool is_comparison(ExprOp op);
bool is_boolean_connective(ExprOp op);
/// The comparison obtained by swapping operands: c < x  <=>  x > c.
ExprOp mirror(ExprOp cmp);
/// Logical negation of a comparison: not (x <= c)  <=>  x > c.
ExprOp negate(ExprOp cmp);
const char* symbol(ExprOp op);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprOp op = ExprOp::BoolLit;
  std::int64_t value = 0;
  std::string qualifier;  // Ident only: "C3" in C3.cp; empty when unqualified
  std::string name;       // Ident only
  ExprPtr lhs;
  ExprPtr rhs;
  SourceSpan span;

  bool is_ident() const { return op == ExprOp::Ident; }
  std::string qualified_name() const { return qualifier.empty() ? name : qualifier + "." + name; }
};

ExprPtr make_int(std::int64_t v, SourceSpan span = {});
ExprPtr make_bool(bool v, SourceSpan span = {});
ExprPtr make_ident(std::string name, std::string qualifier = {}, SourceSpan span = {});
ExprPtr make_unary(ExprOp op, ExprPtr operand, SourceSpan span = {});
ExprPtr make_binary(ExprOp op, ExprPtr lhs, ExprPtr rhs, SourceSpan span = {});
/// Conjunction of all operands; `true` when empty; null entries are skipped.
ExprPtr make_and(const std::vector<ExprPtr>& operands);
ExprPtr make_or(const std::vector<ExprPtr>& operands);

/// Structural equality, ignoring spans. Null compares equal to null only.
bool equal(const ExprPtr& a, const ExprPtr& b);

/// Every identifier occurring in the expression, in first-occurrence order.
std::vector<const Expr*> identifiers(const ExprPtr& e);

/// Rebuilds the tree, replacing identifiers through `fn`.
ExprPtr rewrite_identifiers(const ExprPtr& e, const std::function<ExprPtr(const Expr&)>& fn);

/// True for null or a literal `true`.
bool is_true_literal(const ExprPtr& e);

enum class Syntax : std::uint8_t {
  Dsl,     // and / or / not / imply, ':=' assignment
  Uppaal,  // && / || / ! / imply, '=' assignment
};

std::string to_string(const ExprPtr& e, Syntax syntax = Syntax::Dsl);

struct Assignment {
  std::string target;
  ExprPtr value;
  SourceSpan span;

  friend bool operator==(const Assignment& a, const Assignment& b) {
    return a.target == b.target && equal(a.value, b.value);
  }
};

std::string to_string(const Assignment& a, Syntax syntax = Syntax::Dsl);

}  // namespace adlv
