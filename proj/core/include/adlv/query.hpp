// Property queries over a network of timed automata.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "adlv/expr.hpp"

namespace adlv {

enum class QueryKind : std::uint8_t { Invariant, Reach, LeadsTo, BoundedResponse, DeadlockFree };

struct Query {
  QueryKind kind = QueryKind::DeadlockFree;
  ExprPtr first;   // Invariant/Reach: the formula; LeadsTo: p; BoundedResponse: request
  ExprPtr second;  // LeadsTo: q; BoundedResponse: response
  /// BoundedResponse only; absent means no bound (pure leads-to on the events).
  std::optional<std::int64_t> bound;
  std::string label;  // source text of the query line
  int line = 0;

  static Query invariant(ExprPtr e);
  static Query reach(ExprPtr e);
  static Query leads_to(ExprPtr p, ExprPtr q);
  static Query bounded_response(ExprPtr request, ExprPtr response, std::optional<std::int64_t> t);
  static Query deadlock_free();

  friend bool operator==(const Query& a, const Query& b) {
    return a.kind == b.kind && equal(a.first, b.first) && equal(a.second, b.second) &&
           a.bound == b.bound;
  }
};

std::string to_string(QueryKind kind);
/// Surface syntax accepted by parse_queries.
std::string to_string(const Query& q);

}  // namespace adlv
