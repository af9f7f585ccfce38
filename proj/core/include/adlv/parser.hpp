// Concrete syntax for architecture models (.adl) and query files (.q).
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "adlv/model.hpp"
#include "adlv/query.hpp"
#include "adlv/types.hpp"

namespace adlv {

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceSpan span, std::string expected, std::string found);

  const SourceSpan& span() const { return span_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  SourceSpan span_;
  std::string expected_;
  std::string found_;
};

/// Parses one `faa NAME { ... }` block. Name resolution is left to validate_model.
FaaModel parse_model(std::string_view text, std::string_view file = {});

/// One query per non-blank, non-comment line.
std::vector<Query> parse_queries(std::string_view text, std::string_view file = {});

/// Parses a single expression (used for --with-observer and by importers).
ExprPtr parse_expression(std::string_view text, std::string_view file = {});

/// Parses a comma separated assignment list `a := e, b = e`.
std::vector<Assignment> parse_assignments(std::string_view text, std::string_view file = {});

/// Pretty-printer; parse_model(print_model(m)) == m up to spans.
std::string print_model(const FaaModel& model);

}  // namespace adlv
