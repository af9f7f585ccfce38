// Shared vocabulary: source positions, bounded data types, variable
// declarations and diagnostics.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace adlv {

struct SourceSpan {
  std::string file;
  int line = 1;
  int column = 1;

  std::string to_string() const;
};

/// Bounded integer or boolean. Booleans are the range 0..1.
struct DataType {
  enum class Kind : std::uint8_t { Bool, IntRange };

  Kind kind = Kind::IntRange;
  std::int32_t lo = 0;
  std::int32_t hi = 255;

  static DataType boolean() { return {Kind::Bool, 0, 1}; }
  static DataType int_range(std::int32_t lo, std::int32_t hi) { return {Kind::IntRange, lo, hi}; }

  bool is_bool() const { return kind == Kind::Bool; }
  bool contains(std::int64_t v) const { return v >= lo && v <= hi; }

  friend bool operator==(const DataType&, const DataType&) = default;
};

inline constexpr std::int32_t kDefaultIntLo = 0;
inline constexpr std::int32_t kDefaultIntHi = 255;

struct VariableDecl {
  std::string name;
  DataType type;
  std::int32_t initial = 0;
  SourceSpan span;

  friend bool operator==(const VariableDecl& a, const VariableDecl& b) {
    return a.name == b.name && a.type == b.type && a.initial == b.initial;
  }
};

enum class Severity : std::uint8_t { Info, Warning, Error };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string rule;      // stable rule identifier, e.g. CONNECTOR-DIRECTION
  std::string location;  // function/port/connector/automaton the rule fired on
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

using Diagnostics = std::vector<Diagnostic>;

bool has_errors(const Diagnostics& diags);
std::string to_string(Severity s);
std::string to_string(const Diagnostic& d);
std::string to_string(const DataType& t);

}  // namespace adlv
