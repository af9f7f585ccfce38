#include "adlv/types.hpp"

#include <algorithm>

namespace adlv {

std::string SourceSpan::to_string() const {
  std::string out = file.empty() ? std::string("<input>") : file;
  out += ':' + std::to_string(line) + ':' + std::to_string(column);
  return out;
}

bool has_errors(const Diagnostics& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::string to_string(Severity s) {
  switch (s) {
    case Severity::Info: return "info";
    case Severity::Warning: return "warning";
    case Severity::Error: return "error";
  }
  return "error";
}

std::string to_string(const Diagnostic& d) {
  return to_string(d.severity) + " [" + d.rule + "] " + d.location + ": " + d.message;
}

std::string to_string(const DataType& t) {
  if (t.is_bool()) return "bool";
  return "int[" + std::to_string(t.lo) + ".." + std::to_string(t.hi) + "]";
}

}  // namespace adlv
