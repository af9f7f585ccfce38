// UPPAAL 4.x flat XML and .q query files.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "adlv/query.hpp"
#include "adlv/ta.hpp"
#include "adlv/types.hpp"

namespace adlv {

/// Renaming a reserved identifier would collide with an existing one.
struct ExportError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ImportError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct XmlExport {
  std::string xml;
  Diagnostics warnings;  // EXPORT-RESERVED, one per renamed identifier
};

/// Identifiers reserved by the target tool.
bool is_uppaal_reserved(std::string_view name);

/// `tool_version`, when given, is written as a leading comment.
XmlExport export_xml(const Network& net, std::string_view tool_version = {});

/// One query per line. Bounded response becomes `A[] !Obs.error` (or the
/// observer leads-to when unbounded) preceded by a comment naming the bound.
std::string export_queries(const std::vector<Query>& queries);

/// Reads files written by export_xml back into a Network.
Network import_xml(std::string_view xml);

/// Equality up to template naming and `true` versus absent guards.
bool isomorphic(const Network& a, const Network& b);

}  // namespace adlv
