// Seeded generators for randomized test corpora.
#pragma once

#include <cstdint>

#include "adlv/model.hpp"
#include "adlv/ta.hpp"

namespace adlv {

struct ModelFuzzOptions {
  int max_functions = 4;
  int max_data_ports = 2;  // per direction
  int max_connectors = 6;
  bool annexes = true;
  bool environment = true;
};

/// A model with no error diagnostics; same seed, same model.
FaaModel random_model(std::uint64_t seed, const ModelFuzzOptions& opts = {});

struct NetworkFuzzOptions {
  int automata = 2;
  int max_locations = 3;
  int max_edges = 4;
  std::int64_t max_constant = 5;
  std::int32_t max_range = 3;  // values per variable
  bool special_locations = true;  // urgent/committed
};

/// Closed constraints only (<=, >=, ==), one clock per automaton, broadcast
/// channels, constant updates. Passes validate_ta.
Network random_network(std::uint64_t seed, const NetworkFuzzOptions& opts = {});

}  // namespace adlv
