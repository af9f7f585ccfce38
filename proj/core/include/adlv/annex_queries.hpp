// Queries derived from behavioral annexes.
#pragma once

#include <vector>

#include "adlv/model.hpp"
#include "adlv/query.hpp"

namespace adlv {

/// `E<> A.S` for every annex state S, and `A[] cond` for every annex
/// invariant condition, with names qualified by the automaton instance.
/// Pre and post conditions have no state to attach to and are skipped.
std::vector<Query> annex_queries(const FaaModel& model);

}  // namespace adlv
