#pragma once

#include <string>
#include <vector>

#include "adlv/model.hpp"
#include "adlv/query.hpp"
#include "adlv/ta.hpp"

namespace fixture {

std::string read_file(const std::string& path);
/// Path under the repository's data/ directory.
std::string data_path(const std::string& name);

adlv::FaaModel ssu_model();
adlv::Network ssu_network();
std::vector<adlv::Query> ssu_queries();
std::vector<adlv::Query> ssu_extra_queries();

/// Requester every 10 time units on `req`; responder answers on `resp` after
/// exactly `delay`.
adlv::Network toy_responder(int delay);

}  // namespace fixture
