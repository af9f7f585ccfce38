// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.
#include <chrono>
#include <exception>
#include <functional>
#include <iostream>

#include "support/criteria.hpp"

int main() {
  using namespace criteria;
  const std::pair<int, std::function<Outcome()>> all[] = {
      {1, [] { return ssu_suite(); }},
      {2, [] { return dbm_against_reference(kDbmCases); }},
      {3, [] { return checker_against_oracle(kOracleNetworks); }},
      {4, [] { return observer_boundary(); }},
      {5, [] { return transform_shapes(kShapeModels); }},
      {6, [] { return determinism_and_round_trip(kRoundTripModels); }},
      {7, [] { return subsumption_neutral(kOracleNetworks); }},
  };
  int failures = 0;
  for (const auto& [id, run] : all) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << dt.count() << " s): " << o.detail
              << std::endl;
  }
  return failures;
}
