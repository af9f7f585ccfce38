#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "adlv/checker.hpp"
#include "adlv/parser.hpp"
#include "adlv/transform.hpp"
#include "adlv/uppaal.hpp"

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(ADLV_BENCH_DATA_DIR) + "/" + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const adlv::FaaModel& model() {
  static const adlv::FaaModel m = adlv::parse_model(slurp("ssu.adl"));
  return m;
}

const std::vector<adlv::Query>& queries() {
  static const auto q = adlv::parse_queries(slurp("ssu.q"));
  return q;
}

void BM_ParseAndTransform(benchmark::State& state) {
  const std::string text = slurp("ssu.adl");
  for (auto _ : state) benchmark::DoNotOptimize(adlv::transform_faa(adlv::parse_model(text)));
}
BENCHMARK(BM_ParseAndTransform);

void BM_Export(benchmark::State& state) {
  const adlv::Network net = adlv::transform_faa(model());
  for (auto _ : state) benchmark::DoNotOptimize(adlv::export_xml(net));
}
BENCHMARK(BM_Export);

// One benchmark per fixture query; the argument indexes ssu.q.
void BM_SsuQuery(benchmark::State& state) {
  const adlv::Checker checker(adlv::transform_faa(model()));
  const auto& q = queries().at(static_cast<std::size_t>(state.range(0)));
  adlv::CheckOptions opts;
  opts.subsumption = state.range(1) != 0;
  std::size_t stored = 0;
  for (auto _ : state) stored = checker.check(q, opts).stats.states_stored;
  state.counters["stored"] = static_cast<double>(stored);
  state.SetLabel(q.label);
}
BENCHMARK(BM_SsuQuery)
    ->ArgsProduct({{0, 1, 2, 3, 4, 5}, {1, 0}})
    ->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
