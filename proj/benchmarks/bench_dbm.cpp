#include <benchmark/benchmark.h>

#include <random>

#include "adlv/dbm.hpp"

namespace {

adlv::Dbm random_zone(std::mt19937_64& rng, std::size_t clocks) {
  std::uniform_int_distribution<std::int64_t> c(0, 20);
  adlv::Dbm z = adlv::up(adlv::dbm_init(clocks));
  for (std::size_t i = 1; i <= clocks; ++i) {
    z.reset(i, c(rng) % 3);
    z.up();
    z.constrain(i, adlv::ExprOp::Le, 10 + c(rng));
  }
  return z;
}

void BM_Canonicalize(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::int64_t> v(-8, 8);
  adlv::Dbm base(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= n; ++j)
      if (i != j) base.set(i, j, adlv::Bound::le(i == 0 ? std::min<std::int64_t>(0, v(rng)) : 8 + v(rng)));
  for (auto _ : state) {
    adlv::Dbm d = base;
    benchmark::DoNotOptimize(d.canonicalize());
  }
}
BENCHMARK(BM_Canonicalize)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_SuccessorOps(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  const adlv::Dbm z = random_zone(rng, n);
  std::vector<std::int64_t> maxc(n + 1, 12);
  for (auto _ : state) {
    adlv::Dbm d = z;
    d.constrain(1, adlv::ExprOp::Ge, 3);
    d.reset(1, 0);
    d.up();
    d.constrain(1, adlv::ExprOp::Le, 5);
    d.extrapolate(maxc);
    benchmark::DoNotOptimize(d.hash());
  }
}
BENCHMARK(BM_SuccessorOps)->Arg(2)->Arg(7)->Arg(12);

void BM_Inclusion(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  const adlv::Dbm a = random_zone(rng, n), b = random_zone(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(a.includes(b));
}
BENCHMARK(BM_Inclusion)->Arg(2)->Arg(7)->Arg(12);

}  // namespace
