// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <cstdint>

#include "rcilab/asymptotics.hpp"
#include "rcilab/channel.hpp"
#include "rcilab/cubic.hpp"
#include "rcilab/gaussian.hpp"
#include "rcilab/philox.hpp"
#include "rcilab/precoder.hpp"
#include "rcilab/tdd.hpp"

namespace {

using namespace rcilab;

void BM_PhiloxBlock(benchmark::State& state) {
  std::array<std::uint64_t, 4> ctr{0, 0, 0, 0};
  const std::array<std::uint64_t, 2> key{42, 7};
  for (auto _ : state) {
    ++ctr[0];
    benchmark::DoNotOptimize(Philox4x64::block(ctr, key));
  }
  state.SetBytesProcessed(state.iterations() * 32);
}
BENCHMARK(BM_PhiloxBlock);

void BM_ComplexNormal(benchmark::State& state) {
  ComplexNormalStream stream(RngSpec{1, 2}, RngDomain::channel, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(stream.next());
}
BENCHMARK(BM_ComplexNormal);

void BM_SampleCsitPair(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const SystemConfig cfg = SystemConfig::make(M, M, 100.0, 0.01);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_csit_pair(cfg, RngSpec{7, trial++}));
  }
}
BENCHMARK(BM_SampleCsitPair)->Arg(16)->Arg(64);

void BM_BuildRci(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const SystemConfig cfg = SystemConfig::make(M, M, 100.0, 0.01);
  const ChannelPair pair = sample_csit_pair(cfg, RngSpec{7, 0});
  const double xi = optimal_regularizer(cfg.beta, cfg.rho);
  for (auto _ : state) benchmark::DoNotOptimize(build_rci(pair.Hhat, xi));
}
BENCHMARK(BM_BuildRci)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_SecrecySumRate(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const SystemConfig cfg = SystemConfig::make(M, M, 100.0, 0.01);
  const ChannelPair pair = sample_csit_pair(cfg, RngSpec{7, 0});
  const Precoder prec = build_rci(pair.Hhat, optimal_regularizer(cfg.beta, cfg.rho));
  for (auto _ : state)
    benchmark::DoNotOptimize(secrecy_sum_rate(pair.H, prec, cfg.rho));
}
BENCHMARK(BM_SecrecySumRate)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_McTrial(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const SystemConfig cfg = SystemConfig::make(M, M, 100.0, 0.01);
  const double xi = optimal_regularizer(cfg.beta, cfg.rho);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    const ChannelPair pair = sample_csit_pair(cfg, RngSpec{7, trial++});
    const Precoder prec = build_rci(pair.Hhat, xi);
    benchmark::DoNotOptimize(secrecy_sum_rate(pair.H, prec, cfg.rho));
  }
}
BENCHMARK(BM_McTrial)->Arg(8)->Arg(32);

void BM_DeqPoint(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        secrecy_rate_deq_point(1.0, 100.0, 0.01, optimal_regularizer(1.0, 100.0)));
}
BENCHMARK(BM_DeqPoint);

void BM_TrainingCubic(benchmark::State& state) {
  const TddConfig cfg = TddConfig::make(100, 10, 1.0, 1000.0, 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_training_cubic(cfg));
}
BENCHMARK(BM_TrainingCubic);

void BM_TrainingGrid(benchmark::State& state) {
  const TddConfig cfg = TddConfig::make(100, 10, 1.0, 1000.0, 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(optimal_training_grid(cfg));
}
BENCHMARK(BM_TrainingGrid);

}  // namespace

BENCHMARK_MAIN();
