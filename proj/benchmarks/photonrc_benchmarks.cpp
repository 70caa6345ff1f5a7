#include <benchmark/benchmark.h>

#include "photonrc/detection.hpp"
#include "photonrc/encoding.hpp"
#include "photonrc/network.hpp"
#include "photonrc/permanent.hpp"
#include "photonrc/propagation.hpp"
#include "photonrc/rng.hpp"

namespace {

photonrc::CMatrix random_matrix(Eigen::Index n) {
  photonrc::Rng rng(42);
  photonrc::CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  return m;
}

void BM_PermanentGlynn(benchmark::State& state) {
  const auto m = random_matrix(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(photonrc::permanent(m));
}
BENCHMARK(BM_PermanentGlynn)->DenseRange(2, 12, 2);

void BM_PermanentRyser(benchmark::State& state) {
  const auto m = random_matrix(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(photonrc::permanent_ryser(m));
}
BENCHMARK(BM_PermanentRyser)->DenseRange(2, 12, 2);

void BM_Assemble(benchmark::State& state) {
  const auto net = photonrc::random_reservoir(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(photonrc::assemble(net));
}
BENCHMARK(BM_Assemble)->Arg(3)->Arg(5)->Arg(8);

photonrc::CMatrix encoded_unitary() {
  const auto net = photonrc::random_reservoir(5, 1);
  const auto scheme = photonrc::make_preset("spiral", 5);
  return net.unitary() * photonrc::encoding_layer(0.3, scheme) * net.unitary();
}

void BM_PropagateFock(benchmark::State& state) {
  const auto u = encoded_unitary();
  const photonrc::InputState input(10, {{1.0, photonrc::Occupation{1, 0, 1, 0, 1, 0, 1, 0, 0, 0}}}, false);
  for (auto _ : state) benchmark::DoNotOptimize(photonrc::propagate(input, u));
}
BENCHMARK(BM_PropagateFock);

void BM_LossyDetector(benchmark::State& state) {
  const auto u = encoded_unitary();
  const photonrc::InputState input(10, {{1.0, photonrc::Occupation{1, 0, 1, 0, 1, 0, 1, 0, 0, 0}}}, false);
  const photonrc::LossyDetector detector(input, 0.9, 4);
  for (auto _ : state) benchmark::DoNotOptimize(detector.detect(u));
}
BENCHMARK(BM_LossyDetector);

}  // namespace

BENCHMARK_MAIN();
