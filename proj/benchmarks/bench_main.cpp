#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "bracketlab/kappa.hpp"
#include "bracketlab/mwu.hpp"
#include "bracketlab/observations.hpp"
#include "bracketlab/simulate.hpp"
#include "bracketlab/tobit.hpp"

using namespace bracketlab;

namespace {

PopulationSpec population(int per_treatment) {
  PopulationSpec p;
  for (auto t : {Treatment::Broad, Treatment::Narrow, Treatment::Low, Treatment::Partial}) {
    p.count(t) = per_treatment;
  }
  p.alpha = {std::log(0.003), 0.3};
  p.gamma = {2.0, 0.1, 1.8, 2.2};
  p.composition = MixtureComposition{0.7, 0.1};
  p.seed = 99;
  return p;
}

void BM_SimulateDataset(benchmark::State& state) {
  const PopulationSpec p = population(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_dataset(p));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 4);
}
BENCHMARK(BM_SimulateDataset)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_NlsKappa(benchmark::State& state) {
  const auto obs = observations(simulate_dataset(population(static_cast<int>(state.range(0)))));
  for (auto _ : state) benchmark::DoNotOptimize(nls_kappa(obs));
}
BENCHMARK(BM_NlsKappa)->Arg(100)->Arg(500)->Unit(benchmark::kMicrosecond);

void BM_Tobit(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 g(7);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd x(n, 3);
  std::vector<double> y(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    x(i, 0) = 1.0;
    x(i, 1) = normal(g);
    x(i, 2) = normal(g) > 0.0 ? 1.0 : 0.0;
    y[static_cast<std::size_t>(i)] = std::min(4.25, 3.1 + 0.8 * x(i, 1) + 0.5 * x(i, 2) + normal(g));
  }
  for (auto _ : state) benchmark::DoNotOptimize(tobit_right(y, x, 4.25));
}
BENCHMARK(BM_Tobit)->Arg(400)->Arg(4000)->Unit(benchmark::kMicrosecond);

void BM_MwuExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = static_cast<double>(i % 4);
    y[i] = static_cast<double>((i + 1) % 5);
  }
  for (auto _ : state) benchmark::DoNotOptimize(mwu_exact(x, y));
}
BENCHMARK(BM_MwuExact)->Arg(5)->Arg(7)->Unit(benchmark::kMicrosecond);

void BM_MwuNormal(benchmark::State& state) {
  std::mt19937_64 g(3);
  std::uniform_int_distribution<int> v(1, 10);
  std::vector<double> x(500), y(500);
  for (auto& e : x) e = v(g);
  for (auto& e : y) e = v(g);
  for (auto _ : state) benchmark::DoNotOptimize(mwu_test(x, y));
}
BENCHMARK(BM_MwuNormal)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
