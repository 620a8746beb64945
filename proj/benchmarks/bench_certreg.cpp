#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "certreg/data.hpp"
#include "certreg/pathalg.hpp"
#include "certreg/solver.hpp"
#include "certreg/staircase.hpp"

using namespace certreg;

namespace {

const std::vector<Fold>& ionosphere_folds() {
  static const std::vector<Fold> folds = [] {
    SplitSpec spec;
    spec.seed = 1;
    return standardize_folds(split(load_libsvm(CERTREG_BENCH_DATA), spec));
  }();
  return folds;
}

std::vector<StaircaseBound> random_staircases(std::size_t parts, std::size_t intervals, std::size_t total) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<StaircaseBound> out;
  for (std::size_t p = 0; p < parts; ++p) {
    std::vector<StaircaseBound::Interval> iv;
    for (std::size_t i = 0; i < intervals; ++i) {
      double a = std::pow(10.0, u(rng)), b = std::pow(10.0, u(rng));
      if (a > b) std::swap(a, b);
      iv.push_back({a, b, i % 2 == 0, i % 3 == 0});
    }
    out.push_back(StaircaseBound::from_intervals(iv, total, StaircaseBound::Direction::lower));
  }
  return out;
}

void BM_StaircaseFromIntervals(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(random_staircases(1, n, n));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StaircaseFromIntervals)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_StaircaseMax(benchmark::State& state) {
  const auto parts = random_staircases(static_cast<std::size_t>(state.range(0)), 200, 200);
  for (auto _ : state) benchmark::DoNotOptimize(StaircaseBound::pointwise_max(parts));
}
BENCHMARK(BM_StaircaseMax)->RangeMultiplier(4)->Range(4, 256);

void BM_StaircaseSum(benchmark::State& state) {
  const auto parts = random_staircases(static_cast<std::size_t>(state.range(0)), 200, 200);
  for (auto _ : state) benchmark::DoNotOptimize(StaircaseBound::sum(parts));
}
BENCHMARK(BM_StaircaseSum)->RangeMultiplier(4)->Range(4, 64);

void BM_SolveApproximate(benchmark::State& state) {
  const auto& f = ionosphere_folds().front();
  const double c = std::pow(10.0, static_cast<double>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        solve(f.train, f.validation, LossKind::huber(), c, SolverConfig{}, SolveMode::approximate(0.05)));
}
BENCHMARK(BM_SolveApproximate)->DenseRange(-2, 2)->Unit(benchmark::kMillisecond);

void BM_SolveExact(benchmark::State& state) {
  const auto& f = ionosphere_folds().front();
  const double c = std::pow(10.0, static_cast<double>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(solve(f.train, f.validation, LossKind::huber(), c, SolverConfig{}, SolveMode::exact()));
}
BENCHMARK(BM_SolveExact)->DenseRange(-2, 2)->Unit(benchmark::kMillisecond);

void BM_Find(benchmark::State& state) {
  SearchConfig cfg;
  cfg.epsilon = static_cast<double>(state.range(0)) / 100.0;
  const Problem p(ionosphere_folds(), cfg);
  for (auto _ : state) benchmark::DoNotOptimize(find_approx_parameter(p));
}
BENCHMARK(BM_Find)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_FindTricked(benchmark::State& state) {
  SearchConfig cfg;
  cfg.epsilon = static_cast<double>(state.range(0)) / 100.0;
  const Problem p(ionosphere_folds(), cfg);
  for (auto _ : state) benchmark::DoNotOptimize(find_approx_parameter_tricked(p));
}
BENCHMARK(BM_FindTricked)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_CrossValidation(benchmark::State& state) {
  SearchConfig cfg;
  cfg.epsilon = 0.1;
  CvOptions opt;
  opt.k = 5;
  const auto data = load_libsvm(CERTREG_BENCH_DATA);
  for (auto _ : state) benchmark::DoNotOptimize(cv_certify(data, opt, cfg));
}
BENCHMARK(BM_CrossValidation)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
