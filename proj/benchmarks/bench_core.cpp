#include <benchmark/benchmark.h>

#include "smoothed/analysis.hpp"
#include "smoothed/bundle_law.hpp"
#include "smoothed/constructions.hpp"
#include "smoothed/mechanisms.hpp"

using namespace smoothed;

static void BM_UniformSumTail(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  Vector w(k);
  for (std::size_t i = 0; i < k; ++i) w[i] = 0.1 + 0.05 * static_cast<double>(i);
  const UniformSum s(1.0, w);
  double x = s.lo();
  const double step = (s.hi() - s.lo()) / 997.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(s.tail(x));
    x += step;
    if (x > s.hi()) x = s.lo();
  }
}
BENCHMARK(BM_UniformSumTail)->Arg(2)->Arg(4)->Arg(8);

static void BM_BrevSmoothed(benchmark::State& state) {
  Rng rng(1);
  const DiscreteDistribution base = random_base(static_cast<std::size_t>(state.range(0)), 2, rng);
  const SmoothedDistribution s{base, PerturbationModel(ModelKind::kSquareShift, 0.2)};
  for (auto _ : state) benchmark::DoNotOptimize(brev_smoothed(s).revenue);
}
BENCHMARK(BM_BrevSmoothed)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_MenuLp(benchmark::State& state) {
  Rng rng(2);
  const SmoothedDistribution s{random_base(10, 2, rng), PerturbationModel(ModelKind::kSquareShift, 0.2)};
  const DiscreteDistribution d = discretize(s, static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(optimal_menu_lp(d).report.revenue);
}
BENCHMARK(BM_MenuLp)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_GapSequence(benchmark::State& state) {
  const PointSequence seq = shell_points(0.1, static_cast<std::size_t>(state.range(0)));
  const PerturbationModel model(ModelKind::kRectangleShift, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(gap_sequence(seq, model).gaps.back());
  state.counters["points"] = static_cast<double>(seq.size());
}
BENCHMARK(BM_GapSequence)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_MenuIcVerify(benchmark::State& state) {
  const PerturbationModel model(ModelKind::kRectangleShift, 0.1);
  const PointSequence seq = shell_points(0.1, static_cast<std::size_t>(state.range(0)));
  const GapSequence gaps = gap_sequence(seq, model);
  const Menu menu = tailored_menu(seq, gaps, seq.size());
  for (auto _ : state) benchmark::DoNotOptimize(menu_ic_verify(menu, seq, gaps, model, seq.size()).pass);
}
BENCHMARK(BM_MenuIcVerify)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_DsicLp(benchmark::State& state) {
  Rng rng(3);
  const JointDiscreteDistribution j = random_joint(2, static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(dsic_optimal_lp(j).report.revenue);
}
BENCHMARK(BM_DsicLp)->Arg(3)->Arg(6)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
