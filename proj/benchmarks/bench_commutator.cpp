#include <benchmark/benchmark.h>

#include "causal/closed_form.hpp"
#include "causal/commutator.hpp"
#include "causal/estimator.hpp"
#include "causal/parallel.hpp"

using namespace causal;

namespace {

void BM_ClosedForm1d(benchmark::State& state) {
  const auto kind = state.range(0) ? AxisKind::Neumann : AxisKind::Periodic;
  double t = 0.0;
  for (auto _ : state) {
    t += 1e-3;
    benchmark::DoNotOptimize(osc_commutator_closed_1d(kind, 10.0, {t, {3.0}}, {0.0, {1.0}}, 1e-5));
  }
}
BENCHMARK(BM_ClosedForm1d)->Arg(0)->Arg(1);

// One evaluation of a precomputed mode table; range(0) is the per-axis cutoff.
void BM_ModeSumTorus2d(benchmark::State& state) {
  set_thread_count(1);
  CommutatorOptions o;
  o.cutoff = {static_cast<int>(state.range(0))};
  const CommutatorEngine eng(BoundaryConfig::uniform(AxisKind::Periodic, 10.0, 2), o);
  for (auto _ : state) benchmark::DoNotOptimize(eng({2.0, {5.0, 2.0}}, {0.0, {0.0, 0.0}}));
  state.SetItemsProcessed(state.iterations() * (2 * state.range(0) + 1) * (2 * state.range(0) + 1));
}
BENCHMARK(BM_ModeSumTorus2d)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMicrosecond);

void BM_ModeSumTorus3d(benchmark::State& state) {
  set_thread_count(1);
  CommutatorOptions o;
  o.cutoff = {30};
  const CommutatorEngine eng(BoundaryConfig::uniform(AxisKind::Periodic, 1.0, 3), o);
  for (auto _ : state) benchmark::DoNotOptimize(eng({0.8, {0.5, 0.0, 0.0}}, {0.0, {0.0, 0.0, 0.0}}));
}
BENCHMARK(BM_ModeSumTorus3d)->Unit(benchmark::kMillisecond);

void BM_EinsteinCylinder(benchmark::State& state) {
  CommutatorOptions o;
  o.cutoff = {50};
  o.open_cutoff = 50.0;
  o.pv_epsilon = 1e-3;
  const CommutatorEngine eng(BoundaryConfig{{AxisSpec::periodic(10.0), AxisSpec::open()}}, o);
  for (auto _ : state) benchmark::DoNotOptimize(eng({2.0, {5.0, 0.0}}, {0.0, {0.0, 0.0}}));
}
BENCHMARK(BM_EinsteinCylinder)->Unit(benchmark::kMillisecond);

void BM_EstimatorTopHat1d(benchmark::State& state) {
  const Estimator est(BoundaryConfig{{AxisSpec::periodic(10.0)}}, {});
  DetectorSpec A, B;
  A.center = {0.0};
  A.sigma = 0.5;
  A.t_on = 0.0;
  A.t_off = 0.5;
  B.center = {3.0};
  B.sigma = 0.5;
  B.t_on = 1.5;
  B.t_off = 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(est(A, B));
}
BENCHMARK(BM_EstimatorTopHat1d)->Unit(benchmark::kMicrosecond);

}  // namespace
