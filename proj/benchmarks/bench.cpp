#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "proxtrace/algorithms.hpp"
#include "proxtrace/analysis.hpp"
#include "proxtrace/oracles.hpp"
#include "proxtrace/sets.hpp"

namespace {

using namespace proxtrace;

Eigen::MatrixXd bench_psd(Eigen::Index d) {
  std::mt19937_64 rng(101);
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = n(rng);
  Eigen::MatrixXd q = a.transpose() * a / static_cast<double>(d);
  q += Eigen::MatrixXd::Identity(d, d);
  return q;
}

void bm_prox_grad(benchmark::State& state) {
  const Eigen::Index d = state.range(0);
  const ObjectivePair pair{quadratic(bench_psd(d), Vec::Ones(d), 0.0), l1_norm(0.2)};
  const StepsizeSchedule schedule = StepsizeSchedule::auto_fraction(1.0);
  const StopRule stop{500, 0.0};
  const Vec x0 = Vec::Constant(d, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_prox_grad(pair, x0, schedule, stop, true));
  }
}
BENCHMARK(bm_prox_grad)->Arg(10)->Arg(50);

void bm_check_self_contracted(benchmark::State& state) {
  const Eigen::Index k = state.range(0);
  const ObjectivePair pair{quadratic(bench_psd(8), Vec::Ones(8), 0.0), l1_norm(0.2)};
  const Trajectory t = run_prox_grad(pair, Vec::Constant(8, 2.0),
                                     StepsizeSchedule::auto_fraction(1.0),
                                     StopRule{static_cast<std::size_t>(k), 0.0}, true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_self_contracted(t, 1e-9));
  }
}
BENCHMARK(bm_check_self_contracted)->Arg(250)->Arg(1000);

void bm_averaged_modes(benchmark::State& state) {
  const AveragedMode mode = static_cast<AveragedMode>(state.range(0));
  std::vector<ConvexSet> sets;
  sets.push_back(ball(Vec::Zero(5), 1.0));
  sets.push_back(halfspace(Vec::Ones(5), 0.5));
  sets.push_back(box(Vec::Constant(5, -1.0), Vec::Constant(5, 1.0)));
  const Vec x0 = Vec::Constant(5, 2.0);
  const StopRule stop{200, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_averaged_projections(sets, x0, stop, mode));
  }
}
BENCHMARK(bm_averaged_modes)->Arg(0)->Arg(1)->Arg(2);

}  // namespace

BENCHMARK_MAIN();
