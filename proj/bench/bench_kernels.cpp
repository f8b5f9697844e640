#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "dcatight/dca_engine.hpp"
#include "dcatight/rates_shift.hpp"
#include "dcatight/regimes.hpp"
#include "dcatight/spca.hpp"

using namespace dcatight;

namespace {

template <bool Parallel>
void BM_contour(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GridAxis mu2{-0.9, 3.0, n}, L2{0.05, 5.0, n};
  for (auto _ : state) {
    auto cells = Parallel ? contour_grid(1.0, 2.0, mu2, L2) : contour_grid_serial(1.0, 2.0, mu2, L2);
    benchmark::DoNotOptimize(cells.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n * n));
}

template <bool Parallel>
void BM_shift_profile(benchmark::State& state) {
  const Splitting s = validate_splitting(2.0, 4.0, -1.75, 3.0);
  const ShiftInterval iv = feasible_shift_interval(s);
  const GridAxis axis{iv.lo, iv.hi, static_cast<std::size_t>(state.range(0))};
  std::vector<double> lambdas;
  for (std::size_t i = 0; i < axis.n; ++i) lambdas.push_back(axis.at(i));
  for (auto _ : state) {
    auto prof = Parallel ? shift_profile(s, lambdas) : shift_profile_serial(s, lambdas);
    benchmark::DoNotOptimize(prof.data());
  }
}

std::vector<Triplet> quadratic_triplets(std::size_t m, int dim) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  std::vector<Triplet> out;
  for (std::size_t i = 0; i < m; ++i) {
    Vector x(dim);
    for (auto& v : x) v = nd(rng);
    out.push_back({x, 1.5 * x, 0.75 * x.squaredNorm()});
  }
  return out;
}

template <bool Parallel>
void BM_interpolation(benchmark::State& state) {
  const auto trips = quadratic_triplets(static_cast<std::size_t>(state.range(0)), 8);
  for (auto _ : state) {
    auto r = Parallel ? interpolation_check(trips, 1.0, 2.0, 1e-9) : interpolation_check_serial(trips, 1.0, 2.0, 1e-9);
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void BM_spca(benchmark::State& state) {
  const SpcaProblem prob = build_problem(static_cast<int>(state.range(0)), 0.2, 0.02, 0.5, 3);
  ExperimentConfig cfg;
  cfg.lambdas = {0.0, 0.5 * prob.mu2};
  cfg.M = 16;
  cfg.max_iter = 500;
  cfg.min_cluster_fraction = 0.0;
  for (auto _ : state) {
    auto t = Parallel ? run_experiment(prob, cfg) : run_experiment_serial(prob, cfg);
    benchmark::DoNotOptimize(t.counts.data());
  }
}

}  // namespace

BENCHMARK(BM_contour<false>)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_contour<true>)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_shift_profile<false>)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_shift_profile<true>)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_interpolation<false>)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_interpolation<true>)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_spca<false>)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_spca<true>)->Arg(40)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
