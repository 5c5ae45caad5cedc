// Kernel benchmarks: the OpenMP sweeps against their serial references.
// Run from the build tree:  ./bench/kgraph_bench

#include <benchmark/benchmark.h>

#include "kgraph/hausdorff.hpp"
#include "kgraph/kms.hpp"
#include "kgraph/report.hpp"

using namespace kgraph;

namespace {

KGraph fixture_graph(bool big) {
  return KGraph::validate(parse_graph_file(std::string(KGRAPH_FIXTURE_DIR) +
                                           (big ? "/three_vertex.kgraph" : "/one_vertex.kgraph")));
}

struct Bench {
  KGraph g;
  WeightFunctor y;
  SpectralData sd;
  Bench(bool big, double theta)
      : g(fixture_graph(big)),
        y(sample_nonnegative(g, solve_constraints(g), 2)),
        sd(pf_data(g, y, theta)) {}
};

void BM_cover_sum_parallel(benchmark::State& state) {
  Bench b(true, 0.4);
  WeightFn w(b.g, b.y, b.sd);
  int M = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cover_sum(w, M, 1.3, true));
}

void BM_cover_sum_serial(benchmark::State& state) {
  Bench b(true, 0.4);
  WeightFn w(b.g, b.y, b.sd);
  int M = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cover_sum_serial(w, M, 1.3));
}

void BM_kms_sweep_parallel(benchmark::State& state) {
  Bench b(false, 1.0);
  std::vector<Character> zs = sample_characters(2, 4, 3);
  int cap = static_cast<int>(state.range(0));
  for (auto _ : state) {
    SweepResult r = kms_sweep(b.g, b.y, b.sd, 1.0, Degree{cap, cap}, zs);
    benchmark::DoNotOptimize(r.max_residual_psi);
  }
}

void BM_kms_sweep_tables_single_thread(benchmark::State& state) {
  Bench b(false, 1.0);
  std::vector<Character> zs = sample_characters(2, 4, 3);
  SweepOptions opt;
  opt.parallel = false;
  int cap = static_cast<int>(state.range(0));
  for (auto _ : state) {
    SweepResult r = kms_sweep(b.g, b.y, b.sd, 1.0, Degree{cap, cap}, zs, opt);
    benchmark::DoNotOptimize(r.max_residual_psi);
  }
}

void BM_kms_sweep_reference(benchmark::State& state) {
  Bench b(false, 1.0);
  std::vector<Character> zs = sample_characters(2, 4, 3);
  int cap = static_cast<int>(state.range(0));
  for (auto _ : state) {
    SweepResult r = kms_sweep_serial(b.g, b.y, b.sd, 1.0, Degree{cap, cap}, zs);
    benchmark::DoNotOptimize(r.max_residual_psi);
  }
}

void BM_theta_profile(benchmark::State& state) {
  Bench b(true, 1.0);
  std::vector<double> grid;
  for (int i = 0; i < static_cast<int>(state.range(0)); ++i)
    grid.push_back(0.5 + 1.5 * i / (static_cast<double>(state.range(0)) - 1));
  for (auto _ : state) {
    auto prof = theta_profile(b.g, b.y, grid, 1e-3);
    benchmark::DoNotOptimize(prof.size());
  }
}

}  // namespace

BENCHMARK(BM_cover_sum_parallel)->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(BM_cover_sum_serial)->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(BM_kms_sweep_parallel)->Arg(1)->Arg(2);
BENCHMARK(BM_kms_sweep_tables_single_thread)->Arg(1)->Arg(2);
BENCHMARK(BM_kms_sweep_reference)->Arg(1);
BENCHMARK(BM_theta_profile)->Arg(50);

BENCHMARK_MAIN();
