// Microbenchmarks for the value solvers on the named instances. The hat-game
// NS polytope is the largest program the toolkit solves end to end and runs
// through the interior-point path; everything else exercises enumeration,
// the simplex, and the see-saw.

#include <benchmark/benchmark.h>

#include "bellgap/functional.hpp"
#include "bellgap/games.hpp"
#include "bellgap/quantum.hpp"
#include "bellgap/solvers.hpp"

using namespace bellgap;

namespace {

void BM_local_chsh(benchmark::State& state) {
  const BellFunctional g = games::chsh_game();
  for (auto _ : state) {
    benchmark::DoNotOptimize(solvers::local_value(g).value);
  }
}
BENCHMARK(BM_local_chsh);

void BM_local_chsh_tensor(benchmark::State& state) {
  const BellFunctional t =
      games::tensor_product(games::chsh_game(), games::chsh_game());
  for (auto _ : state) {
    benchmark::DoNotOptimize(solvers::local_value(t).value);
  }
}
BENCHMARK(BM_local_chsh_tensor)->Unit(benchmark::kMillisecond);

void BM_ns_chsh(benchmark::State& state) {
  const BellFunctional g = games::chsh_game();
  for (auto _ : state) {
    benchmark::DoNotOptimize(solvers::ns_value(g).value);
  }
}
BENCHMARK(BM_ns_chsh);

void BM_ns_kv2(benchmark::State& state) {
  const BellFunctional g = games::khot_vishnoi({2, 0.2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(solvers::ns_value(g).value);
  }
}
BENCHMARK(BM_ns_kv2)->Unit(benchmark::kMillisecond);

void BM_ns_hat_interior_point(benchmark::State& state) {
  const BellFunctional hat = games::hat_construction(games::chsh_game());
  for (auto _ : state) {
    benchmark::DoNotOptimize(solvers::ns_value(hat).value);
  }
}
BENCHMARK(BM_ns_hat_interior_point)->Unit(benchmark::kSecond)->Iterations(1);

void BM_bilocal_general_hat(benchmark::State& state) {
  const BellFunctional hat = games::hat_construction(games::chsh_game());
  for (auto _ : state) {
    benchmark::DoNotOptimize(solvers::bilocal_value_general(hat).value);
  }
}
BENCHMARK(BM_bilocal_general_hat)->Unit(benchmark::kMillisecond);

void BM_bilocal_ns_hat(benchmark::State& state) {
  const BellFunctional hat = games::hat_construction(games::chsh_game());
  for (auto _ : state) {
    benchmark::DoNotOptimize(solvers::bilocal_value_ns(hat).value);
  }
}
BENCHMARK(BM_bilocal_ns_hat)->Unit(benchmark::kMillisecond);

void BM_bilocal_cor_hadamard(benchmark::State& state) {
  const BellFunctional m = games::hadamard_correlation_functional(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solvers::bilocal_correlation_value(m).value);
  }
}
BENCHMARK(BM_bilocal_cor_hadamard);

void BM_seesaw_chsh(benchmark::State& state) {
  const BellFunctional m = games::chsh_correlation_functional();
  quantum::SeesawOptions opt;
  opt.seeds = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(quantum::correlation_seesaw(m, opt).value);
  }
}
BENCHMARK(BM_seesaw_chsh)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
