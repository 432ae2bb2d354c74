// Serial reference kernels against their OpenMP versions, plus the full
// ranking pass they feed.
//
//   kernel_bench [--benchmark_filter=...]

#include <random>

#include <benchmark/benchmark.h>

#include "kneeopt/dominance.hpp"
#include "kneeopt/kernels.hpp"

using namespace kneeopt;
using namespace kneeopt::kernels;

namespace {

constexpr std::size_t kObjectives = 7;

RowMatrix random_rows(std::size_t n, std::size_t m) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RowMatrix r(n, m);
  for (auto& v : r.data) v = u(rng);
  return r;
}

Bounds unit(std::size_t m) { return Bounds{std::vector<double>(m, 1.0), std::vector<double>(m, 0.0)}; }

DominanceInput random_input(std::size_t n) {
  DominanceInput in;
  in.cone_rows = cone_transform_serial(random_rows(n, kObjectives), unit(kObjectives), 0.2);
  in.constraints_total = 4;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint32_t> sat(3, 4);
  for (std::size_t i = 0; i < n; ++i) in.satisfied.push_back(sat(rng));
  return in;
}

template <auto Kernel>
void bm_transform(benchmark::State& state) {
  const auto rows = random_rows(static_cast<std::size_t>(state.range(0)), kObjectives);
  const auto b = unit(kObjectives);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(rows, b, 0.2));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void bm_matrix(benchmark::State& state) {
  const auto in = random_input(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(in));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

template <auto Kernel>
void bm_counts(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto matrix = dominance_matrix_serial(random_input(n));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(matrix, n));
}

void bm_rank_population(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto rows = random_rows(n, kObjectives);
  Population s;
  for (std::size_t i = 0; i < n; ++i) {
    Fitness f;
    f.objectives.assign(rows.row(i).begin(), rows.row(i).end());
    s.push_back(Individual{{}, f});
  }
  const auto cone = ConeParams::from_degrees(120.0);
  const auto b = unit(kObjectives);
  for (auto _ : state) {
    auto copy = s;
    benchmark::DoNotOptimize(assign_front_ranks(copy, cone, b));
  }
}

}  // namespace

BENCHMARK(bm_transform<cone_transform_serial>)->Name("cone_transform/serial")->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(bm_transform<cone_transform>)->Name("cone_transform/openmp")->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(bm_matrix<dominance_matrix_serial>)->Name("dominance_matrix/serial")->RangeMultiplier(2)->Range(64, 1024);
BENCHMARK(bm_matrix<dominance_matrix>)->Name("dominance_matrix/openmp")->RangeMultiplier(2)->Range(64, 1024);
BENCHMARK(bm_counts<dominated_counts_serial>)->Name("dominated_counts/serial")->RangeMultiplier(2)->Range(64, 1024);
BENCHMARK(bm_counts<dominated_counts>)->Name("dominated_counts/openmp")->RangeMultiplier(2)->Range(64, 1024);
BENCHMARK(bm_rank_population)->Name("assign_front_ranks")->Arg(400);

BENCHMARK_MAIN();
