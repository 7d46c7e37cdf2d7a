#include <benchmark/benchmark.h>

#include <vector>

#include "fockangle/closedness.hpp"
#include "fockangle/drury_arveson.hpp"
#include "fockangle/fock.hpp"
#include "fockangle/sampling.hpp"

namespace {

using namespace fockangle;

std::vector<Subspace> lines_in_c3(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Subspace> v;
  for (int i = 0; i < 3; ++i) v.push_back(random_subspace(3, 1, rng));
  return v;
}

void BM_FriedrichsCos(benchmark::State& state) {
  const Index d = state.range(0);
  Rng rng(1);
  const Subspace m = random_subspace(d, d / 2, rng);
  const Subspace n = random_subspace(d, d / 2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(friedrichs_cos(m, n).cosine);
}
BENCHMARK(BM_FriedrichsCos)->Arg(8)->Arg(64)->Arg(512);

void BM_FriedrichsCosProjection(benchmark::State& state) {
  const Index d = state.range(0);
  Rng rng(1);
  const Subspace m = random_subspace(d, d / 2, rng);
  const Subspace n = random_subspace(d, d / 2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(friedrichs_cos_projection(m, n).cosine);
}
BENCHMARK(BM_FriedrichsCosProjection)->Arg(8)->Arg(64)->Arg(512);

void tensor_sum(benchmark::State& state, TensorPath path) {
  Rng rng(3);
  const std::vector<Subspace> planes{random_subspace(3, 2, rng), random_subspace(3, 2, rng), random_subspace(3, 2, rng)};
  const std::size_t left[] = {0, 1};
  FockOptions opts;
  opts.path = path;
  opts.gram_budget = 1 << 14;
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tensor_sum_angle(planes, left, 2, n, opts).angle.cosine);
}

void BM_TensorSumKronecker(benchmark::State& state) { tensor_sum(state, TensorPath::kronecker_gram); }
BENCHMARK(BM_TensorSumKronecker)->DenseRange(2, 8, 2);

void BM_TensorSumIsotypic(benchmark::State& state) { tensor_sum(state, TensorPath::isotypic); }
BENCHMARK(BM_TensorSumIsotypic)->DenseRange(2, 12, 2);

void BM_IdealComponent(benchmark::State& state) {
  std::vector<HomogeneousPoly> gens{parse_polynomial("y^2 + x*z", 3)};
  const HomogeneousIdeal ideal(3, gens);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ideal_component(ideal, n).dim());
}
BENCHMARK(BM_IdealComponent)->DenseRange(4, 16, 4);

void BM_FockSumDossier(benchmark::State& state) {
  const auto v = lines_in_c3(7);
  DossierOptions opts;
  opts.max_degree = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fock_sum_dossier(v, opts).verdict);
}
BENCHMARK(BM_FockSumDossier)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
