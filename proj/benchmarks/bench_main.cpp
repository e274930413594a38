#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "canonsys/atomic.hpp"
#include "canonsys/direct.hpp"
#include "canonsys/periodic.hpp"
#include "canonsys/toeplitz.hpp"

using namespace canonsys;

namespace {

MomentSequence random_moments(std::size_t K) {
  std::mt19937 rng(7);
  std::normal_distribution<double> nd;
  std::vector<cplx> p(6);
  for (auto& c : p) c = cplx(nd(rng), nd(rng));
  std::vector<TrigCoefficient> density;
  for (std::size_t k = 0; k < p.size(); ++k) {
    cplx c{0.0, 0.0};
    for (std::size_t l = 0; l + k < p.size(); ++l) c += p[l + k] * std::conj(p[l]);
    if (k == 0) c += 0.5;
    density.push_back({static_cast<int>(k), c});
  }
  return periodic_moments(SpectralMeasure::periodic(density), K);
}

PiecewiseHamiltonian periodic_chain(std::size_t steps) {
  PeriodicSolveOptions opts;
  opts.steps = steps;
  return hamiltonian_from_periodic(SpectralMeasure::periodic({{0, 1.0}, {1, 0.5}}), opts);
}

}  // namespace

static void BM_InverseSums(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = random_moments(n);
  ToeplitzOptions opts;
  opts.path = state.range(1) == 0 ? SolvePath::Levinson : SolvePath::Dense;
  for (auto _ : state) benchmark::DoNotOptimize(inverse_sums(g, n, opts));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_InverseSums)->ArgsProduct({{16, 64, 256}, {0, 1}})->ArgNames({"n", "dense"});

static void BM_HgSequences(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const auto g = random_moments(N + 1);
  for (auto _ : state) benchmark::DoNotOptimize(hg_sequences(g, N));
}
BENCHMARK(BM_HgSequences)->Arg(16)->Arg(64)->Arg(256);

static void BM_Matrizant(benchmark::State& state) {
  const auto H = periodic_chain(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(matrizant(H, H.end(), cplx(1.3, 0.2), true));
}
BENCHMARK(BM_Matrizant)->Arg(8)->Arg(40)->Arg(200);

static void BM_RepresentingMeasure(benchmark::State& state) {
  const auto H = periodic_chain(40);
  const double half = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(representing_measure(H, H.end(), -half, half));
}
BENCHMARK(BM_RepresentingMeasure)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_HAtomic(benchmark::State& state) {
  std::vector<LineAtom> atoms;
  for (int k = 0; k < state.range(0); ++k) atoms.push_back({-2.0 + 0.5 * k, 1.0 + 0.1 * k});
  for (auto _ : state) benchmark::DoNotOptimize(h_atomic(1.0, atoms, 3.7));
}
BENCHMARK(BM_HAtomic)->Arg(1)->Arg(4)->Arg(16);
BENCHMARK_MAIN();
