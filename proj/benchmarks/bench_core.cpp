#include <benchmark/benchmark.h>

#include "linfproj/banach_mazur.hpp"
#include "linfproj/float_oracle.hpp"
#include "linfproj/projection_lp.hpp"
#include "linfproj/zero_sum.hpp"

namespace {

using namespace linfproj;

Subspace kernel_of_sum(std::size_t n) {
  Mat b(n - 1, n);
  for (std::size_t j = 1; j < n; ++j) {
    b(j - 1, 0) = 1;
    b(j - 1, j) = -1;
  }
  return Subspace(n, b);
}

void BM_ExactLpKernelOfSum(benchmark::State& state) {
  const Subspace s = kernel_of_sum(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(projection_constant(s).lambda);
}
BENCHMARK(BM_ExactLpKernelOfSum)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_ExactLpZeroSumNine(benchmark::State& state) {
  const Subspace y1 = sigma_subspace(kernel_of_sum(3), 3).space;
  for (auto _ : state) benchmark::DoNotOptimize(projection_constant(y1).lambda);
}
BENCHMARK(BM_ExactLpZeroSumNine)->Unit(benchmark::kMillisecond);

void BM_FloatOracleKernelOfSum(benchmark::State& state) {
  const Subspace s = kernel_of_sum(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(float_oracle(s).estimate);
}
BENCHMARK(BM_FloatOracleKernelOfSum)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_InfOpNorm(benchmark::State& state) {
  const Mat s = centring_projection(1, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(inf_op_norm(s).value);
}
BENCHMARK(BM_InfOpNorm)->RangeMultiplier(2)->Range(4, 64);

void BM_Symmetrize(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Subspace e(2, Mat{{1, 1}});
  const ZeroSumSpace z = sigma_subspace(e, n);
  // Orthogonal projection onto the zero-sum space.
  const Mat p = oblique_projection(z.space, z.space.basis());
  for (auto _ : state) benchmark::DoNotOptimize(symmetrize(p, 2, n));
}
BENCHMARK(BM_Symmetrize)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_SeqOperatorWindow(benchmark::State& state) {
  const BMModel m = build_model(Rat(4));
  const auto window = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(operator_norm_window(m.w, window).lower);
}
BENCHMARK(BM_SeqOperatorWindow)->RangeMultiplier(4)->Range(256, 4096)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
