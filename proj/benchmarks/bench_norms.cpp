#include <benchmark/benchmark.h>

#include <crossmetric/crossmetric.hpp>

using namespace crossmetric;

namespace {

std::shared_ptr<const CrossedProduct> swap_context() {
  auto g = GroupModel::free_abelian(2);
  RealMatrix d(2, 2);
  d << 0, 1, 1, 0;
  FiniteSpectralTriple t = FiniteSpectralTriple::lip_triple(d);
  GroupAction a = GroupAction::permutation(g, t, {{1, 0}, {1, 0}});
  return CrossedProduct::create(g, std::move(t), std::move(a));
}

void BM_SpectralNorm(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  Rng rng(1);
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = complex_uniform(rng);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_norm(m));
}
BENCHMARK(BM_SpectralNorm)->Arg(32)->Arg(128)->Arg(512);

void BM_TruncatedCommutator(benchmark::State& state) {
  auto ctx = swap_context();
  const CrossedGeometry geo(ctx, MatrixLengthFunction::torus_z2(ctx->group_ptr()));
  Rng rng(2);
  const CrossedElement z = random_element(ctx, 2, 5, rng);
  const auto radius = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_norm(geo.d_l(z, radius)));
}
BENCHMARK(BM_TruncatedCommutator)->DenseRange(2, 8, 2);

void BM_TensorCommutator(benchmark::State& state) {
  auto ctx = swap_context();
  const CrossedGeometry geo(ctx, MatrixLengthFunction::torus_z2(ctx->group_ptr()));
  Rng rng(3);
  const CrossedElement z = random_element(ctx, 1, 3, rng);
  const auto radius = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectral_norm(geo.tensor_commutator(z, {0, 1}, radius)));
  }
}
BENCHMARK(BM_TensorCommutator)->DenseRange(2, 6, 2);

void BM_FolnerTable(benchmark::State& state) {
  const auto l = MatrixLengthFunction::word(GroupModel::heisenberg3());
  for (auto _ : state) benchmark::DoNotOptimize(folner_convergence(l, 2, 2, 8));
}
BENCHMARK(BM_FolnerTable);

void BM_MKLower(benchmark::State& state) {
  const auto l = MatrixLengthFunction::word(GroupModel::free_abelian(1));
  const FiniteSystem sys = scalar_sector(l, 2, 3, {2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(mk_lower(sys, "folner2", "counit", {2000, 2, 1}).lower);
  }
}
BENCHMARK(BM_MKLower);

}  // namespace

BENCHMARK_MAIN();
