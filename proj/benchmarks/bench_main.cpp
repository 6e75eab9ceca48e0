#include <benchmark/benchmark.h>

#include <random>

#include "slicepi/integral_ops.hpp"
#include "slicepi/kernels.hpp"

using namespace slicepi;

namespace {

Multivector random_mv(int m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Multivector x(m);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = d(rng);
  return x;
}

void BM_GeometricProduct(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  const Multivector a = random_mv(m, rng), b = random_mv(m, rng);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_GeometricProduct)->DenseRange(1, 6);

void BM_SliceCauchyKernel(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  double ci[6] = {1.0}, cj[6] = {0.0, 1.0};
  const Multivector q = slice_element(0.3, 1.2, Multivector::vector(m, ci));
  const Multivector x = slice_element(-0.1, 1.7, Multivector::vector(m, cj));
  for (auto _ : state) benchmark::DoNotOptimize(slice_cauchy_kernel(q, x));
}
BENCHMARK(BM_SliceCauchyKernel)->DenseRange(2, 4);

DomainPtr rect(int n) { return build_domain(PlanarRegion::rectangle(0.0, 1.0, 1.0, 2.0), 2, {n, 16, 16}); }

void BM_AssemblePi(benchmark::State& state) {
  const DomainPtr d = rect(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble(OpKind::Pi, d));
}
BENCHMARK(BM_AssemblePi)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Apply(benchmark::State& state, OpKind kind) {
  const DomainPtr d = rect(static_cast<int>(state.range(0)));
  const DiscreteOperator op = assemble(kind, d);
  std::mt19937_64 rng(2);
  GridField f(d);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double& x : f.raw()) x = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(op.apply(f));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d->num_nodes()));
}
BENCHMARK_CAPTURE(BM_Apply, T, OpKind::T)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Apply, Pi, OpKind::Pi)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_OperatorNorm(benchmark::State& state) {
  const DiscreteOperator pi = assemble(OpKind::Pi, rect(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(operator_norm(pi));
}
BENCHMARK(BM_OperatorNorm)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
