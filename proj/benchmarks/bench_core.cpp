#include <benchmark/benchmark.h>

#include "omlab/inequalities.hpp"
#include "omlab/monotonicity.hpp"
#include "omlab/sampler.hpp"

using namespace omlab;

namespace {

HermitianMatrix sample_psd(int dim, std::uint64_t seed) {
  InstanceSpec spec;
  spec.kind = InstanceKind::psd;
  spec.dim = dim;
  spec.seed = seed;
  return generate(spec).matrices[0];
}

void bench_eigh(benchmark::State& state) {
  const HermitianMatrix a = sample_psd(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(eigh(a));
}
BENCHMARK(bench_eigh)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void bench_apply_function(benchmark::State& state) {
  const HermitianMatrix a = sample_psd(static_cast<int>(state.range(0)), 2);
  const ScalarFunctionSpec f = lookup("power", {{"p", 0.5}});
  for (auto _ : state) benchmark::DoNotOptimize(apply_function(f, a));
}
BENCHMARK(bench_apply_function)->Arg(4)->Arg(8)->Arg(16);

void bench_symmetrized_product(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const HermitianMatrix a = sample_psd(dim, 3);
  const HermitianMatrix b = sample_psd(dim, 4);
  for (auto _ : state) benchmark::DoNotOptimize(symmetrized_product(a, b));
}
BENCHMARK(bench_symmetrized_product)->Arg(4)->Arg(16)->Arg(64);

void bench_reconstruct(benchmark::State& state) {
  const ScalarFunctionSpec f = lookup("power", {{"p", 0.3}});
  double t = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reconstruct(*f.representation, t));
    t = t < 10.0 ? t + 0.1 : 0.1;
  }
}
BENCHMARK(bench_reconstruct);

void bench_loewner_certificate(benchmark::State& state) {
  const ScalarFunctionSpec f = lookup("power", {{"p", 0.5}});
  std::vector<double> points;
  for (int i = 0; i < state.range(0); ++i) points.push_back(0.5 + i);
  for (auto _ : state) benchmark::DoNotOptimize(loewner_certificate(f, points, 1e-9));
}
BENCHMARK(bench_loewner_certificate)->Arg(4)->Arg(8);

void bench_generate_jordan_positive(benchmark::State& state) {
  InstanceSpec spec;
  spec.kind = InstanceKind::jordan_positive_pair;
  spec.dim = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    spec.seed = seed++;
    benchmark::DoNotOptimize(generate(spec));
  }
}
BENCHMARK(bench_generate_jordan_positive)->Arg(3)->Arg(6);

void bench_forward_verifier(benchmark::State& state) {
  InstanceSpec spec;
  spec.kind = InstanceKind::jordan_positive_pair;
  spec.dim = 4;
  spec.seed = 9;
  const Instance inst = generate(spec);
  const auto fs = monotone_subset();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        verify_subadditivity_forward(inst.matrices[0], inst.matrices[1], fs, 1e-8));
}
BENCHMARK(bench_forward_verifier);

}  // namespace

BENCHMARK_MAIN();
