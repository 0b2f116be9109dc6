#include <benchmark/benchmark.h>

#include "subqfi/fidelity.hpp"
#include "subqfi/fisher.hpp"
#include "subqfi/optimize.hpp"
#include "subqfi/rng.hpp"
#include "subqfi/sample.hpp"

using namespace subqfi;

namespace {

struct Instance {
  DensityMatrix rho;
  DensityMatrix sigma;
  HermitianGenerator gen;
};

Instance make_instance(int d) {
  Rng rng(99);
  DensityMatrix rho = sample_density(d, d, rng);
  DensityMatrix sigma = sample_density(d, d, rng);
  HermitianGenerator gen = sample_hermitian(d, rng);
  return {std::move(rho), std::move(sigma), std::move(gen)};
}

void BM_SubqfiClosed(benchmark::State& state) {
  const Instance inst = make_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(subqfi_closed(inst.rho, inst.gen));
}
BENCHMARK(BM_SubqfiClosed)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_SubqfiSpectral(benchmark::State& state) {
  const Instance inst = make_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(subqfi_spectral(inst.rho, inst.gen));
}
BENCHMARK(BM_SubqfiSpectral)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_QfiSpectral(benchmark::State& state) {
  const Instance inst = make_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qfi_spectral(inst.rho, inst.gen).value);
}
BENCHMARK(BM_QfiSpectral)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_UhlmannFidelity(benchmark::State& state) {
  const Instance inst = make_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(uhlmann_fidelity(inst.rho, inst.sigma));
}
BENCHMARK(BM_UhlmannFidelity)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_SubqfiFdRichardson(benchmark::State& state) {
  const Instance inst = make_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(subqfi_fd(inst.rho, inst.gen, 1e-3, true));
}
BENCHMARK(BM_SubqfiFdRichardson)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_HaarUnitary(benchmark::State& state) {
  Rng rng(7);
  for (auto _ : state) benchmark::DoNotOptimize(sample_unitary(static_cast<int>(state.range(0)), rng));
}
BENCHMARK(BM_HaarUnitary)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_ObjectiveGradient(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const Instance inst = make_instance(d);
  Rng rng(13);
  AnsatzParams p = AnsatzParams::zero(d);
  for (Eigen::Index k = 0; k < p.values.size(); ++k) p.values(k) = rng.normal();
  for (auto _ : state) benchmark::DoNotOptimize(objective_gradient(inst.rho, inst.gen, p));
}
BENCHMARK(BM_ObjectiveGradient)->Arg(2)->Arg(4)->Arg(8);

void BM_PurityLoss(benchmark::State& state) {
  const Instance inst = make_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(purity_loss(inst.rho, inst.gen, 0.01).delta_gamma);
}
BENCHMARK(BM_PurityLoss)->Arg(2)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
