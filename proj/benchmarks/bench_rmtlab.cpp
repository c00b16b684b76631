#include <benchmark/benchmark.h>

#include <cmath>

#include "rmtlab/ensembles.hpp"
#include "rmtlab/kernels_complex.hpp"
#include "rmtlab/kernels_real.hpp"
#include "rmtlab/logdet_flow.hpp"
#include "rmtlab/specialfn.hpp"
#include "rmtlab/spectra.hpp"
#include "rmtlab/statistics.hpp"

using namespace rmtlab;

namespace {

void BM_KernelFinite(benchmark::State& state) {
    const long n = state.range(0);
    const double rt = std::sqrt(double(n));
    const cplx z(0.3 * rt, 0.2 * rt), w = z + cplx(0.7, -0.4);
    for (auto _ : state) benchmark::DoNotOptimize(kernel_finite(n, z, w));
}
BENCHMARK(BM_KernelFinite)->Arg(64)->Arg(1024)->Arg(16384);

void BM_RealKernelRho11(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const double rt = std::sqrt(double(n));
    for (auto _ : state) benchmark::DoNotOptimize(rho_kl(n, {0.2 * rt}, {rt * cplx(0.3, 0.3)}));
}
BENCHMARK(BM_RealKernelRho11)->Arg(16)->Arg(256);

void BM_Eigenvalues(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const AtomDistribution atom{state.range(1) ? AtomKind::RealGaussian : AtomKind::ComplexGaussian};
    Rng rng(1);
    const auto m = sample_matrix(EnsembleSpec{n, atom, 0}, rng);
    for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(m));
}
BENCHMARK(BM_Eigenvalues)->ArgsProduct({{128, 256, 512}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_HessenbergEigenvalues(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(2);
    const auto m = hessenberg_matrix(n, Field::complex, rng);
    for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(m));
}
BENCHMARK(BM_HessenbergEigenvalues)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_LogAbsDet(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(3);
    const auto m = sample_matrix(EnsembleSpec{n, AtomDistribution{AtomKind::ComplexFourMatch}, 0}, rng);
    for (auto _ : state) benchmark::DoNotOptimize(logabsdet(m));
}
BENCHMARK(BM_LogAbsDet)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_HessenbergLogDetSample(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(4);
    for (auto _ : state) benchmark::DoNotOptimize(hessenberg_logdet_sample(n, 0.5, Field::complex, rng));
}
BENCHMARK(BM_HessenbergLogDetSample)->Arg(1024)->Arg(16384);

void BM_Pfaffian(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    Rng rng(5);
    SkewMatrix a(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) a.set(i, j, rng.complex_normal());
    for (auto _ : state) benchmark::DoNotOptimize(pfaffian(a));
}
BENCHMARK(BM_Pfaffian)->Arg(8)->Arg(64);

void BM_JensenCount(benchmark::State& state) {
    const int n = 128;
    Rng rng(6);
    const auto m = sample_matrix(EnsembleSpec{n, AtomDistribution{AtomKind::ComplexGaussian}, 0}, rng);
    const HessenbergLogDet f(m);
    for (auto _ : state)
        benchmark::DoNotOptimize(jensen_count(f, 0.3 * std::sqrt(double(n)), 4.0, static_cast<int>(state.range(0)), rng));
}
BENCHMARK(BM_JensenCount)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
