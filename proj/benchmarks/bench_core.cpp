#include "disk_squeeze/control.hpp"
#include "disk_squeeze/dynamics.hpp"
#include "disk_squeeze/fock_oracle.hpp"
#include "disk_squeeze/geometry.hpp"

#include <benchmark/benchmark.h>

#include <complex>

using namespace disk_squeeze;

static void BM_Flow(benchmark::State& state) {
    const QuadraticHamiltonian h(0.7, Complex(0.4, -0.3));
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(flow(h, t).map);
        t += 1e-3;
    }
}
BENCHMARK(BM_Flow);

static void BM_Evolve(benchmark::State& state) {
    const QuadraticHamiltonian h(0.3, Complex(0.8, 0.1));
    const DiskPoint z0(Complex(0.2, -0.1));
    for (auto _ : state) benchmark::DoNotOptimize(evolve(h, z0, 1.3));
}
BENCHMARK(BM_Evolve);

static void BM_InvariantCurve(benchmark::State& state) {
    const MoebiusMap m = flow({2.0, Complex(0.5, 0.5)}, 0.4).map;
    const DiskPoint z0(Complex(0.3, 0.1));
    for (auto _ : state) benchmark::DoNotOptimize(invariant_curve(m, z0).carrier);
}
BENCHMARK(BM_InvariantCurve);

static void BM_HyperbolicDistance(benchmark::State& state) {
    const DiskPoint z(Complex(0.3, 0.4)), w(Complex(-0.5, 0.2));
    for (auto _ : state) benchmark::DoNotOptimize(hyperbolic_distance(z, w));
}
BENCHMARK(BM_HyperbolicDistance);

static void BM_FockEvolve(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const fock::FockOperator h = fock::hamiltonian_matrix({2.0, 1.0}, n);
    const fock::FockVector psi = fock::squeezed_state_vector(0.0, n);
    for (auto _ : state) benchmark::DoNotOptimize(fock::evolve_vector(h, psi, 0.5));
}
BENCHMARK(BM_FockEvolve)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_PropagatorReuse(benchmark::State& state) {
    const fock::Propagator prop(fock::hamiltonian_matrix({2.0, 1.0}, 128));
    const fock::FockVector psi = fock::squeezed_state_vector(0.0, 128);
    for (auto _ : state) benchmark::DoNotOptimize(prop.evolve(psi, 0.5));
}
BENCHMARK(BM_PropagatorReuse);

static void BM_SynthesizePulses(benchmark::State& state) {
    const QuadraticHamiltonian h0(1.0, 0.0);
    const QuadraticHamiltonian h1(2.0, 1.6);
    const DiskPoint zf(Complex(0.6, 0.5));
    const auto k = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(control::synthesize_pulses(0.0, zf, k, h0, h1));
}
BENCHMARK(BM_SynthesizePulses)->Arg(2)->Arg(8);

// Unstable Hamiltonian whose flow runs from e^{ia} to e^{ib} on the unit circle.
static QuadraticHamiltonian unstable_between(double a, double b) {
    const double phi = (b - a) / 2.0;
    return {std::cos(phi), std::polar(1.0, phi) / std::polar(1.0, b)};
}

static void BM_UnstableReachableSet(benchmark::State& state) {
    const double pi = 3.14159265358979323846;
    const QuadraticHamiltonian h0 = unstable_between(-pi / 8, pi / 8);
    const QuadraticHamiltonian h1 = unstable_between(pi / 4, 3 * pi / 8);
    for (auto _ : state) benchmark::DoNotOptimize(control::unstable_reachable_set(0.0, h0, h1));
}
BENCHMARK(BM_UnstableReachableSet)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
