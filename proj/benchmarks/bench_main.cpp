#include <benchmark/benchmark.h>

#include <numbers>

#include "kfgm/evolution.hpp"
#include "kfgm/spectrum.hpp"

using namespace kfgm;

namespace {

constexpr double kPi = std::numbers::pi;

void BM_BuildHamiltonian(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Grid g(0.0, kPi, n);
    const PhysicalParams p = PhysicalParams::natural_units();
    const BoundaryParams bc = preset("robin", 1.0);
    const ScalarPotential S = ScalarPotential::gaussian_well(0.5, 1.5, 0.3);
    for (auto _ : state) {
        auto H = build_hamiltonian(g, p, S, 0.0, bc);
        benchmark::DoNotOptimize(H.matrix().data());
    }
}
BENCHMARK(BM_BuildHamiltonian)->Arg(128)->Arg(256)->Arg(512);

void BM_CrankNicolsonStep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Grid g(0.0, kPi, n);
    const PhysicalParams p = PhysicalParams::natural_units();
    const auto H =
        build_hamiltonian(g, p, ScalarPotential::zero(), 0.0, preset("dirichlet", 1.0));
    CrankNicolsonStepper cn(H, 0.5 * g.h);
    Eigen::VectorXcd v = Eigen::VectorXcd::Random(2 * H.block_size());
    for (auto _ : state) {
        v = cn.step(v);
        benchmark::DoNotOptimize(v.data());
    }
}
BENCHMARK(BM_CrankNicolsonStep)->Arg(128)->Arg(256)->Arg(512);

void BM_LeapfrogStep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Grid g(0.0, kPi, n);
    const PhysicalParams p = PhysicalParams::natural_units();
    KfgStepper stepper(g, p, ScalarPotential::zero(), preset("dirichlet", 1.0),
                       0.25 * g.h);
    ComplexField u0(stepper.reduction().n_reduced());
    u0.setRandom();
    stepper.set_state(u0, ComplexField::Zero(u0.size()), 0.0);
    for (auto _ : state) {
        stepper.step();
        benchmark::DoNotOptimize(stepper.position().data());
    }
}
BENCHMARK(BM_LeapfrogStep)->Arg(256)->Arg(1024);

void BM_StationaryModes(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Grid g(0.0, kPi, n);
    const PhysicalParams p = PhysicalParams::natural_units();
    for (auto _ : state) {
        auto m = stationary_modes(g, p, ScalarPotential::zero(),
                                  preset("dirichlet", 1.0), 4);
        benchmark::DoNotOptimize(m.modes.data());
    }
}
BENCHMARK(BM_StationaryModes)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_PseudoInnerProduct(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Grid g(0.0, kPi, n);
    FVState a(ComplexField::Random(n), ComplexField::Random(n), 0.0);
    FVState b(ComplexField::Random(n), ComplexField::Random(n), 0.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pseudo_inner_product(a, b, g));
    }
}
BENCHMARK(BM_PseudoInnerProduct)->Arg(1024)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
