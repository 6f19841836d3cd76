#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "mzsim/fock_evolution.hpp"
#include "mzsim/fringe_fit.hpp"
#include "mzsim/heat_solver.hpp"
#include "mzsim/permanent.hpp"
#include "mzsim/tomography.hpp"
#include "mzsim/unitary.hpp"

namespace {

mzsim::Matrix random_matrix(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    mzsim::Matrix m(n, n);
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) m(i, j) = mzsim::Complex(gauss(rng), gauss(rng));
    }
    return m;
}

void bm_permanent(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    mzsim::Matrix m = random_matrix(n, 42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mzsim::permanent(m));
    }
}

void bm_evolve_fock(benchmark::State &state) {
    const int photons = static_cast<int>(state.range(0));
    std::mt19937_64 rng(7);
    mzsim::Unitary u = mzsim::haar_random_unitary(4, rng);
    std::vector<int> occ(4, 0);
    for (int k = 0; k < photons; k++) occ[k % 4]++;
    mzsim::FockState input(occ);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mzsim::evolve_fock(u, input));
    }
}

void bm_heat_solve(benchmark::State &state) {
    const int nx = static_cast<int>(state.range(0));
    mzsim::HeatGrid grid;
    grid.width = 6e-3;
    grid.depth = 1e-3;
    grid.nx = nx;
    grid.ny = (nx - 1) / 2 + 1;
    mzsim::HeaterDrive drive;
    drive.x_min = 2.8e-3;
    drive.x_max = 3.2e-3;
    drive.value = grid.base_temperature + 30.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mzsim::solve_heat_fd(grid, {drive}));
    }
}

void bm_fringe_fit(benchmark::State &state) {
    const int points = static_cast<int>(state.range(0));
    mzsim::FringeScan scan;
    scan.counts_out.resize(2);
    for (int i = 0; i < points; i++) {
        double p = 0.5 * i / (points - 1);
        double phi = 0.837 + 13.43 * p;
        scan.control.push_back(p);
        scan.counts_out[0].emplace_back(1000.0 * (1 + 0.964 * std::cos(phi)));
        scan.counts_out[1].emplace_back(1000.0 * (1 - 0.964 * std::cos(phi)));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(mzsim::fit_fringe(scan));
    }
}

void bm_reconstruct(benchmark::State &state) {
    const int dim = static_cast<int>(state.range(0));
    std::mt19937_64 rng(11);
    mzsim::Unitary u = mzsim::haar_random_unitary(dim, rng);
    mzsim::TomographyDataset data = mzsim::simulate_dataset(u, 0.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mzsim::reconstruct(data));
    }
}

BENCHMARK(bm_permanent)->DenseRange(2, 12, 2);
BENCHMARK(bm_evolve_fock)->DenseRange(2, 6, 2);
BENCHMARK(bm_heat_solve)->Arg(61)->Arg(121)->Arg(241)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_fringe_fit)->Arg(50)->Arg(200);
BENCHMARK(bm_reconstruct)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
