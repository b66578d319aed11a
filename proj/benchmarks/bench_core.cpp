// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
//! \file bench_core.cpp
//! Timings for the kernels that dominate map and probability runs.
#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>

#include "unruh/analysis.hpp"
#include "unruh/kinematics.hpp"
#include "unruh/quadrature.hpp"
#include "unruh/radiation.hpp"
#include "unruh/units.hpp"

namespace {

using namespace unruh;

PulseProfile gaussian_pulse(double gamma)
{
    auto shape = PulseProfile::gaussian(1, to_natural(0.3, Unit::attosecond));
    return shape.with_peak(peak_field_for_gamma(shape, 0, gamma));
}

void fourier_gaussian(benchmark::State& state)
{
    double const omega = static_cast<double>(state.range(0));
    OscillatoryIntegralSpec spec;
    spec.envelope = [](double x) { return std::complex<double>(std::exp(-0.5 * x * x)); };
    spec.omega = omega;
    spec.lower = -12;
    spec.upper = 12;
    for (auto _ : state)
        benchmark::DoNotOptimize(fourier_integral(spec).value);
}
BENCHMARK(fourier_gaussian)->Arg(1)->Arg(10)->Arg(100)->Arg(1000);

void trajectory_solve(benchmark::State& state)
{
    auto const pulse = gaussian_pulse(static_cast<double>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(Trajectory::solve(pulse, 0, default_window(pulse)).gamma_max());
}
BENCHMARK(trajectory_solve)->Arg(2)->Arg(20)->Unit(benchmark::kMicrosecond);

void inverse_retarded_map(benchmark::State& state)
{
    auto const pulse = gaussian_pulse(10);
    auto const traj = Trajectory::solve(pulse, 0, default_window(pulse));
    RetardedTimeMap const map(traj, DirectionWeight::from_angle(0.01));
    double const a = map.tau(traj.t_begin()), b = map.tau(traj.t_end());
    std::size_t i = 0;
    for (auto _ : state)
    {
        double const tau = a + (b - a) * static_cast<double>(i++ % 1000) / 1000;
        benchmark::DoNotOptimize(map.time(tau));
    }
}
BENCHMARK(inverse_retarded_map);

void map_cell(benchmark::State& state)
{
    auto const pulse = gaussian_pulse(2);
    auto const traj = Trajectory::solve(pulse, 0, default_window(pulse));
    double const kc = cutoff_wavenumber(traj, pulse).primary;
    auto const mode = PhotonMode::make(0.3 * kc, 0.2, 0, Polarization::linear1);
    auto const method = state.range(0) == 0 ? Method::retarded : Method::time_domain;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(unruh_amplitude(traj, mode, mode, method).value);
        benchmark::DoNotOptimize(larmor_coefficient(traj, mode, method).value);
    }
}
BENCHMARK(map_cell)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
