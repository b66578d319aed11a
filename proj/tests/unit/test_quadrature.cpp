// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "test_support.hpp"
#include "unruh/errors.hpp"
#include "unruh/quadrature.hpp"

namespace unruh {
namespace {

using cd = std::complex<double>;
using testing::Generator;
using testing::kPi;
using testing::relative;

constexpr cd kI{0, 1};

IntegralResult gaussian_transform(double mu, double s, double omega, QuadratureTolerance tol = {})
{
    OscillatoryIntegralSpec spec;
    spec.envelope = [mu, s](double x) { return cd(std::exp(-0.5 * (x - mu) * (x - mu) / (s * s))); };
    spec.omega = omega;
    spec.lower = mu - 12 * s;
    spec.upper = mu + 12 * s;
    spec.tol = tol;
    return fourier_integral(spec);
}

cd gaussian_exact(double mu, double s, double omega)
{
    return s * std::sqrt(2 * kPi) * std::exp(-0.5 * omega * omega * s * s) * std::polar(1.0, omega * mu);
}

TEST(Quadrature, GaussianTransform)
{
    Generator gen(0x717561);
    for (int i = 0; i < 200; ++i)
    {
        double const mu = gen.uniform(-3, 3);
        double const s = gen.log_uniform(0.05, 5);
        double const omega = gen.uniform(0, 5) / s;
        auto const r = gaussian_transform(mu, s, omega);
        ASSERT_LT(relative(r.value, gaussian_exact(mu, s, omega)), 1e-8) << mu << " " << s << " " << omega;
    }
}

TEST(Quadrature, StepEnvelope)
{
    // Unit step on [a, b] inside a wider domain: (e^{iwb} - e^{iwa}) / (iw).
    double const a = 0.3, b = 2.1;
    for (double omega : {0.5, 3.0, 40.0, 900.0})
    {
        OscillatoryIntegralSpec spec;
        spec.envelope = [a, b](double x) { return cd(x >= a && x <= b ? 1.0 : 0.0); };
        spec.omega = omega;
        spec.lower = -1;
        spec.upper = 4;
        spec.discontinuities = {a, b};
        auto const r = fourier_integral(spec);
        cd const exact = (std::polar(1.0, omega * b) - std::polar(1.0, omega * a)) / (kI * omega);
        EXPECT_LT(std::abs(r.value - exact), 1e-11) << omega;
    }
}

TEST(Quadrature, ZeroFrequencyIsPlainIntegral)
{
    OscillatoryIntegralSpec spec;
    spec.envelope = [](double x) { return cd(x * x * x - 2 * x, std::cos(x)); };
    spec.lower = -1;
    spec.upper = 2;
    auto const r = fourier_integral(spec);
    // x^4/4 - x^2 over [-1, 2] = (4 - 4) - (1/4 - 1); sin 2 + sin 1.
    EXPECT_NEAR(r.value.real(), 0.75, 1e-13);
    EXPECT_NEAR(r.value.imag(), std::sin(2.0) + std::sin(1.0), 1e-13);
}

TEST(Quadrature, ExponentialDecay)
{
    // int_0^L e^{-a x} e^{i w x} dx = (e^{(iw - a) L} - 1) / (iw - a)
    Generator gen(31);
    for (int i = 0; i < 100; ++i)
    {
        double const a = gen.uniform(0.1, 10), L = gen.uniform(0.5, 5), omega = gen.uniform(0, 200);
        OscillatoryIntegralSpec spec;
        spec.envelope = [a](double x) { return cd(std::exp(-a * x)); };
        spec.omega = omega;
        spec.upper = L;
        auto const r = fourier_integral(spec);
        cd const z = kI * omega - a;
        cd const exact = (std::exp(z * L) - 1.0) / z;
        ASSERT_LT(relative(r.value, exact), 1e-8);
    }
}

TEST(Quadrature, Linearity)
{
    Generator gen(32);
    auto f = [](double x) { return cd(std::exp(-x * x), x); };
    auto g = [](double x) { return cd(1 / (1 + x * x), 0); };
    for (int i = 0; i < 30; ++i)
    {
        double const omega = gen.uniform(0, 50);
        cd const alpha{gen.normal(), gen.normal()}, beta{gen.normal(), gen.normal()};
        auto run = [&](ComplexEnvelope e) {
            OscillatoryIntegralSpec spec{std::move(e), omega, -3, 4, {}, {}};
            spec.tol.rel = 1e-12;
            spec.tol.abs = 1e-14;
            return fourier_integral(spec).value;
        };
        cd const lhs = run([&](double x) { return alpha * f(x) + beta * g(x); });
        cd const rhs = alpha * run(f) + beta * run(g);
        ASSERT_LT(std::abs(lhs - rhs), 1e-10 * (std::abs(alpha) + std::abs(beta)));
    }
}

TEST(Quadrature, FrequencyShift)
{
    // Moving e^{i d x} from the envelope into the carrier leaves the value unchanged.
    Generator gen(33);
    for (int i = 0; i < 30; ++i)
    {
        double const omega = gen.uniform(0, 30), d = gen.uniform(0, 30);
        auto env = [](double x) { return std::exp(-0.5 * x * x) * (1 + 0.3 * x); };
        OscillatoryIntegralSpec a{[&](double x) { return cd(env(x)) * std::polar(1.0, d * x); }, omega, -10, 10, {}, {}};
        OscillatoryIntegralSpec b{[&](double x) { return cd(env(x)); }, omega + d, -10, 10, {}, {}};
        a.tol.abs = b.tol.abs = 1e-14;
        ASSERT_LT(std::abs(fourier_integral(a).value - fourier_integral(b).value), 1e-11);
    }
}

TEST(Quadrature, ReversedLimitsFlipSign)
{
    OscillatoryIntegralSpec spec{[](double x) { return cd(std::cos(x)); }, 7.0, 0, 3, {}, {}};
    auto const fwd = fourier_integral(spec).value;
    std::swap(spec.lower, spec.upper);
    EXPECT_LT(std::abs(fourier_integral(spec).value + fwd), 1e-14);
    spec.upper = spec.lower;
    EXPECT_EQ(fourier_integral(spec).value, cd(0));
}

TEST(Quadrature, ErrorEstimateCoverage)
{
    // The estimate must bound the true error in at least 99% of cases.
    Generator gen(0xc0de);
    int covered = 0, total = 0;
    for (int i = 0; i < 400; ++i)
    {
        QuadratureTolerance tol;
        tol.abs = 0;
        tol.rel = gen.log_uniform(1e-10, 1e-4);
        double const mu = gen.uniform(-1, 1), s = gen.log_uniform(0.1, 2), omega = gen.uniform(0, 8) / s;
        auto const r = gaussian_transform(mu, s, omega, tol);
        double const actual = std::abs(r.value - gaussian_exact(mu, s, omega));
        ++total;
        covered += actual <= std::max(r.error, 1e-15 * std::abs(r.value)) ? 1 : 0;
    }
    EXPECT_GE(covered, 0.99 * total) << covered << "/" << total;
}

TEST(Quadrature, BudgetExhaustionThrows)
{
    OscillatoryIntegralSpec spec{[](double x) { return cd(std::sqrt(std::abs(x))); }, 1.0, -1, 1, {}, {}};
    spec.tol.max_panels = 8;
    spec.tol.min_panels = 1;
    spec.tol.rel = 1e-14;
    EXPECT_THROW(fourier_integral(spec), ConvergenceError);
    spec.tol.max_panels = 4;
    spec.omega = 1e6;
    EXPECT_THROW(fourier_integral(spec), ConvergenceError);
}

TEST(Quadrature, InvalidInput)
{
    OscillatoryIntegralSpec spec{[](double) { return cd(1); }, -1.0, 0, 1, {}, {}};
    EXPECT_THROW(fourier_integral(spec), InvalidArgument);
    spec.omega = 1;
    spec.upper = INFINITY;
    EXPECT_THROW(fourier_integral(spec), InvalidArgument);
    EXPECT_THROW(gauss_legendre(0), InvalidArgument);
    EXPECT_THROW(gauss_legendre(65), InvalidArgument);
}

TEST(Quadrature, RealIntegrateWithBreakpoint)
{
    double const bp[] = {0.5};
    auto const r = integrate([](double x) { return std::abs(x - 0.5); }, 0, 2, {}, bp);
    EXPECT_NEAR(r.value, 0.125 + 1.125, 1e-13);
    auto const s = integrate([](double x) { return std::exp(x); }, 0, 1);
    EXPECT_LT(relative(s.value, std::exp(1.0) - 1), 1e-12);
}

TEST(Quadrature, ComponentsShareRefinement)
{
    auto f = [](double x, std::span<double> out) {
        out[1] = std::sin(x);
        out[2] = x * x;
        out[0] = out[1] + out[2];
    };
    auto const r = integrate_components(f, 3, 0, kPi);
    ASSERT_EQ(r.value.size(), 3u);
    EXPECT_NEAR(r.value[1], 2.0, 1e-12);
    EXPECT_NEAR(r.value[2], kPi * kPi * kPi / 3, 1e-11);
    EXPECT_NEAR(r.value[0], r.value[1] + r.value[2], 1e-12);
    EXPECT_THROW(integrate_components(f, 0, 0, 1), InvalidArgument);
}

TEST(Quadrature, GaussLegendreExactness)
{
    for (std::size_t n : {1u, 2u, 5u, 16u, 33u, 64u})
    {
        auto const& rule = gauss_legendre(n);
        ASSERT_EQ(rule.nodes.size(), n);
        double sum = 0;
        for (double w : rule.weights)
            sum += w;
        EXPECT_NEAR(sum, 2.0, 1e-14);
        // Exact for x^(2n-2): 2 / (2n - 1).
        double moment = 0;
        for (std::size_t i = 0; i < n; ++i)
            moment += rule.weights[i] * std::pow(rule.nodes[i], 2.0 * n - 2);
        EXPECT_NEAR(moment, 2.0 / (2.0 * n - 1), 1e-13) << n;
    }
}

TEST(Quadrature, SphericalBessel)
{
    auto j0 = [](double x) { return std::sin(x) / x; };
    auto j1 = [](double x) { return std::sin(x) / (x * x) - std::cos(x) / x; };
    auto j2 = [](double x) { return (3 / (x * x) - 1) * std::sin(x) / x - 3 * std::cos(x) / (x * x); };
    for (double x : {1e-6, 1e-3, 0.1, 0.7, 1.2, 1.6})
    {
        std::array<double, 16> out{};
        spherical_bessel_small(x, out);
        EXPECT_NEAR(out[0], j0(x), 1e-15);
        if (x >= 0.1)
        {
            EXPECT_LT(relative(out[1], j1(x)), 1e-12) << x;
            EXPECT_LT(relative(out[2], j2(x)), 1e-10) << x;
            EXPECT_LT(relative(out[15], std::sph_bessel(15, x)), 1e-10) << x;
        }
        else
        {
            // Leading series terms; the closed forms cancel catastrophically here.
            EXPECT_LT(relative(out[1], x / 3 * (1 - x * x / 10)), 1e-12) << x;
            EXPECT_LT(relative(out[2], x * x / 15 * (1 - x * x / 14)), 1e-12) << x;
        }
    }
    std::array<double, 4> zero{};
    spherical_bessel_small(0.0, zero);
    EXPECT_EQ(zero[0], 1.0);
    EXPECT_EQ(zero[3], 0.0);
}

}  // namespace
}  // namespace unruh
