// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "unruh/errors.hpp"
#include "unruh/pulse.hpp"

namespace unruh {
namespace {

using testing::Generator;
using testing::kPi;
using testing::relative;

PulseProfile random_pulse(Generator& gen)
{
    double const peak = gen.log_uniform(1e-3, 1e3);
    double const length = gen.log_uniform(1e-3, 10);
    double const center = gen.uniform(-5, 5);
    switch (gen.integer(0, 2))
    {
    case 0: return PulseProfile::gaussian(peak, length, center);
    case 1: return PulseProfile::rectangular(peak, length, center);
    default: return PulseProfile::smooth_front(peak, length, length * gen.uniform(0.05, 0.5), center);
    }
}

TEST(Pulse, GaussianPeakAndSigmaPoint)
{
    auto const p = PulseProfile::gaussian(3.0, 0.7, 1.5);
    EXPECT_EQ(field_at(p, 1.5), 3.0);
    EXPECT_LT(relative(field_at(p, 1.5 + 0.7), 3.0 * std::exp(-0.5)), 1e-15);
    EXPECT_LT(relative(field_at(p, 1.5 - 0.7), 3.0 * std::exp(-0.5)), 1e-15);
}

TEST(Pulse, RectangularSupport)
{
    auto const p = PulseProfile::rectangular(2.0, 1.0, 0.0);
    EXPECT_EQ(field_at(p, 0.0), 2.0);
    EXPECT_EQ(field_at(p, 0.49), 2.0);
    EXPECT_EQ(field_at(p, 0.51), 0.0);
    EXPECT_EQ(field_at(p, -3.0), 0.0);
    auto const kinks = field_kinks(p);
    ASSERT_EQ(kinks.size(), 2u);
    EXPECT_EQ(kinks[0], -0.5);
    EXPECT_EQ(kinks[1], 0.5);
}

TEST(Pulse, SmoothFrontRamp)
{
    EXPECT_EQ(smooth_ramp(-1), 0.0);
    EXPECT_EQ(smooth_ramp(0), 0.0);
    EXPECT_EQ(smooth_ramp(1), 1.0);
    EXPECT_NEAR(smooth_ramp(0.5), 0.5, 1e-15);
    // Defining formula at an interior point.
    double const x = 0.3;
    double const e0 = std::exp(-1 / x), e1 = std::exp(-1 / (1 - x));
    EXPECT_LT(relative(smooth_ramp(x), e0 / (e0 + e1)), 1e-14);
    // S(x) + S(1 - x) = 1.
    Generator gen(11);
    for (int i = 0; i < 200; ++i)
    {
        double const y = gen.uniform(0, 1);
        EXPECT_NEAR(smooth_ramp(y) + smooth_ramp(1 - y), 1.0, 1e-14);
    }
    auto const p = PulseProfile::smooth_front(1.0, 2.0, 0.5);
    EXPECT_EQ(field_at(p, 0.0), 1.0);
    EXPECT_EQ(field_at(p, -1.0), 0.0);
    EXPECT_EQ(field_at(p, 1.2), 0.0);
    EXPECT_NEAR(field_at(p, -0.75), 0.5, 1e-15);
}

TEST(Pulse, FullIntegrals)
{
    auto const r = PulseProfile::rectangular(2.0, 3.0, 1.0);
    EXPECT_LT(relative(field_time_integral(r, -10, 10), 6.0), 1e-15);
    auto const g = PulseProfile::gaussian(2.0, 0.4, -1.0);
    EXPECT_LT(relative(field_time_integral(g, -20, 20), 2.0 * 0.4 * std::sqrt(2 * kPi)), 1e-14);
    EXPECT_LT(relative(shape_integral(g), 0.4 * std::sqrt(2 * kPi)), 1e-15);
    // Brute-force Simpson cross-check of the error-function form.
    auto const f = [&g](double t) { return field_at(g, t); };
    EXPECT_LT(relative(field_time_integral(g, -1.3, 0.2), testing::simpson(f, -1.3, 0.2, 4000)), 1e-12);
    auto const s = PulseProfile::smooth_front(1.0, 2.0, 0.5);
    EXPECT_LT(relative(field_time_integral(s, -5, 5), 1.5), 1e-12);
    EXPECT_LT(relative(shape_integral(s), 1.5), 1e-15);
}

TEST(Pulse, EmptyIntervalIsZero)
{
    Generator gen(12);
    for (int i = 0; i < 50; ++i)
    {
        auto const p = random_pulse(gen);
        double const t = gen.uniform(-5, 5);
        EXPECT_EQ(field_time_integral(p, t, t), 0.0);
    }
}

TEST(Pulse, GaussianTailKeepsRelativeAccuracy)
{
    auto const g = PulseProfile::gaussian(1.0, 1.0);
    // erfc(6/sqrt2) / 2 * sqrt(2 pi) over [6, inf).
    double const exact = std::sqrt(kPi / 2) * std::erfc(6 / std::sqrt(2.0));
    EXPECT_LT(relative(field_time_integral(g, 6, 60), exact), 1e-12);
}

TEST(Pulse, DerivativeOfIntegralIsField)
{
    Generator gen(0x70756c7365ULL);
    for (int i = 0; i < 300; ++i)
    {
        auto const p = random_pulse(gen);
        auto const kinks = field_kinks(p);
        double const t = p.center + gen.uniform(-0.6, 0.6) * 2 * p.length;
        double const h = 1e-4 * p.length;
        bool near_kink = false;
        for (double k : kinks)
            near_kink |= std::abs(t - k) < 4 * h;
        if (near_kink)
            continue;
        double const t0 = p.center - 10 * p.length;
        // Fourth-order central difference.
        double const d = (-field_time_integral(p, t0, t + 2 * h) + 8 * field_time_integral(p, t0, t + h)
                          - 8 * field_time_integral(p, t0, t - h) + field_time_integral(p, t0, t - 2 * h))
                         / (12 * h);
        double const e = field_at(p, t);
        EXPECT_NEAR(d, e, 1e-8 * p.peak_field + 1e-8 * std::abs(e)) << shape_name(p.shape) << " t=" << t;
    }
}

TEST(Pulse, EvenAboutCenter)
{
    Generator gen(13);
    for (int i = 0; i < 300; ++i)
    {
        auto p = random_pulse(gen);
        double const x = gen.uniform(0, 2) * p.length;
        double const a = field_at(p, p.center + x);
        EXPECT_NEAR(a, field_at(p, p.center - x), 1e-12 * p.peak_field);
    }
}

TEST(Pulse, NegligibleWindow)
{
    auto const g = PulseProfile::gaussian(1.0, 0.5, 2.0);
    auto const [a, b] = negligible_window(g, 1e-12);
    EXPECT_NEAR(field_at(g, a), 1e-12, 1e-24);
    EXPECT_NEAR(field_at(g, b), 1e-12, 1e-24);
    auto const r = PulseProfile::rectangular(1.0, 2.0);
    auto const [c, d] = negligible_window(r);
    EXPECT_EQ(c, -1.0);
    EXPECT_EQ(d, 1.0);
}

TEST(Pulse, Validation)
{
    EXPECT_THROW(PulseProfile::gaussian(-1, 1), InvalidArgument);
    EXPECT_THROW(PulseProfile::gaussian(1, 0), InvalidArgument);
    EXPECT_THROW(PulseProfile::rectangular(1, -2), InvalidArgument);
    EXPECT_THROW(PulseProfile::smooth_front(1, 1, 0), InvalidArgument);
    EXPECT_THROW(PulseProfile::smooth_front(1, 1, 2), InvalidArgument);
    EXPECT_THROW(PulseProfile::gaussian(NAN, 1), InvalidArgument);
    EXPECT_THROW(field_time_integral(PulseProfile::gaussian(1, 1), 1, 0), InvalidArgument);
    EXPECT_THROW(parse_shape("triangle"), InvalidArgument);
    EXPECT_EQ(parse_shape("smooth_front"), PulseShape::smooth_front);
    EXPECT_EQ(parse_shape(shape_name(PulseShape::gaussian)), PulseShape::gaussian);
}

TEST(Pulse, WithPeakKeepsShape)
{
    auto const p = PulseProfile::smooth_front(1.0, 2.0, 0.3, 0.5).with_peak(7.0);
    EXPECT_EQ(p.peak_field, 7.0);
    EXPECT_EQ(p.rise_time, 0.3);
    EXPECT_EQ(p.center, 0.5);
    EXPECT_EQ(p.shape, PulseShape::smooth_front);
}

}  // namespace
}  // namespace unruh
