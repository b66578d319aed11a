// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "unruh/analysis.hpp"
#include "unruh/errors.hpp"
#include "unruh/units.hpp"

namespace unruh {
namespace {

using testing::Generator;
using testing::kPi;
using testing::relative;

Constants const& K() { return Constants::codata(); }

struct Setup
{
    PulseProfile pulse;
    Trajectory traj;
};

Setup gaussian_setup(double sigma, double gamma)
{
    auto shape = PulseProfile::gaussian(1, sigma);
    auto pulse = shape.with_peak(peak_field_for_gamma(shape, 0, gamma));
    return {pulse, Trajectory::solve(pulse, 0, default_window(pulse))};
}

TEST(Temperature, SchwingerAcceleration)
{
    // a = q E_S / m = m, so T = m / (2 pi) = 81.33 keV.
    double const a = K().q * K().schwinger_field / K().m;
    double const t = unruh_temperature(a);
    EXPECT_LT(relative(t, 510998.95 / (2 * kPi)), 1e-12);
    EXPECT_NEAR(t / 1e3, 81.3, 0.05);
    EXPECT_LT(relative(unruh_temperature_kelvin(a), t / 8.617333262e-5), 1e-12);
    EXPECT_EQ(unruh_temperature(0), 0.0);
    EXPECT_THROW(unruh_temperature(-1), InvalidArgument);
}

TEST(PowerLaw, RecoversExactLaw)
{
    Generator gen(51);
    for (int i = 0; i < 50; ++i)
    {
        double const p = gen.uniform(-6, 3), a = gen.log_uniform(1e-20, 1e20);
        std::vector<double> x, y;
        for (int j = 0; j < 10; ++j)
        {
            x.push_back(gen.log_uniform(1e-3, 1e3));
            y.push_back(a * std::pow(x.back(), p));
        }
        auto const fit = power_law_fit(x, y);
        ASSERT_NEAR(fit.exponent, p, 1e-10);
        ASSERT_LT(relative(fit.prefactor, a), 1e-8);
        ASSERT_LT(fit.rms_residual, 1e-10);
        ASSERT_EQ(fit.points, 10u);
        ASSERT_LT(relative(fit(2.0), a * std::pow(2.0, p)), 1e-8);
    }
}

TEST(PowerLaw, RejectsBadData)
{
    std::vector<double> const x{1, 2, 3}, y{1, -1, 2}, one{1}, same{2, 2, 2};
    EXPECT_THROW(power_law_fit(x, y), InvalidArgument);
    EXPECT_THROW(power_law_fit(one, one), InvalidArgument);
    EXPECT_THROW(power_law_fit(same, x), InvalidArgument);
}

TEST(Grids, Shapes)
{
    auto const lin = linear_grid(1, 3, 5);
    ASSERT_EQ(lin.size(), 5u);
    EXPECT_EQ(lin.front(), 1.0);
    EXPECT_EQ(lin.back(), 3.0);
    EXPECT_DOUBLE_EQ(lin[1], 1.5);
    auto const lg = log_grid(1e-2, 1e2, 5);
    EXPECT_DOUBLE_EQ(lg[0], 1e-2);
    EXPECT_NEAR(lg[2], 1.0, 1e-14);
    EXPECT_NEAR(lg[4], 1e2, 1e-12);
    EXPECT_THROW(log_grid(0, 1, 3), InvalidArgument);
    auto const ang = axis_refined_angles(101);
    EXPECT_EQ(ang.front(), 0.0);
    EXPECT_NEAR(ang.back(), kPi, 1e-15);
    EXPECT_NEAR(ang[50], kPi / 2, 1e-14);
    // Clustered at the poles: first step much smaller than the middle one.
    EXPECT_LT(ang[1] - ang[0], 0.02 * (ang[51] - ang[50]));  // ratio ~ pi / (2 (n - 1))
    for (std::size_t i = 1; i < ang.size(); ++i)
        ASSERT_GT(ang[i], ang[i - 1]);
    EXPECT_THROW(axis_refined_angles(1), InvalidArgument);
}

TEST(Names, RoundTrip)
{
    for (auto p : {Pairing::parallel, Pairing::back_to_back})
        EXPECT_EQ(parse_pairing(pairing_name(p)), p);
    for (auto p : {Polarization::linear1, Polarization::linear2, Polarization::plus, Polarization::minus})
        EXPECT_EQ(parse_polarization(polarization_name(p)), p);
    EXPECT_THROW(parse_pairing("sideways"), InvalidArgument);
    EXPECT_THROW(parse_polarization("elliptic"), InvalidArgument);
}

TEST(Map, CellsMatchDirectAmplitudes)
{
    auto const s = gaussian_setup(to_natural(0.3, Unit::attosecond), 2.0);
    std::vector<double> const k{500, 2000, 8000};
    std::vector<double> const theta{0.0, 0.01, 0.5, kPi / 2, kPi - 0.01, kPi};
    MapOptions opts;
    opts.threads = 2;
    auto const map = spectral_map(s.traj, k, theta, opts);
    EXPECT_EQ(map.failed_count(), 0u);
    EXPECT_NEAR(map.gamma_max, 2.0, 1e-9);
    for (std::size_t i = 0; i < k.size(); ++i)
    {
        for (std::size_t j = 0; j < theta.size(); ++j)
        {
            auto const m = PhotonMode::make(k[i], theta[j], 0, Polarization::linear1);
            double const q = std::abs(unruh_amplitude(s.traj, m, m).value);
            double const l = std::abs(larmor_coefficient(s.traj, m).value);
            EXPECT_LT(relative(map.quantum[map.index(i, j)], q), 1e-12);
            EXPECT_LT(std::abs(map.classical[map.index(i, j)] - l * l), 1e-12 * l * l + 1e-300);
        }
        // Blind spot: infinite ratio on the axis.
        EXPECT_TRUE(std::isinf(map.ratio(i, 0)));
        EXPECT_TRUE(std::isinf(map.ratio(i, theta.size() - 1)));
    }
    EXPECT_THROW(spectral_map(s.traj, std::vector<double>{-1.0}, theta, opts), InvalidArgument);
    EXPECT_THROW(spectral_map(s.traj, k, std::vector<double>{4.0}, opts), InvalidArgument);
}

TEST(Map, ThreadCountDoesNotChangeResults)
{
    auto const s = gaussian_setup(to_natural(0.3, Unit::attosecond), 2.0);
    auto const k = log_grid(300, 30000, 6);
    auto const theta = axis_refined_angles(9);
    MapOptions one, four;
    one.threads = 1;
    four.threads = 4;
    auto const a = spectral_map(s.traj, k, theta, one);
    auto const b = spectral_map(s.traj, k, theta, four);
    EXPECT_EQ(a.quantum, b.quantum);
    EXPECT_EQ(a.classical, b.classical);
}

TEST(Cone, ForwardCrossingIsBracketed)
{
    auto const s = gaussian_setup(to_natural(0.3, Unit::attosecond), 2.0);
    double const k = 2000;
    auto const cone = domination_angle(s.traj, k, ConeDirection::forward);
    ASSERT_TRUE(cone.found);
    EXPECT_LT(cone.residual, 1e-4);
    EXPECT_GT(amplitude_ratio(s.traj, k, 0.9 * cone.theta_max, ConeDirection::forward), 1.0);
    EXPECT_LT(amplitude_ratio(s.traj, k, 1.1 * cone.theta_max, ConeDirection::forward), 1.0);
    auto const back = domination_angle(s.traj, k, ConeDirection::backward);
    ASSERT_TRUE(back.found);
    EXPECT_GT(amplitude_ratio(s.traj, k, 0.9 * back.theta_max, ConeDirection::backward), 1.0);
    EXPECT_THROW(domination_angle(s.traj, -1.0), InvalidArgument);
}

TEST(Energy, LienardAndLarmorAgreeWhenSlow)
{
    auto const s = gaussian_setup(1e-3, 1.0005);
    EXPECT_LT(relative(lienard_energy(s.traj), larmor_energy(s.traj)), 1e-3);
    // Closed form: int a^2 dt for a = (q E0 / m) exp(-t^2/2 sigma^2) is a0^2 sigma sqrt(pi).
    double const a0 = K().q * s.pulse.peak_field / K().m;
    double const exact = K().q * K().q / (6 * kPi) * a0 * a0 * 1e-3 * std::sqrt(kPi);
    EXPECT_LT(relative(lienard_energy(s.traj), exact), 1e-9);
}

TEST(Probability, SinglePhotonMatchesLarmorNumberOnFullSphere)
{
    // Photon number from the mode sum against the Larmor energy divided by
    // the mean photon energy of the same spectrum.
    double const sigma = 1e-3;
    auto const s = gaussian_setup(sigma, 1.00125);  // beta_max = 0.05
    double const k_min = 0.01 / sigma, k_max = 8 / sigma;
    ProbabilityOptions opts;
    opts.rel_tol = 1e-4;
    auto const number = single_photon_probability(s.traj, kPi / 2, k_min, k_max, opts).value;
    auto const energy = mode_sum_energy(s.traj, k_max, opts).value;
    double const mean = energy / number;
    double const larmor_number = larmor_energy(s.traj) / mean;
    EXPECT_LT(relative(larmor_number, number), 0.05);
}

TEST(Probability, MonotoneInConeAndBandwidth)
{
    auto const s = gaussian_setup(to_natural(0.658, Unit::attosecond), 3.0);
    auto const cut = cutoff_wavenumber(s.traj, s.pulse).primary;
    ProbabilityOptions opts;
    opts.rel_tol = 1e-3;
    double const th[] = {0.05, 0.1, 0.2};
    double prev = 0;
    for (double t : th)
    {
        double const p = single_photon_probability(s.traj, t, 0.01 * cut, cut, opts).value;
        EXPECT_GT(p, prev);
        prev = p;
    }
    prev = 0;
    for (double km : {0.5 * cut, cut, 2 * cut})
    {
        double const p = single_photon_probability(s.traj, 0.1, 0.01 * cut, km, opts).value;
        EXPECT_GT(p, prev);
        prev = p;
    }
    auto const small = pair_probability(s.traj, 0.05, cut, opts);
    auto const wide = pair_probability(s.traj, 0.1, cut, opts);
    auto const far = pair_probability(s.traj, 0.1, 2 * cut, opts);
    EXPECT_GT(small.value, 0);
    EXPECT_GT(wide.value, small.value);
    EXPECT_GT(far.value, wide.value);
    // Sectors and channels partition the total.
    double sectors = 0, channels = 0;
    for (double v : wide.sectors)
        sectors += v;
    for (auto const& row : wide.channels)
        for (double v : row)
            channels += v;
    EXPECT_LT(relative(sectors, wide.value), 1e-6);
    EXPECT_LT(relative(channels, wide.value), 1e-6);
}

TEST(Probability, InvalidInputs)
{
    auto const s = gaussian_setup(1e-3, 1.5);
    EXPECT_THROW(pair_probability(s.traj, 0, 1e3), InvalidArgument);
    EXPECT_THROW(pair_probability(s.traj, 2.0, 1e3), InvalidArgument);
    EXPECT_THROW(pair_probability(s.traj, 0.1, -1), InvalidArgument);
    EXPECT_THROW(single_photon_probability(s.traj, 0.1, 0, 1e3), InvalidArgument);
    EXPECT_THROW(single_photon_probability(s.traj, 0.1, 2e3, 1e3), InvalidArgument);
    EXPECT_THROW(mode_sum_energy(s.traj, 0), InvalidArgument);
}

}  // namespace
}  // namespace unruh
