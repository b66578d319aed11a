// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
//! \file analysis.hpp
//! Observables built from the amplitudes: quantum/classical maps over
//! (k, theta), the angle where the pair amplitude stops dominating,
//! volume-free emission probabilities, spectral power-law fits, radiated
//! energy and the Unruh temperature.
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "unruh/radiation.hpp"

namespace unruh {

//! How the second photon of a pair is placed relative to the first (k' = k).
enum class Pairing
{
    parallel,      //!< same direction
    back_to_back,  //!< opposite direction
};

std::string_view pairing_name(Pairing p);
Pairing parse_pairing(std::string_view name);
Polarization parse_polarization(std::string_view name);

struct MapOptions
{
    Pairing pairing{Pairing::parallel};
    //! Used for both photons (and for the classical coefficients).
    Polarization polarization{Polarization::linear1};
    Method method{Method::retarded};
    AmplitudeOptions amplitude{};
    double phi{0};
    unsigned threads{0};
};

//! Grid over (k, theta); layers are stored row-major with k as the row.
struct SpectralMap
{
    std::vector<double> k;
    std::vector<double> theta;
    std::vector<double> quantum;    //!< |V A(k, k')|
    std::vector<double> classical;  //!< |sqrt(V) alpha(k)| |sqrt(V) alpha(k')|
    std::vector<double> quantum_error;
    std::vector<double> classical_error;
    std::vector<unsigned char> failed;  //!< tolerance not reached in the cell
    Pairing pairing{Pairing::parallel};
    Polarization polarization{Polarization::linear1};
    Method method{Method::retarded};
    double gamma_max{1};

    std::size_t index(std::size_t ik, std::size_t itheta) const { return ik * theta.size() + itheta; }
    //! quantum / classical (infinite on the blind spot, NaN if both vanish).
    double ratio(std::size_t ik, std::size_t itheta) const;
    std::size_t failed_count() const;
};

SpectralMap spectral_map(Trajectory const& traj, std::span<double const> k_grid,
                         std::span<double const> theta_grid, MapOptions const& opts = {});

std::vector<double> linear_grid(double lo, double hi, std::size_t n);
std::vector<double> log_grid(double lo, double hi, std::size_t n);
//! n angles on [0, pi] clustered at both poles: (pi/2)(1 - cos(pi j/(n-1))).
std::vector<double> axis_refined_angles(std::size_t n);

enum class ConeDirection
{
    forward,
    backward,
};

std::string_view direction_name(ConeDirection d);

//! Quantum / classical magnitude for a parallel pair at angle `angle`
//! measured from the forward or backward axis.
double amplitude_ratio(Trajectory const& traj, double k, double angle, ConeDirection dir,
                       MapOptions const& opts = {});

struct ConeOptions
{
    std::size_t scan_points{64};
    double angle_min{1e-6};
    double rel_tol{1e-4};
    MapOptions map{};
};

struct DominationCone
{
    double k_ref{0};
    double theta_max{0};  //!< measured from the cone axis
    ConeDirection direction{ConeDirection::forward};
    double residual{0};  //!< bracket width relative to theta_max
    bool found{false};
    bool monotone{false};  //!< ratio > 1 before and < 1 after on every scan point
    std::vector<std::pair<double, double>> ratio_curve;  //!< (angle, ratio)
};

//! Crossing of |V A| and |sqrt(V) alpha|^2 at k = k' along a ray;
//! returns found == false (with the scanned curve) when there is none.
DominationCone domination_angle(Trajectory const& traj, double k_ref,
                                ConeDirection dir = ConeDirection::forward, ConeOptions const& opts = {});

struct PowerLawFit
{
    double exponent{0};
    double prefactor{0};
    double rms_residual{0};  //!< in natural-log units
    std::size_t points{0};

    double operator()(double x) const;
};

//! Least-squares fit of log y = log a + p log x. Throws InvalidArgument if
//! fewer than two distinct abscissae or non-positive data.
PowerLawFit power_law_fit(std::span<double const> x, std::span<double const> y);

struct SpectralSlope
{
    std::vector<double> k;
    std::vector<double> quantum;  //!< |V A| at k = k', parallel pair
    std::vector<double> larmor;   //!< |sqrt(V) alpha|
    PowerLawFit quantum_fit;
    PowerLawFit larmor_fit;
};

//! Samples n log-spaced k in [k_lo, k_hi] on a fixed ray and fits both laws.
SpectralSlope spectral_slope(Trajectory const& traj, double theta, double k_lo, double k_hi,
                             std::size_t n, MapOptions const& opts = {});

//! Fourier factor |G| of the pair amplitude at k = k' (frequency 2k) along
//! a ray, fitted against the pair frequency 2k.
PowerLawFit pair_fourier_slope(Trajectory const& traj, double theta, double k_lo, double k_hi,
                               std::size_t n, MapOptions const& opts = {});

//! a / (2 pi) in natural units (energy).
double unruh_temperature(double proper_acceleration);
double unruh_temperature_kelvin(double proper_acceleration);

//! (q^2 / 6 pi) int (d beta / dt)^2 dt, the non-relativistic Larmor energy.
double larmor_energy(Trajectory const& traj);
//! (q^2 / 6 pi) int (d u / dt)^2 dt, exact for motion along a line.
double lienard_energy(Trajectory const& traj);

struct ProbabilityOptions
{
    double rel_tol{1e-2};
    unsigned threads{0};
    AmplitudeOptions amplitude{};
};

struct PairProbability
{
    double value{0};
    double error{0};
    double theta_max{0};
    double k_max{0};
    //! Linear polarization channels [lambda][lambda'].
    std::array<std::array<double, 2>, 2> channels{};
    //! Photon cones: forward-forward, backward-backward, forward-backward, backward-forward.
    std::array<double, 4> sectors{};
};

//! Probability to emit a pair with both photons inside the forward or
//! backward cone of half-angle theta_max and k, k' <= k_max.
PairProbability pair_probability(Trajectory const& traj, double theta_max, double k_max,
                                 ProbabilityOptions const& opts = {});

struct SpectrumIntegral
{
    double value{0};
    double error{0};
};

//! Mean number of classical photons in both cones with k_min <= k <= k_max.
//! k_min = 0 is only allowed when the velocity returns to its initial value
//! (otherwise the number diverges logarithmically).
SpectrumIntegral single_photon_probability(Trajectory const& traj, double theta_max, double k_min,
                                           double k_max, ProbabilityOptions const& opts = {});

//! Energy of the classical radiation from the mode sum over all directions
//! and k <= k_max.
SpectrumIntegral mode_sum_energy(Trajectory const& traj, double k_max, ProbabilityOptions const& opts = {});

}  // namespace unruh
