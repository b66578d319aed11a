// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
//! \file run_config.hpp
//! Typed run configuration. Every value is converted to natural units on
//! load; unknown sections or keys are rejected with the offending line.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "unruh/analysis.hpp"
#include "unruh/pulse.hpp"
#include "unruh/vec3.hpp"
#include "unruh_cli/config.hpp"

namespace unruh::cli {

struct PulseSection
{
    PulseShape shape{PulseShape::gaussian};
    //! Exactly one of peak_field / gamma_max is set.
    std::optional<double> peak_field;  // eV^2
    std::optional<double> gamma_max;
    double length{0};     // 1/eV (sigma for gaussian, full support otherwise)
    double rise_time{0};  // 1/eV, smooth_front only
    double center{0};
};

struct ElectronSection
{
    double u0{0};
};

struct TrajectorySection
{
    std::size_t samples{1000};
    //! Highest photon wavenumber the samples must resolve (eV).
    std::optional<double> max_wavenumber;
};

enum class Spacing
{
    linear,
    log,
};

enum class AngleSpacing
{
    uniform,
    axis_refined,
};

struct MapSection
{
    double k_min{0};  // eV
    double k_max{0};
    std::size_t k_points{0};
    Spacing k_spacing{Spacing::linear};
    std::size_t theta_points{0};
    AngleSpacing theta_spacing{AngleSpacing::uniform};
    Pairing pairing{Pairing::parallel};
    Polarization polarization{Polarization::linear1};
    Method method{Method::retarded};
    double phi{0};
    //! Static Gaussian coupling window (fixture mode): replaces the map by a
    //! numeric-vs-closed-form table over (k, k').
    std::optional<double> window;
};

struct ConeSection
{
    //! Reference wavenumbers; either absolute or as fractions of k_cut.
    std::vector<double> k_ref;
    std::vector<double> k_ref_fraction;
    bool forward{true};
    bool backward{true};
    std::size_t scan_points{64};
};

struct ProbabilitySection
{
    //! Cone half-angle; default sqrt(E0 / E_S) / gamma_max.
    std::optional<double> theta_max;
    //! Upper wavenumber; default k_max_fraction * k_cut.
    std::optional<double> k_max;
    double k_max_fraction{5};
    //! Infrared cut for single photons; default k_min_fraction * k_cut.
    std::optional<double> k_min;
    double k_min_fraction{0.01};
    bool pair{true};
    bool single{true};
};

enum class SweepParameter
{
    peak_field,
    gamma_max,
    length,
    u0,
};

struct SweepSection
{
    SweepParameter parameter{SweepParameter::peak_field};
    std::vector<double> values;  // natural units
};

struct SlopesSection
{
    double theta{0};
    double k_lo_fraction{0.02};
    double k_hi_fraction{0.2};
    std::size_t points{12};
};

struct VacuumSection
{
    Vec3 e_field{};  // eV^2
    Vec3 b_field{};
    double k{0};  // eV
    std::size_t theta_points{19};
    double phi{0};
};

struct AnalysisSection
{
    bool cone{false};
    bool probability{false};
    bool slopes{false};
    bool temperature{true};
    bool vacuum{false};
};

struct OutputSection
{
    std::string directory{"out"};
    bool csv{true};
    bool pgm{true};
};

struct ToleranceSection
{
    double amplitude_rel{1e-9};
    double amplitude_abs{0};
    double amplitude_norm_rel{1e-12};
    double probability_rel{1e-2};
    double cone_rel{1e-4};
};

struct RunConfig
{
    PulseSection pulse;
    ElectronSection electron;
    TrajectorySection trajectory;
    std::optional<MapSection> map;
    std::optional<ConeSection> cone;
    std::optional<ProbabilitySection> probability;
    std::optional<SweepSection> sweep;
    std::optional<SlopesSection> slopes;
    std::optional<VacuumSection> vacuum;
    AnalysisSection analysis;
    OutputSection output;
    ToleranceSection tolerance;
};

//! Validate and convert a parsed document. Throws ConfigError.
RunConfig load_run_config(ConfigDocument const& doc);
RunConfig load_run_config_text(std::string_view text);

//! Scales every tolerance by `factor` (> 0).
ToleranceSection scaled(ToleranceSection const& t, double factor);

std::string_view sweep_parameter_name(SweepParameter p);

}  // namespace unruh::cli
