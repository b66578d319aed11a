// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
//! \file pulse.hpp
//! Uni-directional electric field pulses E(t) along the acceleration axis.
#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace unruh {

enum class PulseShape
{
    gaussian,
    rectangular,
    smooth_front,
};

std::string_view shape_name(PulseShape shape);
//! Throws InvalidArgument for unknown names.
PulseShape parse_shape(std::string_view name);

//! Field pulse, all quantities in natural units.
//!
//! `length` is the standard deviation for gaussian pulses and the full
//! support for rectangular and smooth_front pulses. `rise_time` is only used
//! by smooth_front.
struct PulseProfile
{
    PulseShape shape{PulseShape::gaussian};
    double peak_field{0};
    double length{1};
    double rise_time{0};
    double center{0};

    static PulseProfile gaussian(double peak, double sigma, double center = 0);
    static PulseProfile rectangular(double peak, double length, double center = 0);
    static PulseProfile smooth_front(double peak, double length, double rise, double center = 0);

    //! Throws InvalidArgument when the invariants do not hold.
    void validate() const;

    //! Same pulse with another peak field.
    PulseProfile with_peak(double peak) const;
};

//! C-infinity ramp: 0 for x <= 0, 1 for x >= 1.
double smooth_ramp(double x);

double field_at(PulseProfile const& p, double t);

//! Integral of E over [t0, t1]; closed form except for smooth_front.
double field_time_integral(PulseProfile const& p, double t0, double t1);

//! Integral of E/E0 over the whole real line.
double shape_integral(PulseProfile const& p);

//! Points where E(t) is not smooth (edges of the rectangular pulse).
std::vector<double> field_kinks(PulseProfile const& p);

//! Interval outside of which |E| < threshold * E0 (exactly zero outside
//! the support for compact shapes).
std::pair<double, double> negligible_window(PulseProfile const& p, double threshold = 1e-12);

}  // namespace unruh
