// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include "unruh/pulse.hpp"

#include <cmath>
#include <numbers>

#include "unruh/errors.hpp"
#include "unruh/quadrature.hpp"

namespace unruh {

std::string_view shape_name(PulseShape shape)
{
    switch (shape)
    {
    case PulseShape::gaussian: return "gaussian";
    case PulseShape::rectangular: return "rectangular";
    case PulseShape::smooth_front: return "smooth_front";
    }
    return "?";
}

PulseShape parse_shape(std::string_view name)
{
    for (auto s : {PulseShape::gaussian, PulseShape::rectangular, PulseShape::smooth_front})
    {
        if (shape_name(s) == name)
            return s;
    }
    throw InvalidArgument("unknown pulse shape '" + std::string(name) + "'");
}

PulseProfile PulseProfile::gaussian(double peak, double sigma, double center)
{
    PulseProfile p{PulseShape::gaussian, peak, sigma, 0, center};
    p.validate();
    return p;
}

PulseProfile PulseProfile::rectangular(double peak, double length, double center)
{
    PulseProfile p{PulseShape::rectangular, peak, length, 0, center};
    p.validate();
    return p;
}

PulseProfile PulseProfile::smooth_front(double peak, double length, double rise, double center)
{
    PulseProfile p{PulseShape::smooth_front, peak, length, rise, center};
    p.validate();
    return p;
}

void PulseProfile::validate() const
{
    if (!std::isfinite(peak_field) || peak_field < 0)
        throw InvalidArgument("pulse: peak field must be finite and >= 0");
    if (!std::isfinite(length) || length <= 0)
        throw InvalidArgument("pulse: length must be > 0");
    if (!std::isfinite(center))
        throw InvalidArgument("pulse: center must be finite");
    if (shape == PulseShape::smooth_front && !(rise_time > 0 && rise_time <= length))
        throw InvalidArgument("pulse: smooth_front needs 0 < rise_time <= length");
}

PulseProfile PulseProfile::with_peak(double peak) const
{
    PulseProfile p = *this;
    p.peak_field = peak;
    p.validate();
    return p;
}

double smooth_ramp(double x)
{
    if (x <= 0)
        return 0;
    if (x >= 1)
        return 1;
    // exp(-1/x) / (exp(-1/x) + exp(-1/(1-x)))
    double const arg = (1 - 2 * x) / (x * (1 - x));
    if (arg > 700)
        return 0;
    return 1 / (1 + std::exp(arg));
}

double field_at(PulseProfile const& p, double t)
{
    double const x = t - p.center;
    switch (p.shape)
    {
    case PulseShape::gaussian:
        return p.peak_field * std::exp(-0.5 * (x / p.length) * (x / p.length));
    case PulseShape::rectangular:
        return std::abs(x) <= 0.5 * p.length ? p.peak_field : 0.0;
    case PulseShape::smooth_front: {
        double const begin = -0.5 * p.length;
        double const end = 0.5 * p.length;
        return p.peak_field * smooth_ramp((x - begin) / p.rise_time)
               * smooth_ramp((end - x) / p.rise_time);
    }
    }
    return 0;
}

namespace {

// sigma * sqrt(pi/2) * (erf(b) - erf(a)) with a, b scaled by sqrt(2) sigma,
// using erfc in the tails to keep relative accuracy.
double gaussian_integral(double sigma, double x0, double x1)
{
    double const s = std::numbers::sqrt2 * sigma;
    double const a = x0 / s;
    double const b = x1 / s;
    double diff;
    if (a >= 0)
        diff = std::erfc(a) - std::erfc(b);
    else if (b <= 0)
        diff = std::erfc(-b) - std::erfc(-a);
    else
        diff = std::erf(b) - std::erf(a);
    return sigma * std::sqrt(std::numbers::pi / 2) * diff;
}

}  // namespace

double field_time_integral(PulseProfile const& p, double t0, double t1)
{
    if (t1 < t0)
        throw InvalidArgument("field_time_integral: t0 must not exceed t1");
    if (t0 == t1 || p.peak_field == 0)
        return 0;
    double const x0 = t0 - p.center;
    double const x1 = t1 - p.center;
    switch (p.shape)
    {
    case PulseShape::gaussian:
        return p.peak_field * gaussian_integral(p.length, x0, x1);
    case PulseShape::rectangular: {
        double const lo = std::max(x0, -0.5 * p.length);
        double const hi = std::min(x1, 0.5 * p.length);
        return hi > lo ? p.peak_field * (hi - lo) : 0.0;
    }
    case PulseShape::smooth_front: {
        double const begin = -0.5 * p.length;
        double const end = 0.5 * p.length;
        double const lo = std::max(x0, begin);
        double const hi = std::min(x1, end);
        if (hi <= lo)
            return 0;
        double const breaks[] = {begin + p.rise_time, end - p.rise_time};
        QuadratureTolerance tol;
        tol.abs = 1e-16 * p.length;
        tol.rel = 1e-13;
        tol.min_panels = 1;
        auto shape = [&p, begin, end](double x) {
            return smooth_ramp((x - begin) / p.rise_time) * smooth_ramp((end - x) / p.rise_time);
        };
        return p.peak_field * integrate(shape, lo, hi, tol, breaks).value;
    }
    }
    return 0;
}

double shape_integral(PulseProfile const& p)
{
    switch (p.shape)
    {
    case PulseShape::gaussian: return p.length * std::sqrt(2 * std::numbers::pi);
    case PulseShape::rectangular: return p.length;
    case PulseShape::smooth_front:
        // Each ramp contributes half its width when the ramps do not overlap.
        if (2 * p.rise_time <= p.length)
            return p.length - p.rise_time;
        return field_time_integral(p.with_peak(1), p.center - p.length, p.center + p.length);
    }
    return 0;
}

std::vector<double> field_kinks(PulseProfile const& p)
{
    if (p.shape == PulseShape::rectangular)
        return {p.center - 0.5 * p.length, p.center + 0.5 * p.length};
    return {};
}

std::pair<double, double> negligible_window(PulseProfile const& p, double threshold)
{
    if (p.shape == PulseShape::gaussian)
    {
        if (!(threshold > 0 && threshold < 1))
            throw InvalidArgument("negligible_window: threshold must be in (0, 1)");
        double const half = p.length * std::sqrt(-2 * std::log(threshold));
        return {p.center - half, p.center + half};
    }
    return {p.center - 0.5 * p.length, p.center + 0.5 * p.length};
}

}  // namespace unruh
