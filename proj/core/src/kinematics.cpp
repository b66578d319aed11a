// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include "unruh/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "unruh/errors.hpp"
#include "unruh/quadrature.hpp"
#include "unruh/units.hpp"

namespace unruh {
namespace {

double one_minus_beta(double u)
{
    double const gamma = lorentz_factor(u);
    return u > 0 ? 1 / (gamma * (gamma + u)) : (gamma - u) / gamma;
}

// Quintic Hermite interpolation on [0, 1]; slopes scaled by h, curvatures by h^2.
double hermite5(double x, double p0, double p1, double m0, double m1, double a0, double a1)
{
    double const x2 = x * x;
    double const x3 = x2 * x;
    double const x4 = x3 * x;
    double const x5 = x4 * x;
    double const h1 = 10 * x3 - 15 * x4 + 6 * x5;
    double const h2 = x - 6 * x3 + 8 * x4 - 3 * x5;
    double const h3 = -4 * x3 + 7 * x4 - 3 * x5;
    double const h4 = 0.5 * (x2 - 3 * x3 + 3 * x4 - x5);
    double const h5 = 0.5 * (x3 - 2 * x4 + x5);
    return p0 + (p1 - p0) * h1 + m0 * h2 + m1 * h3 + a0 * h4 + a1 * h5;
}

double hermite5_slope(double x, double p0, double p1, double m0, double m1, double a0, double a1)
{
    double const x2 = x * x;
    double const x3 = x2 * x;
    double const x4 = x3 * x;
    double const d1 = 30 * x2 - 60 * x3 + 30 * x4;
    double const d2 = 1 - 18 * x2 + 32 * x3 - 15 * x4;
    double const d3 = -12 * x2 + 28 * x3 - 15 * x4;
    double const d4 = 0.5 * (2 * x - 9 * x2 + 12 * x3 - 5 * x4);
    double const d5 = 0.5 * (3 * x2 - 8 * x3 + 5 * x4);
    return (p1 - p0) * d1 + m0 * d2 + m1 * d3 + a0 * d4 + a1 * d5;
}

// Integral of `f` over [a, b] with a fixed 8-point rule.
template <class F>
double gl8(F const& f, double a, double b)
{
    auto const& rule = gauss_legendre(8);
    double const mid = 0.5 * (a + b);
    double const half = 0.5 * (b - a);
    double sum = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

// Cumulative integral of the smooth_front shape on a table of cells; fine
// cells cover the ramps, the plateau is one exact cell.
struct RampTable
{
    PulseProfile pulse;
    std::vector<double> edges;
    std::vector<double> cumulative;

    double shape(double t) const { return field_at(pulse, t) / pulse.peak_field; }

    explicit RampTable(PulseProfile const& p) : pulse(p.with_peak(1))
    {
        double const b = p.center - 0.5 * p.length;
        double const e = p.center + 0.5 * p.length;
        double const d = p.rise_time;
        auto fine = [&](double lo, double hi) {
            auto const n = static_cast<std::size_t>(std::ceil((hi - lo) / (d / 64)));
            for (std::size_t i = 0; i < n; ++i)
                edges.push_back(lo + (hi - lo) * static_cast<double>(i) / n);
        };
        if (2 * d <= p.length)
        {
            fine(b, b + d);
            if (2 * d < p.length)
                edges.push_back(b + d);
            fine(e - d, e);
        }
        else
        {
            fine(b, e);
        }
        edges.push_back(e);
        cumulative.assign(edges.size(), 0.0);
        for (std::size_t i = 0; i + 1 < edges.size(); ++i)
            cumulative[i + 1] = cumulative[i] + gl8([this](double t) { return shape(t); }, edges[i], edges[i + 1]);
    }

    double integral_to(double t) const
    {
        if (t <= edges.front())
            return 0;
        if (t >= edges.back())
            return cumulative.back();
        auto const it = std::upper_bound(edges.begin(), edges.end(), t);
        auto const i = static_cast<std::size_t>(it - edges.begin()) - 1;
        return cumulative[i] + gl8([this](double x) { return shape(x); }, edges[i], t);
    }
};

VelocityLaw pulse_law(PulseProfile const& pulse, double u0, double t_begin)
{
    auto const& k = Constants::codata();
    double const q_over_m = k.q / k.m;
    double const accel = q_over_m * pulse.peak_field;
    double scale;
    switch (pulse.shape)
    {
    case PulseShape::smooth_front: scale = pulse.rise_time; break;
    default: scale = pulse.length; break;
    }
    if (accel > 0)
        scale = std::min(scale, 1 / accel);

    VelocityLaw law;
    law.time_scale = scale;
    law.kinks = field_kinks(pulse);
    law.acceleration = [pulse, q_over_m](double t) { return q_over_m * field_at(pulse, t); };
    if (pulse.shape == PulseShape::smooth_front && pulse.peak_field > 0)
    {
        auto table = std::make_shared<RampTable const>(pulse);
        double const start = table->integral_to(t_begin);
        double const amp = q_over_m * pulse.peak_field;
        law.proper_velocity = [table, start, amp, u0](double t) {
            return u0 + amp * (table->integral_to(t) - start);
        };
    }
    else
    {
        law.proper_velocity = [pulse, q_over_m, u0, t_begin](double t) {
            return u0 + q_over_m * field_time_integral(pulse, t_begin, std::max(t, t_begin));
        };
    }
    return law;
}

}  // namespace

Trajectory Trajectory::solve(PulseProfile const& pulse, double u0, TimeWindow window,
                             SamplingPolicy const& sampling)
{
    pulse.validate();
    if (!std::isfinite(u0))
        throw InvalidArgument("solve_trajectory: u0 must be finite");
    if (!(window.begin < window.end))
        throw ConfigurationError("solve_trajectory: empty time window");
    if (pulse.peak_field > 0)
    {
        auto const [lo, hi] = negligible_window(pulse, 1e-12);
        double const slack = 1e-9 * pulse.length;
        if (window.begin > lo + slack || window.end < hi - slack)
        {
            throw ConfigurationError(
                "solve_trajectory: time window does not cover the pulse (field not negligible at the ends)");
        }
    }
    Trajectory traj;
    traj.law_ = pulse_law(pulse, u0, window.begin);
    traj.build(window, sampling);
    return traj;
}

Trajectory Trajectory::from_law(VelocityLaw law, TimeWindow window, SamplingPolicy const& sampling)
{
    if (!law.proper_velocity || !law.acceleration)
        throw InvalidArgument("from_law: velocity law is incomplete");
    if (!(law.time_scale > 0))
        throw InvalidArgument("from_law: time scale must be positive");
    if (!(window.begin < window.end))
        throw ConfigurationError("from_law: empty time window");
    Trajectory traj;
    traj.law_ = std::move(law);
    traj.build(window, sampling);
    return traj;
}

Trajectory Trajectory::at_rest(TimeWindow window)
{
    VelocityLaw law;
    law.proper_velocity = [](double) { return 0.0; };
    law.acceleration = [](double) { return 0.0; };
    law.time_scale = window.end - window.begin;
    return from_law(std::move(law), window, SamplingPolicy{0, 16, 1u << 23});
}

void Trajectory::build(TimeWindow window, SamplingPolicy const& sampling)
{
    double const span = window.end - window.begin;
    double h_max = std::min(law_.time_scale / 64, span / static_cast<double>(std::max<std::size_t>(sampling.min_samples, 1)));
    if (sampling.max_wavenumber > 0)
        h_max = std::min(h_max, 2 * std::numbers::pi / (40 * sampling.max_wavenumber));

    std::vector<double> breaks{window.begin};
    std::vector<double> kinks = law_.kinks;
    std::sort(kinks.begin(), kinks.end());
    for (double k : kinks)
    {
        if (k > window.begin && k < window.end)
        {
            breaks.push_back(k);
            kinks_.push_back(k);
        }
    }
    breaks.push_back(window.end);

    std::size_t total = 1;
    for (std::size_t s = 0; s + 1 < breaks.size(); ++s)
        total += static_cast<std::size_t>(std::ceil((breaks[s + 1] - breaks[s]) / h_max));
    if (total > sampling.max_samples)
    {
        throw ConfigurationError("trajectory: " + std::to_string(total)
                                 + " samples exceed the sampling budget; reduce the wavenumber range");
    }

    t_.reserve(total);
    std::vector<bool> is_kink;
    is_kink.reserve(total);
    for (std::size_t s = 0; s + 1 < breaks.size(); ++s)
    {
        double const len = breaks[s + 1] - breaks[s];
        auto const n = static_cast<std::size_t>(std::ceil(len / h_max));
        for (std::size_t i = 0; i < n; ++i)
        {
            t_.push_back(breaks[s] + len * static_cast<double>(i) / n);
            is_kink.push_back(i == 0 && s > 0);
        }
    }
    t_.push_back(window.end);
    is_kink.push_back(false);

    std::size_t const n = t_.size();
    u_.resize(n);
    acc_left_.resize(n);
    acc_right_.resize(n);
    z_.assign(n, 0.0);
    s_.assign(n, 0.0);
    constexpr double inf = std::numeric_limits<double>::infinity();
    bool moving = false;
    for (std::size_t i = 0; i < n; ++i)
    {
        u_[i] = law_.proper_velocity(t_[i]);
        if (is_kink[i])
        {
            acc_left_[i] = law_.acceleration(std::nextafter(t_[i], -inf));
            acc_right_[i] = law_.acceleration(std::nextafter(t_[i], inf));
        }
        else
        {
            acc_left_[i] = acc_right_[i] = law_.acceleration(t_[i]);
        }
        moving = moving || u_[i] != 0 || acc_left_[i] != 0 || acc_right_[i] != 0;
    }
    static_ = !moving;

    beta_.resize(n);
    lag_rate_.resize(n);
    bdot_left_.resize(n);
    bdot_right_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        double const g = lorentz_factor(u_[i]);
        beta_[i] = u_[i] / g;
        lag_rate_[i] = one_minus_beta(u_[i]);
        bdot_left_[i] = acc_left_[i] / (g * g * g);
        bdot_right_[i] = acc_right_[i] / (g * g * g);
    }

    s_[0] = t_[0];
    auto const& law = law_;
    for (std::size_t i = 0; i + 1 < n; ++i)
    {
        z_[i + 1] = z_[i] + gl8([&law](double t) {
            double const u = law.proper_velocity(t);
            return u / lorentz_factor(u);
        }, t_[i], t_[i + 1]);
        s_[i + 1] = s_[i] + gl8([&law](double t) { return one_minus_beta(law.proper_velocity(t)); },
                                t_[i], t_[i + 1]);
    }

    gamma_max_ = 1;
    for (double u : u_)
        gamma_max_ = std::max(gamma_max_, lorentz_factor(u));
}

std::size_t Trajectory::interval(double t) const
{
    auto const it = std::upper_bound(t_.begin(), t_.end(), t);
    auto i = static_cast<std::size_t>(it - t_.begin());
    i = std::clamp<std::size_t>(i, 1, t_.size() - 1);
    return i - 1;
}

double Trajectory::proper_velocity(double t) const
{
    if (t <= t_.front())
        return u_.front();
    if (t >= t_.back())
        return u_.back();
    return law_.proper_velocity(t);
}

double Trajectory::acceleration(double t) const
{
    if (t < t_.front() || t > t_.back())
        return 0;
    return law_.acceleration(t);
}

double Trajectory::beta(double t) const
{
    double const u = proper_velocity(t);
    return u / lorentz_factor(u);
}

double Trajectory::gamma(double t) const { return lorentz_factor(proper_velocity(t)); }

double Trajectory::position(double t) const
{
    if (t <= t_.front())
        return z_.front() + (u_.front() / lorentz_factor(u_.front())) * (t - t_.front());
    if (t >= t_.back())
        return z_.back() + (u_.back() / lorentz_factor(u_.back())) * (t - t_.back());
    std::size_t const i = interval(t);
    double const h = t_[i + 1] - t_[i];
    return hermite5((t - t_[i]) / h, z_[i], z_[i + 1], beta_[i] * h, beta_[i + 1] * h,
                    bdot_right_[i] * h * h, bdot_left_[i + 1] * h * h);
}

double Trajectory::lag(double t) const
{
    if (t <= t_.front())
        return s_.front() + one_minus_beta(u_.front()) * (t - t_.front());
    if (t >= t_.back())
        return s_.back() + one_minus_beta(u_.back()) * (t - t_.back());
    std::size_t const i = interval(t);
    double const h = t_[i + 1] - t_[i];
    return hermite5((t - t_[i]) / h, s_[i], s_[i + 1], lag_rate_[i] * h, lag_rate_[i + 1] * h,
                    -bdot_right_[i] * h * h, -bdot_left_[i + 1] * h * h);
}

std::vector<TrajectorySample> Trajectory::samples() const
{
    std::vector<TrajectorySample> out;
    out.reserve(t_.size());
    for (std::size_t i = 0; i < t_.size(); ++i)
    {
        double const gamma = lorentz_factor(u_[i]);
        out.push_back({t_[i], z_[i], u_[i] / gamma, gamma});
    }
    return out;
}

DirectionWeight DirectionWeight::from_cosine(double c) { return {c, 1 - c, 1 + c}; }

DirectionWeight DirectionWeight::from_angle(double theta)
{
    double const s = std::sin(0.5 * theta);
    double const c = std::cos(0.5 * theta);
    return {std::cos(theta), 2 * s * s, 2 * c * c};
}

DirectionWeight DirectionWeight::pair(double k1, double theta1, double k2, double theta2)
{
    if (!(k1 > 0 && k2 > 0))
        throw InvalidArgument("DirectionWeight::pair: wavenumbers must be positive");
    auto const a = from_angle(theta1);
    auto const b = from_angle(theta2);
    double const sum = k1 + k2;
    return {(k1 * a.c + k2 * b.c) / sum, (k1 * a.one_minus + k2 * b.one_minus) / sum,
            (k1 * a.one_plus + k2 * b.one_plus) / sum};
}

double doppler_denominator(DirectionWeight const& w, double u)
{
    double const gamma = lorentz_factor(u);
    if (w.c > 0 && u > 0)
        return w.one_minus + w.c / (gamma * (gamma + u));
    if (w.c < 0 && u < 0)
        return w.one_plus - w.c / (gamma * (gamma - u));
    return 1 - w.c * u / gamma;
}

RetardedTimeMap::RetardedTimeMap(Trajectory const& traj, DirectionWeight weight)
    : traj_(&traj), w_(weight)
{
    if (!(std::abs(weight.c) <= 1) || weight.one_minus < 0 || weight.one_plus < 0)
        throw InvalidArgument("retarded_map: direction weight must lie in [-1, 1]");
}

double RetardedTimeMap::tau_node(std::size_t i) const
{
    auto const& tr = *traj_;
    if (w_.c >= 0)
        return w_.one_minus * tr.t_[i] + w_.c * tr.s_[i];
    return tr.t_[i] - w_.c * tr.z_[i];
}

double RetardedTimeMap::tau(double t) const
{
    if (w_.c >= 0)
        return w_.one_minus * t + w_.c * traj_->lag(t);
    return t - w_.c * traj_->position(t);
}

double RetardedTimeMap::dtau_dt(double t) const
{
    return doppler_denominator(w_, traj_->proper_velocity(t));
}

double RetardedTimeMap::time(double tau_value) const
{
    std::size_t hint = 0;
    return time(tau_value, hint);
}

std::size_t RetardedTimeMap::locate(double tau_value, std::size_t hint) const
{
    std::size_t const last = traj_->t_.size() - 1;
    std::size_t i = std::min(hint, last - 1);
    // Secant steps on the node index, then bisection.
    for (int probe = 0; probe < 4; ++probe)
    {
        double const lo = tau_node(i), hi = tau_node(i + 1);
        if (lo <= tau_value && tau_value < hi)
            return i;
        double const guess = std::floor((tau_value - lo) / (hi - lo));
        double const next = std::clamp(static_cast<double>(i) + guess, 0.0, static_cast<double>(last - 1));
        if (static_cast<std::size_t>(next) == i)
            break;
        i = static_cast<std::size_t>(next);
    }
    std::size_t lo = 0, hi = last;
    while (hi - lo > 1)
    {
        std::size_t const mid = lo + (hi - lo) / 2;
        if (tau_node(mid) <= tau_value)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

double RetardedTimeMap::time(double tau_value, std::size_t& hint) const
{
    auto const& tr = *traj_;
    std::size_t const n = tr.t_.size();
    double const tau_lo = tau_node(0);
    double const tau_hi = tau_node(n - 1);
    if (tau_value <= tau_lo)
        return tr.t_.front() + (tau_value - tau_lo) / doppler_denominator(w_, tr.u_.front());
    if (tau_value >= tau_hi)
        return tr.t_.back() + (tau_value - tau_hi) / doppler_denominator(w_, tr.u_.back());
    hint = locate(tau_value, hint);
    return local_time(hint, tau_value);
}

double RetardedTimeMap::local_time(std::size_t i, double target) const
{
    // Newton on the Hermite segment of tau(x), x in [0, 1].
    auto const& tr = *traj_;
    double const t0 = tr.t_[i];
    double const h = tr.t_[i + 1] - t0;
    bool const lagging = w_.c >= 0;
    // tau = (1 - c) t + c s(t) or tau = t + |c| z(t)
    double const lin = lagging ? w_.one_minus : 1.0;
    double const weight = std::abs(w_.c);
    double const sign = lagging ? -1.0 : 1.0;
    double const p0 = lagging ? tr.s_[i] : tr.z_[i];
    double const p1 = lagging ? tr.s_[i + 1] : tr.z_[i + 1];
    double const m0 = (lagging ? tr.lag_rate_[i] : tr.beta_[i]) * h;
    double const m1 = (lagging ? tr.lag_rate_[i + 1] : tr.beta_[i + 1]) * h;
    double const a0 = sign * tr.bdot_right_[i] * h * h;
    double const a1 = sign * tr.bdot_left_[i + 1] * h * h;
    auto local = [&](double x) { return lin * (t0 + h * x) + weight * hermite5(x, p0, p1, m0, m1, a0, a1); };
    auto slope = [&](double x) { return lin * h + weight * hermite5_slope(x, p0, p1, m0, m1, a0, a1); };

    double const ta = tau_node(i), tb = tau_node(i + 1);
    double lo = 0, hi = 1;
    double x = std::clamp((target - ta) / (tb - ta), 0.0, 1.0);
    for (int iter = 0; iter < 60; ++iter)
    {
        double const f = local(x) - target;
        if (f == 0)
            break;
        if (f > 0)
            hi = x;
        else
            lo = x;
        double const dx = f / slope(x);
        // A converged step may not move x at all; stop before it can
        // fall outside the open bracket and trigger bisection.
        if (std::abs(dx) <= 1e-15)
        {
            x = std::clamp(x - dx, lo, hi);
            break;
        }
        double next = x - dx;
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        x = next;
    }
    return t0 + h * x;
}

double peak_field_for_gamma(PulseProfile const& shape, double u0, double gamma_target)
{
    if (!(gamma_target >= 1))
        throw InvalidArgument("peak_field_for_gamma: target Lorentz factor must be >= 1");
    auto const& k = Constants::codata();
    double const u_final = std::sqrt((gamma_target - 1) * (gamma_target + 1));
    double const e0 = (u_final - u0) * k.m / (k.q * shape_integral(shape.with_peak(1)));
    if (e0 < 0)
        throw InvalidArgument("peak_field_for_gamma: target below the initial Lorentz factor");
    return e0;
}

CutoffEstimate cutoff_wavenumber(Trajectory const& traj, PulseProfile const& pulse)
{
    auto const& k = Constants::codata();
    double const g = traj.gamma_max();
    return {g * g / pulse.length, g * k.q * pulse.peak_field / k.m};
}

TimeWindow default_window(PulseProfile const& pulse)
{
    if (pulse.shape == PulseShape::gaussian)
    {
        auto const [lo, hi] = negligible_window(pulse, 1e-13);
        return {lo, hi};
    }
    double const pad = 0.25 * pulse.length;
    return {pulse.center - 0.5 * pulse.length - pad, pulse.center + 0.5 * pulse.length + pad};
}

}  // namespace unruh
