// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include "unruh/radiation.hpp"

#include <cmath>
#include <numbers>

#include "unruh/errors.hpp"
#include "unruh/units.hpp"

namespace unruh {
namespace {

constexpr complex kI{0, 1};

// beta - c without cancellation when both are close to +-1.
double beta_minus_c(DirectionWeight const& w, double u)
{
    double const gamma = lorentz_factor(u);
    if (w.c > 0 && u > 0)
        return w.one_minus - 1 / (gamma * (gamma + u));
    if (w.c < 0 && u < 0)
        return 1 / (gamma * (gamma - u)) - w.one_plus;
    return u / gamma - w.c;
}

// Range of lab time where the coupling window is not negligible (1e-18).
std::pair<double, double> window_range(CouplingWindow const& cw)
{
    double const half = cw.sigma * std::sqrt(2 * std::log(1e18));
    return {cw.center - half, cw.center + half};
}

double window_value(CouplingWindow const& cw, double t)
{
    double const x = (t - cw.center) / cw.sigma;
    return std::exp(-0.5 * x * x);
}

enum class Source
{
    doppler,   // sqrt(1 - beta^2)
    velocity,  // beta
};

double source_value(Source s, double u)
{
    double const gamma = lorentz_factor(u);
    return s == Source::doppler ? 1 / gamma : u / gamma;
}

// d/dtau of the retarded-time envelope (D or L) at lab time t.
double source_rate(Source s, Trajectory const& traj, DirectionWeight const& w, double t)
{
    double const u = traj.proper_velocity(t);
    double const du = traj.acceleration(t);
    if (du == 0)
        return 0;
    double const gamma = lorentz_factor(u);
    double const dd = doppler_denominator(w, u);
    double const dd3 = dd * dd * dd;
    if (s == Source::doppler)
        return -du * beta_minus_c(w, u) / (gamma * gamma * dd3);
    return du / (gamma * gamma * gamma * dd3);
}

Transform integrate_or_best(OscillatoryIntegralSpec const& spec, AmplitudeOptions const& opts)
{
    try
    {
        auto const r = fourier_integral(spec);
        return {r.value, r.error, true};
    }
    catch (ConvergenceError const& e)
    {
        if (opts.throw_on_failure)
            throw;
        return {e.best().value, e.best().error, false};
    }
}

Transform check_frequency(double omega)
{
    if (!(omega > 0) || !std::isfinite(omega))
        throw InvalidArgument("radiation: photon wavenumbers must be positive and finite");
    return {};
}

Transform lab_time_transform(Source s, Trajectory const& traj, DirectionWeight const& w,
                             double omega, AmplitudeOptions const& opts)
{
    RetardedTimeMap const map(traj, w);
    OscillatoryIntegralSpec spec;
    spec.omega = omega;
    spec.tol = opts.tol;
    if (opts.window)
    {
        auto const cw = *opts.window;
        std::tie(spec.lower, spec.upper) = window_range(cw);
        spec.envelope = [&traj, &w, s, cw, omega](double t) {
            return window_value(cw, t) * source_value(s, traj.proper_velocity(t))
                   * std::polar(1.0, -omega * w.c * traj.position(t));
        };
        return integrate_or_best(spec, opts);
    }

    spec.lower = traj.t_begin();
    spec.upper = traj.t_end();
    spec.discontinuities.assign(traj.kinks().begin(), traj.kinks().end());
    spec.envelope = [&traj, &w, s, omega](double t) {
        return source_value(s, traj.proper_velocity(t)) * std::polar(1.0, -omega * w.c * traj.position(t));
    };
    auto const r = integrate_or_best(spec, opts);

    // Constant-velocity tails with adiabatic switching.
    double const ta = traj.t_begin();
    double const tb = traj.t_end();
    complex const before = source_value(s, traj.u_begin()) * std::polar(1.0, omega * map.tau(ta))
                           / (kI * omega * doppler_denominator(w, traj.u_begin()));
    complex const after = -source_value(s, traj.u_end()) * std::polar(1.0, omega * map.tau(tb))
                          / (kI * omega * doppler_denominator(w, traj.u_end()));
    return {r.value + before + after, r.error, r.converged};
}

Transform retarded_transform(Source s, Trajectory const& traj, DirectionWeight const& w,
                             double omega, AmplitudeOptions const& opts)
{
    RetardedTimeMap const map(traj, w);
    OscillatoryIntegralSpec spec;
    spec.omega = omega;
    spec.tol = opts.tol;
    if (opts.window)
    {
        auto const cw = *opts.window;
        auto const [t0, t1] = window_range(cw);
        spec.lower = map.tau(t0);
        spec.upper = map.tau(t1);
        spec.envelope = [&traj, &map, &w, s, cw, hint = std::size_t{0}](double tau) mutable {
            double const t = map.time(tau, hint);
            double const u = traj.proper_velocity(t);
            return complex(window_value(cw, t) * source_value(s, u) / doppler_denominator(w, u));
        };
        return integrate_or_best(spec, opts);
    }

    spec.lower = map.tau(traj.t_begin());
    spec.upper = map.tau(traj.t_end());
    for (double t : traj.kinks())
        spec.discontinuities.push_back(map.tau(t));
    spec.envelope = [&traj, &map, &w, s, hint = std::size_t{0}](double tau) mutable {
        return complex(source_rate(s, traj, w, map.time(tau, hint)));
    };
    auto const r = integrate_or_best(spec, opts);
    // int E e^{i w tau} = (i / w) int E' e^{i w tau}
    complex const factor = kI / omega;
    return {factor * r.value, r.error / omega, r.converged};
}

}  // namespace

std::string_view polarization_name(Polarization p)
{
    switch (p)
    {
    case Polarization::linear1: return "linear1";
    case Polarization::linear2: return "linear2";
    case Polarization::plus: return "plus";
    case Polarization::minus: return "minus";
    case Polarization::custom: return "custom";
    }
    return "?";
}

std::string_view method_name(Method m)
{
    return m == Method::time_domain ? "time_domain" : "retarded";
}

PolarizationBasis polarization_basis(double theta, double phi)
{
    double const ct = std::cos(theta), st = polar_sine(theta);
    double const cp = std::cos(phi), sp = std::sin(phi);
    return {{ct * cp, ct * sp, -st}, {-sp, cp, 0}};
}

PolarizationBasis polarization_basis(Vec3 const& khat)
{
    double const len = norm(khat);
    if (!(std::abs(len - 1) <= 1e-9))
        throw InvalidArgument("polarization_basis: direction must be a unit vector");
    double const rho = std::hypot(khat.x, khat.y);
    if (rho == 0)
        return khat.z > 0 ? PolarizationBasis{{1, 0, 0}, {0, 1, 0}} : PolarizationBasis{{-1, 0, 0}, {0, 1, 0}};
    double const cp = khat.x / rho, sp = khat.y / rho;
    double const ct = khat.z / len, st = rho / len;
    return {{ct * cp, ct * sp, -st}, {-sp, cp, 0}};
}

PhotonMode PhotonMode::make(double k, double theta, double phi, Polarization label)
{
    if (!(k > 0) || !std::isfinite(k))
        throw InvalidArgument("PhotonMode: k must be positive and finite");
    auto const b = polarization_basis(theta, phi);
    CVec3 const e1(b.e1), e2(b.e2);
    double const r = std::numbers::sqrt2 / 2;
    CVec3 e;
    switch (label)
    {
    case Polarization::linear1: e = e1; break;
    case Polarization::linear2: e = e2; break;
    case Polarization::plus: e = (e1 + e2 * kI) * r; break;
    case Polarization::minus: e = (e1 - e2 * kI) * r; break;
    case Polarization::custom:
        throw InvalidArgument("PhotonMode::make: use with_vector for custom polarizations");
    }
    return {k, theta, phi, label, e};
}

PhotonMode PhotonMode::with_vector(double k, double theta, double phi, CVec3 const& e)
{
    if (!(k > 0) || !std::isfinite(k))
        throw InvalidArgument("PhotonMode: k must be positive and finite");
    return {k, theta, phi, Polarization::custom, e};
}

Vec3 PhotonMode::direction() const
{
    double const st = polar_sine(theta);
    return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

Transform doppler_transform(Trajectory const& traj, DirectionWeight const& w, double omega,
                            Method method, AmplitudeOptions const& opts)
{
    check_frequency(omega);
    if (traj.is_static() && !opts.window)
        return {};
    return method == Method::time_domain ? lab_time_transform(Source::doppler, traj, w, omega, opts)
                                         : retarded_transform(Source::doppler, traj, w, omega, opts);
}

Transform velocity_transform(Trajectory const& traj, DirectionWeight const& w, double k,
                             Method method, AmplitudeOptions const& opts)
{
    check_frequency(k);
    if (traj.is_static())
        return {};
    return method == Method::time_domain ? lab_time_transform(Source::velocity, traj, w, k, opts)
                                         : retarded_transform(Source::velocity, traj, w, k, opts);
}

complex pair_prefactor(PhotonMode const& mode1, PhotonMode const& mode2)
{
    auto const& c = Constants::codata();
    return bilinear(mode1.e, mode2.e) * c.g / (2.0 * kI * std::sqrt(mode1.k * mode2.k));
}

TwoPhotonAmplitude unruh_amplitude(Trajectory const& traj, PhotonMode const& mode1,
                                   PhotonMode const& mode2, Method method, AmplitudeOptions const& opts)
{
    TwoPhotonAmplitude a{mode1, mode2, {}, method, 0};
    complex const pre = pair_prefactor(mode1, mode2);
    if (pre == complex{})
        return a;
    auto const w = DirectionWeight::pair(mode1.k, mode1.theta, mode2.k, mode2.theta);
    auto const G = doppler_transform(traj, w, mode1.k + mode2.k, method, opts);
    a.value = pre * G.value;
    a.error = std::abs(pre) * G.error;
    a.converged = G.converged;
    return a;
}

LarmorCoefficient larmor_coefficient(Trajectory const& traj, PhotonMode const& mode, Method method,
                                     AmplitudeOptions const& opts)
{
    LarmorCoefficient a{mode, {}, method, 0};
    auto const& c = Constants::codata();
    // e . (beta axis) with the axis along z.
    complex const pre = c.q * mode.e.z / std::sqrt(2 * mode.k);
    if (pre == complex{})
        return a;
    auto const F = velocity_transform(traj, DirectionWeight::from_angle(mode.theta), mode.k, method, opts);
    a.value = pre * F.value;
    a.error = std::abs(pre) * F.error;
    a.converged = F.converged;
    return a;
}

PairMatrix polarization_pair_matrix(Trajectory const& traj, PhotonMode const& photon1,
                                    PhotonMode const& photon2, BasisKind basis, Method method,
                                    AmplitudeOptions const& opts)
{
    auto const w = DirectionWeight::pair(photon1.k, photon1.theta, photon2.k, photon2.theta);
    auto const G = doppler_transform(traj, w, photon1.k + photon2.k, method, opts);
    auto const labels = basis == BasisKind::linear
                            ? std::array{Polarization::linear1, Polarization::linear2}
                            : std::array{Polarization::plus, Polarization::minus};
    PairMatrix out;
    out.basis = basis;
    out.converged = G.converged;
    for (int a = 0; a < 2; ++a)
    {
        for (int b = 0; b < 2; ++b)
        {
            auto const m1 = PhotonMode::make(photon1.k, photon1.theta, photon1.phi, labels[a]);
            auto const m2 = PhotonMode::make(photon2.k, photon2.theta, photon2.phi, labels[b]);
            complex const pre = pair_prefactor(m1, m2);
            out.m[a][b] = pre * G.value;
            out.error = std::max(out.error, std::abs(pre) * G.error);
        }
    }
    return out;
}

}  // namespace unruh
