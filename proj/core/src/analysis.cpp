// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include "unruh/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "unruh/errors.hpp"
#include "unruh/parallel.hpp"
#include "unruh/units.hpp"

namespace unruh {
namespace {

void require_grid(std::span<double const> grid, char const* what)
{
    if (grid.empty())
        throw InvalidArgument(std::string(what) + " grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        if (!std::isfinite(grid[i]))
            throw InvalidArgument(std::string(what) + " grid has a non-finite value");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw InvalidArgument(std::string(what) + " grid must be strictly increasing");
    }
}

PhotonMode partner(PhotonMode const& m, Pairing pairing)
{
    if (pairing == Pairing::parallel)
        return m;
    return PhotonMode::make(m.k, std::numbers::pi - m.theta, m.phi + std::numbers::pi, m.label);
}

struct Cell
{
    double quantum;
    double classical;
    double quantum_error;
    double classical_error;
    bool failed;
};

Cell evaluate_cell(Trajectory const& traj, double k, double theta, MapOptions const& opts)
{
    AmplitudeOptions amp = opts.amplitude;
    amp.throw_on_failure = false;
    auto const m1 = PhotonMode::make(k, theta, opts.phi, opts.polarization);
    auto const m2 = partner(m1, opts.pairing);
    auto const a = unruh_amplitude(traj, m1, m2, opts.method, amp);
    auto const l1 = larmor_coefficient(traj, m1, opts.method, amp);
    auto const l2 = opts.pairing == Pairing::parallel ? l1 : larmor_coefficient(traj, m2, opts.method, amp);
    double const c1 = std::abs(l1.value), c2 = std::abs(l2.value);
    return {std::abs(a.value), c1 * c2, a.error, l1.error * c2 + c1 * l2.error,
            !(a.converged && l1.converged && l2.converged)};
}

}  // namespace

std::string_view pairing_name(Pairing p) { return p == Pairing::parallel ? "parallel" : "back_to_back"; }

Pairing parse_pairing(std::string_view name)
{
    if (name == "parallel")
        return Pairing::parallel;
    if (name == "back_to_back")
        return Pairing::back_to_back;
    throw InvalidArgument("unknown pairing '" + std::string(name) + "'");
}

Polarization parse_polarization(std::string_view name)
{
    for (auto p : {Polarization::linear1, Polarization::linear2, Polarization::plus, Polarization::minus})
    {
        if (polarization_name(p) == name)
            return p;
    }
    throw InvalidArgument("unknown polarization '" + std::string(name) + "'");
}

std::string_view direction_name(ConeDirection d) { return d == ConeDirection::forward ? "forward" : "backward"; }

double SpectralMap::ratio(std::size_t ik, std::size_t itheta) const
{
    std::size_t const i = index(ik, itheta);
    if (classical[i] == 0)
        return quantum[i] > 0 ? std::numeric_limits<double>::infinity() : std::numeric_limits<double>::quiet_NaN();
    return quantum[i] / classical[i];
}

std::size_t SpectralMap::failed_count() const
{
    std::size_t n = 0;
    for (auto f : failed)
        n += f ? 1 : 0;
    return n;
}

SpectralMap spectral_map(Trajectory const& traj, std::span<double const> k_grid,
                         std::span<double const> theta_grid, MapOptions const& opts)
{
    require_grid(k_grid, "wavenumber");
    require_grid(theta_grid, "angle");
    if (!(k_grid.front() > 0))
        throw InvalidArgument("wavenumber grid must be positive");
    if (theta_grid.front() < 0 || theta_grid.back() > std::numbers::pi)
        throw InvalidArgument("angle grid must lie in [0, pi]");

    SpectralMap map;
    map.k.assign(k_grid.begin(), k_grid.end());
    map.theta.assign(theta_grid.begin(), theta_grid.end());
    std::size_t const n = map.k.size() * map.theta.size();
    map.quantum.resize(n);
    map.classical.resize(n);
    map.quantum_error.resize(n);
    map.classical_error.resize(n);
    map.failed.resize(n);
    map.pairing = opts.pairing;
    map.polarization = opts.polarization;
    map.method = opts.method;
    map.gamma_max = traj.gamma_max();

    parallel_for(n, opts.threads, [&](std::size_t idx) {
        std::size_t const ik = idx / map.theta.size();
        std::size_t const it = idx % map.theta.size();
        auto const cell = evaluate_cell(traj, map.k[ik], map.theta[it], opts);
        map.quantum[idx] = cell.quantum;
        map.classical[idx] = cell.classical;
        map.quantum_error[idx] = cell.quantum_error;
        map.classical_error[idx] = cell.classical_error;
        map.failed[idx] = cell.failed ? 1 : 0;
    });
    return map;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n)
{
    if (n == 0)
        throw InvalidArgument("grid needs at least one point");
    if (n == 1)
        return {lo};
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    g.back() = hi;
    return g;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n)
{
    if (!(lo > 0 && hi > 0))
        throw InvalidArgument("logarithmic grid needs positive bounds");
    auto g = linear_grid(std::log(lo), std::log(hi), n);
    for (auto& x : g)
        x = std::exp(x);
    g.front() = lo;
    if (n > 1)
        g.back() = hi;
    return g;
}

std::vector<double> axis_refined_angles(std::size_t n)
{
    if (n < 2)
        throw InvalidArgument("axis_refined_angles needs at least two points");
    std::vector<double> g(n);
    for (std::size_t j = 0; j < n; ++j)
    {
        double const s = std::sin(0.5 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n - 1));
        g[j] = std::numbers::pi * s * s;  // (pi/2)(1 - cos(pi j/(n-1)))
    }
    g.front() = 0;
    g.back() = std::numbers::pi;
    return g;
}

double amplitude_ratio(Trajectory const& traj, double k, double angle, ConeDirection dir, MapOptions const& opts)
{
    MapOptions o = opts;
    o.pairing = Pairing::parallel;
    double const theta = dir == ConeDirection::forward ? angle : std::numbers::pi - angle;
    auto const cell = evaluate_cell(traj, k, theta, o);
    if (cell.classical == 0)
        return cell.quantum > 0 ? std::numeric_limits<double>::infinity() : std::numeric_limits<double>::quiet_NaN();
    return cell.quantum / cell.classical;
}

DominationCone domination_angle(Trajectory const& traj, double k_ref, ConeDirection dir, ConeOptions const& opts)
{
    if (!(k_ref > 0))
        throw InvalidArgument("domination_angle: k_ref must be positive");
    if (opts.scan_points < 2 || !(opts.angle_min > 0 && opts.angle_min < std::numbers::pi / 2))
        throw InvalidArgument("domination_angle: invalid scan settings");

    DominationCone cone;
    cone.k_ref = k_ref;
    cone.direction = dir;

    auto const angles = log_grid(opts.angle_min, std::numbers::pi / 2, opts.scan_points);
    std::vector<double> ratios(angles.size());
    parallel_for(angles.size(), opts.map.threads, [&](std::size_t i) {
        MapOptions single = opts.map;
        single.threads = 1;
        ratios[i] = amplitude_ratio(traj, k_ref, angles[i], dir, single);
    });
    for (std::size_t i = 0; i < angles.size(); ++i)
        cone.ratio_curve.emplace_back(angles[i], ratios[i]);

    std::size_t cross = angles.size();
    for (std::size_t i = 0; i < angles.size(); ++i)
    {
        if (!(ratios[i] > 1))
        {
            cross = i;
            break;
        }
    }
    if (cross == 0 || cross == angles.size())
        return cone;

    double lo = angles[cross - 1], hi = angles[cross];
    while ((hi - lo) > opts.rel_tol * hi)
    {
        double const mid = std::sqrt(lo * hi);
        if (amplitude_ratio(traj, k_ref, mid, dir, opts.map) > 1)
            lo = mid;
        else
            hi = mid;
    }
    cone.found = true;
    cone.theta_max = 0.5 * (lo + hi);
    cone.residual = (hi - lo) / cone.theta_max;
    cone.monotone = true;
    for (std::size_t i = cross; i < angles.size(); ++i)
        cone.monotone = cone.monotone && !(ratios[i] > 1);
    return cone;
}

double PowerLawFit::operator()(double x) const { return prefactor * std::pow(x, exponent); }

PowerLawFit power_law_fit(std::span<double const> x, std::span<double const> y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw InvalidArgument("power_law_fit: need at least two matching points");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        if (!(x[i] > 0 && y[i] > 0) || !std::isfinite(x[i]) || !std::isfinite(y[i]))
            throw InvalidArgument("power_law_fit: data must be positive and finite");
        sx += std::log(x[i]);
        sy += std::log(y[i]);
    }
    double const n = static_cast<double>(x.size());
    double const mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        double const dx = std::log(x[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(y[i]) - my);
    }
    if (!(sxx > 1e-24))
        throw InvalidArgument("power_law_fit: abscissae are not distinct (ill-conditioned fit)");
    PowerLawFit fit;
    fit.exponent = sxy / sxx;
    double const intercept = my - fit.exponent * mx;
    fit.prefactor = std::exp(intercept);
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        double const r = std::log(y[i]) - intercept - fit.exponent * std::log(x[i]);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    fit.points = x.size();
    return fit;
}

SpectralSlope spectral_slope(Trajectory const& traj, double theta, double k_lo, double k_hi, std::size_t n,
                             MapOptions const& opts)
{
    SpectralSlope out;
    out.k = log_grid(k_lo, k_hi, n);
    out.quantum.resize(n);
    out.larmor.resize(n);
    parallel_for(n, opts.threads, [&](std::size_t i) {
        auto const m = PhotonMode::make(out.k[i], theta, opts.phi, opts.polarization);
        out.quantum[i] = std::abs(unruh_amplitude(traj, m, m, opts.method, opts.amplitude).value);
        out.larmor[i] = std::abs(larmor_coefficient(traj, m, opts.method, opts.amplitude).value);
    });
    out.quantum_fit = power_law_fit(out.k, out.quantum);
    out.larmor_fit = power_law_fit(out.k, out.larmor);
    return out;
}

PowerLawFit pair_fourier_slope(Trajectory const& traj, double theta, double k_lo, double k_hi, std::size_t n,
                               MapOptions const& opts)
{
    auto const k = log_grid(k_lo, k_hi, n);
    std::vector<double> omega(n), mag(n);
    auto const w = DirectionWeight::from_angle(theta);
    parallel_for(n, opts.threads, [&](std::size_t i) {
        omega[i] = 2 * k[i];
        mag[i] = std::abs(doppler_transform(traj, w, omega[i], opts.method, opts.amplitude).value);
    });
    return power_law_fit(omega, mag);
}

double unruh_temperature(double proper_acceleration)
{
    if (!(proper_acceleration >= 0))
        throw InvalidArgument("unruh_temperature: acceleration must be >= 0");
    return proper_acceleration / (2 * std::numbers::pi);
}

double unruh_temperature_kelvin(double proper_acceleration)
{
    return unruh_temperature(proper_acceleration) / Constants::codata().boltzmann_ev_per_k;
}

namespace {

double squared_rate_energy(Trajectory const& traj, bool lab_velocity)
{
    auto const& c = Constants::codata();
    auto rate = [&traj, lab_velocity](double t) {
        double const du = traj.acceleration(t);
        if (!lab_velocity)
            return du * du;
        double const g = traj.gamma(t);
        double const dbeta = du / (g * g * g);
        return dbeta * dbeta;
    };
    QuadratureTolerance tol;
    tol.abs = 0;
    tol.rel = 1e-10;
    auto const kinks = traj.kinks();
    auto const r = integrate(rate, traj.t_begin(), traj.t_end(), tol, kinks);
    return c.q * c.q / (6 * std::numbers::pi) * r.value;
}

}  // namespace

double larmor_energy(Trajectory const& traj) { return squared_rate_energy(traj, true); }

double lienard_energy(Trajectory const& traj) { return squared_rate_energy(traj, false); }

}  // namespace unruh
