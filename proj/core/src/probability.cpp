// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
// Volume-free mode sums. With sum_k -> V int d^3k/(2pi)^3 and the
// retarded-time Fourier factors written as G = (i/w) G_hat, the pair
// probability becomes
//   P = g^2 pi^2 / (2 (2pi)^6) int s ds int dx x(1-x) int dmu dmu' W |G_hat(s, c)|^2
// with s = k + k', x = k/s, mu = cos(theta), c = x mu + (1-x) mu' and W the
// azimuth-averaged polarization weight. |G_hat|^2 depends on the photon
// angles only through c, so it is tabulated per s as a piecewise Chebyshev
// interpolant in c.
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <tuple>
#include <utility>
#include <vector>

#include "unruh/analysis.hpp"
#include "unruh/errors.hpp"
#include "unruh/parallel.hpp"
#include "unruh/units.hpp"

namespace unruh {
namespace {

constexpr std::size_t kNodes = 17;
constexpr double kPi = std::numbers::pi;

class PiecewiseChebyshev
{
  public:
    // f(y) -> (value, absolute error) is evaluated at the Chebyshev-Lobatto
    // nodes of every piece; pieces are halved until the two highest
    // coefficients fall below rel_tol times the largest sample seen, or
    // below the noise level of the samples.
    template <class F>
    PiecewiseChebyshev(F const& f, double a, double b, double rel_tol, unsigned threads)
    {
        struct Pending
        {
            double a, b;
        };
        std::vector<Pending> stack{{a, b}};
        double scale = 0;
        double noise = 0;
        std::vector<std::pair<double, std::array<double, kNodes>>> done;
        double const min_width = 1e-9 * (b - a);
        while (!stack.empty())
        {
            auto const piece = stack.back();
            stack.pop_back();
            std::array<double, kNodes> values{};
            std::array<double, kNodes> errors{};
            parallel_for(kNodes, threads, [&](std::size_t j) {
                double const x = std::cos(kPi * static_cast<double>(j) / (kNodes - 1));
                std::tie(values[j], errors[j]) = f(0.5 * (piece.a + piece.b) + 0.5 * (piece.b - piece.a) * x);
            });
            for (std::size_t j = 0; j < kNodes; ++j)
            {
                scale = std::max(scale, std::abs(values[j]));
                noise = std::max(noise, errors[j]);
            }
            auto const coeff = transform(values);
            double const tail = std::abs(coeff[kNodes - 1]) + std::abs(coeff[kNodes - 2]);
            bool const accept = tail <= rel_tol * scale + 10 * noise || (piece.b - piece.a) < min_width
                                || done.size() + stack.size() > 512;
            if (accept)
            {
                done.emplace_back(piece.a, coeff);
            }
            else
            {
                double const mid = 0.5 * (piece.a + piece.b);
                stack.push_back({mid, piece.b});
                stack.push_back({piece.a, mid});
            }
        }
        std::sort(done.begin(), done.end(), [](auto const& l, auto const& r) { return l.first < r.first; });
        for (auto const& [edge, coeff] : done)
        {
            edges_.push_back(edge);
            coeffs_.push_back(coeff);
        }
        edges_.push_back(b);
    }

    double operator()(double y) const
    {
        y = std::clamp(y, edges_.front(), edges_.back());
        auto it = std::upper_bound(edges_.begin(), edges_.end(), y);
        auto i = static_cast<std::size_t>(it - edges_.begin());
        i = std::clamp<std::size_t>(i, 1, coeffs_.size()) - 1;
        double const a = edges_[i], b = edges_[i + 1];
        double const t = (2 * y - a - b) / (b - a);
        // Clenshaw recurrence
        auto const& c = coeffs_[i];
        double b1 = 0, b2 = 0;
        for (std::size_t j = kNodes - 1; j >= 1; --j)
        {
            double const b0 = 2 * t * b1 - b2 + c[j];
            b2 = b1;
            b1 = b0;
        }
        return t * b1 - b2 + c[0];
    }

    std::size_t pieces() const { return coeffs_.size(); }

  private:
    static std::array<double, kNodes> transform(std::array<double, kNodes> const& v)
    {
        constexpr std::size_t n = kNodes - 1;
        std::array<double, kNodes> c{};
        for (std::size_t j = 0; j <= n; ++j)
        {
            double sum = 0;
            for (std::size_t k = 0; k <= n; ++k)
            {
                double const w = (k == 0 || k == n) ? 0.5 : 1.0;
                sum += w * v[k] * std::cos(kPi * static_cast<double>(j * k) / n);
            }
            c[j] = 2 * sum / n;
        }
        c[0] *= 0.5;
        c[n] *= 0.5;
        return c;
    }

    std::vector<double> edges_;
    std::vector<std::array<double, kNodes>> coeffs_;
};

std::pair<double, double> squared_with_error(double m, double err)
{
    return {m * m, err * (2 * m + err)};
}

// Direction weights parametrized by the distance from the poles.
DirectionWeight forward_weight(double v) { return {1 - v, v, 2 - v}; }
DirectionWeight backward_weight(double w) { return {w - 1, 2 - w, w}; }

constexpr double kInnerRel = 1e-4;

QuadratureTolerance inner_tolerance()
{
    QuadratureTolerance tol;
    tol.abs = 0;
    tol.rel = kInnerRel;
    tol.min_panels = 1;
    tol.max_panels = 4096;
    return tol;
}

void check_cone(double theta_max)
{
    if (!(theta_max > 0 && theta_max <= kPi / 2))
        throw InvalidArgument("cone half-angle must lie in (0, pi/2]");
}

// Layout of the pair-probability component vector.
enum : std::size_t
{
    kTotal = 0,
    kChannel11,
    kChannel12,
    kChannel21,
    kChannel22,
    kSectorFF,
    kSectorBB,
    kSectorFB,
    kSectorBF,
    kPairDims,
};

}  // namespace

PairProbability pair_probability(Trajectory const& traj, double theta_max, double k_max,
                                 ProbabilityOptions const& opts)
{
    check_cone(theta_max);
    if (!(k_max > 0) || !std::isfinite(k_max))
        throw InvalidArgument("pair_probability: k_max must be positive and finite");
    PairProbability out;
    out.theta_max = theta_max;
    out.k_max = k_max;
    if (traj.is_static())
        return out;

    auto const& c = Constants::codata();
    double const half = std::sin(0.5 * theta_max);
    double const vmax = 2 * half * half;  // 1 - cos(theta_max)
    double const two_pi = 2 * kPi;
    double const prefactor = c.g * c.g * kPi * kPi / (2 * std::pow(two_pi, 6));
    double const cheb_tol = 0.1 * kInnerRel;

    auto hat_squared = [&](DirectionWeight const& w, double s) {
        auto const G = doppler_transform(traj, w, s, Method::retarded, opts.amplitude);
        return squared_with_error(s * std::abs(G.value), s * G.error);
    };

    // Integrand over s: s * sum over sectors of x(1-x) dmu dmu' W |G_hat|^2.
    auto per_s = [&](double s, std::span<double> acc) {
        std::fill(acc.begin(), acc.end(), 0.0);
        double const x_lo = std::max(0.0, 1 - k_max / s);
        double const x_hi = std::min(1.0, k_max / s);
        if (!(x_hi > x_lo))
            return;
        PiecewiseChebyshev const fwd([&](double v) { return hat_squared(forward_weight(v), s); }, 0, vmax,
                                     cheb_tol, opts.threads);
        PiecewiseChebyshev const bwd([&](double w) { return hat_squared(backward_weight(w), s); }, 0, vmax,
                                     cheb_tol, opts.threads);
        double const c_lo = std::max(-1.0, 2 * x_lo - 1 - x_lo * vmax);
        double const c_hi = std::min(1.0, 2 * x_hi - 1 + (1 - x_hi) * vmax);
        PiecewiseChebyshev const mixed(
            [&](double cc) { return hat_squared(DirectionWeight::from_cosine(cc), s); }, c_lo, c_hi, cheb_tol,
            opts.threads);

        auto const tol = inner_tolerance();
        for (std::size_t sector = 0; sector < 4; ++sector)
        {
            bool const first_fwd = sector == 0 || sector == 2;
            bool const second_fwd = sector == 0 || sector == 3;
            auto channels = [&](double x, double y1, double y2, std::span<double> o) {
                double const mu1 = first_fwd ? 1 - y1 : y1 - 1;
                double const mu2 = second_fwd ? 1 - y2 : y2 - 1;
                double p;
                if (sector == 0)
                    p = fwd(x * y1 + (1 - x) * y2);
                else if (sector == 1)
                    p = bwd(x * y1 + (1 - x) * y2);
                else
                    p = mixed(x * mu1 + (1 - x) * mu2);
                double const s1 = y1 * (2 - y1);  // 1 - mu1^2
                double const s2 = y2 * (2 - y2);
                o[1] = p * (mu1 * mu1 * mu2 * mu2 + 2 * s1 * s2);
                o[2] = p * mu1 * mu1;
                o[3] = p * mu2 * mu2;
                o[4] = p;
                o[0] = o[1] + o[2] + o[3] + o[4];
            };
            auto over_x = [&](double x, std::span<double> ox) {
                auto over_y1 = [&](double y1, std::span<double> o1) {
                    auto over_y2 = [&](double y2, std::span<double> o2) { channels(x, y1, y2, o2); };
                    auto const r = integrate_components(over_y2, 5, 0, vmax, tol);
                    std::copy(r.value.begin(), r.value.end(), o1.begin());
                };
                auto const r = integrate_components(over_y1, 5, 0, vmax, tol);
                double const w = x * (1 - x);
                for (std::size_t d = 0; d < 5; ++d)
                    ox[d] = w * r.value[d];
            };
            auto const r = integrate_components(over_x, 5, x_lo, x_hi, tol);
            for (std::size_t d = 0; d < 5; ++d)
                acc[d] += s * r.value[d];
            acc[kSectorFF + sector] = s * r.value[0];
        }
    };

    QuadratureTolerance outer;
    outer.abs = 0;
    outer.rel = opts.rel_tol;
    outer.min_panels = 1;
    outer.max_panels = 512;
    double const breaks[] = {k_max};
    auto const r = integrate_components(per_s, kPairDims, 0, 2 * k_max, outer, breaks);

    out.value = prefactor * r.value[kTotal];
    out.error = prefactor * r.error;
    out.channels = {{{prefactor * r.value[kChannel11], prefactor * r.value[kChannel12]},
                     {prefactor * r.value[kChannel21], prefactor * r.value[kChannel22]}}};
    for (std::size_t i = 0; i < 4; ++i)
        out.sectors[i] = prefactor * r.value[kSectorFF + i];
    return out;
}

namespace {

// int dmu (1 - mu^2) |F_hat(k, mu)|^2 over both cones, F_hat = -i k F.
double angular_velocity_spectrum(Trajectory const& traj, double k, double vmax, ProbabilityOptions const& opts)
{
    auto hat_squared = [&](DirectionWeight const& w) {
        auto const F = velocity_transform(traj, w, k, Method::retarded, opts.amplitude);
        return squared_with_error(k * std::abs(F.value), k * F.error);
    };
    PiecewiseChebyshev const fwd([&](double v) { return hat_squared(forward_weight(v)); }, 0, vmax,
                                 0.1 * kInnerRel, opts.threads);
    PiecewiseChebyshev const bwd([&](double w) { return hat_squared(backward_weight(w)); }, 0, vmax,
                                 0.1 * kInnerRel, opts.threads);
    auto const tol = inner_tolerance();
    auto const a = integrate([&](double y) { return y * (2 - y) * fwd(y); }, 0, vmax, tol);
    auto const b = integrate([&](double y) { return y * (2 - y) * bwd(y); }, 0, vmax, tol);
    return a.value + b.value;
}

}  // namespace

SpectrumIntegral single_photon_probability(Trajectory const& traj, double theta_max, double k_min, double k_max,
                                           ProbabilityOptions const& opts)
{
    check_cone(theta_max);
    if (!(k_min >= 0 && k_max > k_min) || !std::isfinite(k_max))
        throw InvalidArgument("single_photon_probability: need 0 <= k_min < k_max");
    if (traj.is_static())
        return {};
    double const du = traj.u_end() - traj.u_begin();
    double const u_scale = std::max({std::abs(traj.u_end()), std::abs(traj.u_begin()), 1e-300});
    if (k_min == 0 && std::abs(du) > 1e-12 * u_scale)
    {
        throw InvalidArgument(
            "single_photon_probability: the photon number diverges logarithmically at small k for a net "
            "velocity change; use k_min > 0");
    }
    auto const& c = Constants::codata();
    double const half = std::sin(0.5 * theta_max);
    double const vmax = 2 * half * half;
    double const prefactor = c.q * c.q / (8 * kPi * kPi);

    QuadratureTolerance outer;
    outer.abs = 0;
    outer.rel = opts.rel_tol;
    outer.min_panels = 4;
    outer.max_panels = 2048;
    RealIntegralResult r;
    if (k_min > 0)
    {
        r = integrate([&](double lk) { return angular_velocity_spectrum(traj, std::exp(lk), vmax, opts); },
                      std::log(k_min), std::log(k_max), outer);
    }
    else
    {
        r = integrate([&](double k) { return angular_velocity_spectrum(traj, k, vmax, opts) / k; }, 0, k_max,
                      outer);
    }
    return {prefactor * r.value, prefactor * r.error};
}

SpectrumIntegral mode_sum_energy(Trajectory const& traj, double k_max, ProbabilityOptions const& opts)
{
    if (!(k_max > 0) || !std::isfinite(k_max))
        throw InvalidArgument("mode_sum_energy: k_max must be positive and finite");
    if (traj.is_static())
        return {};
    auto const& c = Constants::codata();
    double const prefactor = c.q * c.q / (8 * kPi * kPi);
    QuadratureTolerance outer;
    outer.abs = 0;
    outer.rel = opts.rel_tol;
    outer.min_panels = 4;
    outer.max_panels = 2048;
    auto const r = integrate([&](double k) { return angular_velocity_spectrum(traj, k, 1.0, opts); }, 0, k_max,
                             outer);
    return {prefactor * r.value, prefactor * r.error};
}

}  // namespace unruh
