// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include "unruh/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <tuple>
#include <utility>

#include "unruh/errors.hpp"

namespace unruh {
namespace {

constexpr std::size_t kOrder = 16;
constexpr double kMaxPanelPhase = std::numbers::pi / 2;
constexpr double kEps = std::numeric_limits<double>::epsilon();

GaussLegendre compute_rule(std::size_t n)
{
    GaussLegendre rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        // Initial guess (Tricomi), then Newton on P_n.
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75)
                            / (static_cast<double>(n) + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter)
        {
            double p0 = 1, p1 = x;
            for (std::size_t k = 2; k <= n; ++k)
            {
                double const p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double const pn = n == 1 ? x : p1;
            double const pnm1 = n == 1 ? 1.0 : p0;
            dp = n * (x * pn - pnm1) / (x * x - 1);
            double const dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = 2 / ((1 - x * x) * dp * dp);
    }
    return rule;
}

// Legendre analysis matrix: coefficient c_j = sum_i T[j][i] f(x_i).
struct FilonTables
{
    GaussLegendre const* rule;
    std::array<std::array<double, kOrder>, kOrder> analysis;
};

FilonTables const& filon_tables()
{
    static FilonTables const tables = [] {
        FilonTables t{};
        t.rule = &gauss_legendre(kOrder);
        for (std::size_t i = 0; i < kOrder; ++i)
        {
            double const x = t.rule->nodes[i];
            double p0 = 1, p1 = x;
            for (std::size_t j = 0; j < kOrder; ++j)
            {
                double pj;
                if (j == 0)
                    pj = 1;
                else if (j == 1)
                    pj = x;
                else
                {
                    pj = ((2.0 * j - 1) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = pj;
                }
                t.analysis[j][i] = (2.0 * j + 1) / 2 * t.rule->weights[i] * pj;
            }
        }
        return t;
    }();
    return tables;
}

struct Panel
{
    double a;
    double b;
    std::complex<double> value;
    double error;
    double l1;
};

bool operator<(Panel const& l, Panel const& r) { return l.error < r.error; }

Panel evaluate_panel(ComplexEnvelope const& f, double omega, double a, double b)
{
    auto const& tables = filon_tables();
    double const mid = 0.5 * (a + b);
    double const half = 0.5 * (b - a);

    std::array<std::complex<double>, kOrder> values;
    double abs_sum = 0;
    for (std::size_t i = 0; i < kOrder; ++i)
    {
        values[i] = f(mid + half * tables.rule->nodes[i]);
        abs_sum += tables.rule->weights[i] * std::abs(values[i]);
    }

    std::array<std::complex<double>, kOrder> coeff{};
    for (std::size_t j = 0; j < kOrder; ++j)
    {
        std::complex<double> c{};
        for (std::size_t i = 0; i < kOrder; ++i)
            c += tables.analysis[j][i] * values[i];
        coeff[j] = c;
    }

    // Panels produced by bisection share widths, so the last moments are often reusable.
    thread_local double last_kappa = -1;
    thread_local std::array<double, kOrder> bessel{};
    double const kappa = omega * half;
    if (kappa != last_kappa)
    {
        spherical_bessel_small(kappa, bessel);
        last_kappa = kappa;
    }

    // int_{-1}^{1} P_j(x) e^{i kappa x} dx = 2 i^j j_j(kappa)
    static constexpr std::array<std::complex<double>, 4> ipow{
        {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
    std::complex<double> sum{};
    for (std::size_t j = 0; j < kOrder; ++j)
        sum += coeff[j] * (2.0 * bessel[j]) * ipow[j % 4];

    std::complex<double> const carrier = omega == 0 ? std::complex<double>{1, 0}
                                                    : std::polar(1.0, omega * mid);
    Panel p{a, b, half * carrier * sum, 0, half * abs_sum};
    double const tail = std::abs(coeff[kOrder - 1]) + std::abs(coeff[kOrder - 2]);
    p.error = 2 * half * tail + 64 * kEps * p.l1;
    return p;
}

std::vector<double> segment_points(double lower, double upper, std::span<double const> breaks)
{
    std::vector<double> pts{lower};
    std::vector<double> inner(breaks.begin(), breaks.end());
    std::sort(inner.begin(), inner.end());
    for (double x : inner)
    {
        if (x > lower && x < upper && x > pts.back())
            pts.push_back(x);
    }
    pts.push_back(upper);
    return pts;
}

IntegralResult run_adaptive(ComplexEnvelope const& f,
                            double omega,
                            double lower,
                            double upper,
                            std::span<double const> breaks,
                            QuadratureTolerance const& tol)
{
    if (!(omega >= 0) || !std::isfinite(omega))
        throw InvalidArgument("fourier_integral: omega must be finite and >= 0");
    if (!std::isfinite(lower) || !std::isfinite(upper))
        throw InvalidArgument("fourier_integral: domain must be finite");
    if (lower == upper)
        return {};
    if (lower > upper)
    {
        auto r = run_adaptive(f, omega, upper, lower, breaks, tol);
        r.value = -r.value;
        return r;
    }

    std::vector<Panel> heap;
    auto const pts = segment_points(lower, upper, breaks);
    for (std::size_t s = 0; s + 1 < pts.size(); ++s)
    {
        double const len = pts[s + 1] - pts[s];
        auto count = static_cast<std::size_t>(std::ceil(omega * len / kMaxPanelPhase));
        count = std::max<std::size_t>({count, tol.min_panels, 1});
        if (count > tol.max_panels)
        {
            IntegralResult none;
            none.error = std::numeric_limits<double>::infinity();
            throw ConvergenceError("fourier_integral: oscillation needs more panels than the budget", none);
        }
        for (std::size_t i = 0; i < count; ++i)
        {
            double const a = pts[s] + len * static_cast<double>(i) / count;
            double const b = i + 1 == count ? pts[s + 1] : pts[s] + len * static_cast<double>(i + 1) / count;
            heap.push_back(evaluate_panel(f, omega, a, b));
        }
    }
    std::make_heap(heap.begin(), heap.end());

    auto totals = [&] {
        IntegralResult r;
        for (auto const& p : heap)
        {
            r.value += p.value;
            r.error += p.error;
            r.l1_norm += p.l1;
        }
        r.panels = heap.size();
        return r;
    };
    // Never ask for less than the rounding floor of the whole integral: the
    // panel floors and the coefficient noise in the tail estimates each sum
    // to about 64 eps times the L1 norm however finely we split.
    auto target = [&](IntegralResult const& r) {
        return std::max({tol.abs, tol.rel * std::abs(r.value), tol.norm_rel * r.l1_norm,
                         512 * kEps * r.l1_norm});
    };

    IntegralResult current = totals();
    while (current.error > target(current))
    {
        if (heap.size() >= tol.max_panels)
        {
            throw ConvergenceError("fourier_integral: tolerance not reached within panel budget",
                                   current);
        }
        std::pop_heap(heap.begin(), heap.end());
        Panel const worst = heap.back();
        heap.pop_back();
        double const mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
        {
            heap.push_back(worst);
            throw ConvergenceError("fourier_integral: panel width underflow", current);
        }
        Panel const left = evaluate_panel(f, omega, worst.a, mid);
        Panel const right = evaluate_panel(f, omega, mid, worst.b);
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end());

        current.value += left.value + right.value - worst.value;
        current.error += left.error + right.error - worst.error;
        current.l1_norm += left.l1 + right.l1 - worst.l1;
        current.panels = heap.size();
        // Resum periodically so the running error does not drift.
        if (heap.size() % 64 == 0)
            current = totals();
    }
    // Final sum in positional order for reproducibility.
    std::sort(heap.begin(), heap.end(), [](Panel const& l, Panel const& r) { return l.a < r.a; });
    return totals();
}

struct VectorPanel
{
    double a;
    double b;
    std::vector<double> value;
    double error;
    double l1;  // of the first component
};

bool operator<(VectorPanel const& l, VectorPanel const& r) { return l.error < r.error; }

VectorPanel evaluate_vector_panel(std::function<void(double, std::span<double>)> const& f,
                                  std::size_t dims, double a, double b)
{
    auto const& tables = filon_tables();
    double const mid = 0.5 * (a + b);
    double const half = 0.5 * (b - a);
    std::vector<double> samples(kOrder * dims);
    for (std::size_t i = 0; i < kOrder; ++i)
        f(mid + half * tables.rule->nodes[i], std::span<double>(samples.data() + i * dims, dims));

    VectorPanel p{a, b, std::vector<double>(dims, 0.0), 0, 0};
    double abs0 = 0;
    for (std::size_t i = 0; i < kOrder; ++i)
    {
        double const w = tables.rule->weights[i];
        for (std::size_t d = 0; d < dims; ++d)
            p.value[d] += w * samples[i * dims + d];
        abs0 += w * std::abs(samples[i * dims]);
    }
    for (auto& v : p.value)
        v *= half;
    double tail = 0;
    for (std::size_t j : {kOrder - 2, kOrder - 1})
    {
        double c = 0;
        for (std::size_t i = 0; i < kOrder; ++i)
            c += tables.analysis[j][i] * samples[i * dims];
        tail += std::abs(c);
    }
    p.l1 = half * abs0;
    p.error = 2 * half * tail + 64 * kEps * p.l1;
    return p;
}

}  // namespace

ComponentIntegralResult integrate_components(std::function<void(double, std::span<double>)> const& f,
                                             std::size_t dims,
                                             double a,
                                             double b,
                                             QuadratureTolerance const& tol,
                                             std::span<double const> breakpoints)
{
    if (dims == 0)
        throw InvalidArgument("integrate_components: dims must be positive");
    if (!std::isfinite(a) || !std::isfinite(b))
        throw InvalidArgument("integrate_components: domain must be finite");
    ComponentIntegralResult result;
    result.value.assign(dims, 0.0);
    if (a == b)
        return result;
    double sign = 1;
    if (a > b)
    {
        std::swap(a, b);
        sign = -1;
    }

    std::vector<VectorPanel> heap;
    auto const pts = segment_points(a, b, breakpoints);
    for (std::size_t s = 0; s + 1 < pts.size(); ++s)
    {
        std::size_t const count = std::max<std::size_t>(tol.min_panels, 1);
        double const len = pts[s + 1] - pts[s];
        for (std::size_t i = 0; i < count; ++i)
        {
            double const lo = pts[s] + len * static_cast<double>(i) / count;
            double const hi = i + 1 == count ? pts[s + 1] : pts[s] + len * static_cast<double>(i + 1) / count;
            heap.push_back(evaluate_vector_panel(f, dims, lo, hi));
        }
    }
    std::make_heap(heap.begin(), heap.end());

    auto totals = [&] {
        double value0 = 0, error = 0, l1 = 0;
        for (auto const& p : heap)
        {
            value0 += p.value[0];
            error += p.error;
            l1 += p.l1;
        }
        return std::tuple{value0, error, l1};
    };
    auto [value0, error, l1] = totals();
    while (error > std::max({tol.abs, tol.rel * std::abs(value0), 512 * kEps * l1}))
    {
        if (heap.size() >= tol.max_panels)
        {
            IntegralResult best{value0, error, 0, heap.size()};
            throw ConvergenceError("integrate_components: tolerance not reached within panel budget", best);
        }
        std::pop_heap(heap.begin(), heap.end());
        VectorPanel const worst = std::move(heap.back());
        heap.pop_back();
        double const mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
        {
            IntegralResult best{value0, error, 0, heap.size()};
            throw ConvergenceError("integrate_components: panel width underflow", best);
        }
        auto left = evaluate_vector_panel(f, dims, worst.a, mid);
        auto right = evaluate_vector_panel(f, dims, mid, worst.b);
        value0 += left.value[0] + right.value[0] - worst.value[0];
        error += left.error + right.error - worst.error;
        l1 += left.l1 + right.l1 - worst.l1;
        heap.push_back(std::move(left));
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(std::move(right));
        std::push_heap(heap.begin(), heap.end());
        if (heap.size() % 64 == 0)
            std::tie(value0, error, l1) = totals();
    }
    std::sort(heap.begin(), heap.end(), [](VectorPanel const& l, VectorPanel const& r) { return l.a < r.a; });
    result.error = 0;
    for (auto const& p : heap)
    {
        for (std::size_t d = 0; d < dims; ++d)
            result.value[d] += p.value[d];
        result.error += p.error;
    }
    for (auto& v : result.value)
        v *= sign;
    result.panels = heap.size();
    return result;
}

GaussLegendre const& gauss_legendre(std::size_t n)
{
    constexpr std::size_t kMax = 64;
    if (n == 0 || n > kMax)
        throw InvalidArgument("gauss_legendre: order must be in [1, 64]");
    static std::array<GaussLegendre, kMax + 1> cache;
    static std::array<std::once_flag, kMax + 1> flags;
    std::call_once(flags[n], [n] { cache[n] = compute_rule(n); });
    return cache[n];
}

void spherical_bessel_small(double x, std::span<double> out)
{
    double const x2 = -0.5 * x * x;
    std::size_t const count = out.size();
    // Series for the two highest orders, then the stable downward recurrence.
    std::size_t const first = (count > 2 && std::abs(x) > 1e-3) ? count - 2 : 0;
    double lead = 1;  // x^n / (2n+1)!!
    for (std::size_t n = 1; n <= first; ++n)
        lead *= x / (2.0 * n + 1);
    for (std::size_t n = first; n < count; ++n)
    {
        if (n > first)
            lead *= x / (2.0 * n + 1);
        double term = 1, sum = 1;
        for (int k = 1; k < 60; ++k)
        {
            term *= x2 / (k * (2.0 * n + 2 * k + 1));
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum))
                break;
        }
        out[n] = lead * sum;
    }
    for (std::size_t n = first; n-- > 0;)
        out[n] = (2.0 * n + 3) / x * out[n + 1] - out[n + 2];
}

IntegralResult fourier_integral(OscillatoryIntegralSpec const& spec)
{
    if (!spec.envelope)
        throw InvalidArgument("fourier_integral: missing envelope");
    return run_adaptive(spec.envelope, spec.omega, spec.lower, spec.upper, spec.discontinuities,
                        spec.tol);
}

RealIntegralResult integrate(std::function<double(double)> const& f,
                             double a,
                             double b,
                             QuadratureTolerance const& tol,
                             std::span<double const> breakpoints)
{
    ComplexEnvelope wrapped = [&f](double x) { return std::complex<double>(f(x), 0); };
    auto r = run_adaptive(wrapped, 0.0, a, b, breakpoints, tol);
    return {r.value.real(), r.error, r.panels};
}

}  // namespace unruh
