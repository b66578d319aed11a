// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
//! \file quadrature.hpp
//! Adaptive quadrature for Fourier-type integrals
//! \f$ \int_a^b f(x) e^{i\omega x} dx \f$ with smooth (piecewise) envelopes.
//!
//! Each panel spans at most pi/2 of carrier phase. On a panel the envelope
//! is expanded in Legendre polynomials from its values at Gauss-Legendre
//! nodes, and the carrier is integrated exactly against every Legendre mode
//! (Filon-Legendre rule, moments are spherical Bessel functions). The size
//! of the trailing Legendre coefficients drives adaptive bisection.
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace unruh {

struct QuadratureTolerance
{
    double abs{1e-12};
    double rel{1e-9};
    //! Extra absolute floor measured in units of the integrand L1 norm.
    double norm_rel{0};
    std::size_t max_panels{1u << 18};
    //! Minimum number of initial panels per smooth segment.
    std::size_t min_panels{4};

    QuadratureTolerance scaled(double factor) const
    {
        QuadratureTolerance t = *this;
        t.abs *= factor;
        t.rel *= factor;
        t.norm_rel *= factor;
        return t;
    }
};

struct IntegralResult
{
    std::complex<double> value{};
    double error{0};   //!< estimated absolute error
    double l1_norm{0}; //!< estimate of the integral of |envelope|
    std::size_t panels{0};
};

struct RealIntegralResult
{
    double value{0};
    double error{0};
    std::size_t panels{0};
};

//! Tolerance not reached within the panel budget.
class ConvergenceError : public std::runtime_error
{
  public:
    ConvergenceError(std::string const& what, IntegralResult best)
        : std::runtime_error(what), best_(best)
    {
    }
    IntegralResult const& best() const { return best_; }

  private:
    IntegralResult best_;
};

using ComplexEnvelope = std::function<std::complex<double>(double)>;

struct OscillatoryIntegralSpec
{
    ComplexEnvelope envelope;
    double omega{0};
    double lower{0};
    double upper{0};
    //! Known jump/kink points strictly inside (lower, upper).
    std::vector<double> discontinuities;
    QuadratureTolerance tol{};
};

//! \f$ \int_{lower}^{upper} envelope(x)\,e^{i\omega x}\,dx \f$
IntegralResult fourier_integral(OscillatoryIntegralSpec const& spec);

//! Adaptive integral of a real function with optional breakpoints.
RealIntegralResult integrate(std::function<double(double)> const& f,
                             double a,
                             double b,
                             QuadratureTolerance const& tol = {},
                             std::span<double const> breakpoints = {});

struct ComponentIntegralResult
{
    std::vector<double> value;
    double error{0};  //!< estimated error of component 0
    std::size_t panels{0};
};

//! Integrates a vector-valued function f(x, out) with out.size() == dims.
//! Refinement is driven by component 0 (typically the total of the
//! others); every component is summed over the same panels.
ComponentIntegralResult integrate_components(std::function<void(double, std::span<double>)> const& f,
                                             std::size_t dims,
                                             double a,
                                             double b,
                                             QuadratureTolerance const& tol = {},
                                             std::span<double const> breakpoints = {});

//! Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

//! Cached rule of order n (1 <= n <= 64).
GaussLegendre const& gauss_legendre(std::size_t n);

//! Spherical Bessel functions j_0..j_{out.size()-1} at small |x| (series).
void spherical_bessel_small(double x, std::span<double> out);

}  // namespace unruh
