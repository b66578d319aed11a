// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
//! \file radiation.hpp
//! Two-photon (pair) amplitudes and classical coherent-state coefficients
//! emitted by a trajectory, with the quantization volume stripped.
//!
//! Both quantities reduce to one-dimensional Fourier integrals:
//!   pair:    G(w, c) = int dtau D(tau) exp(i w tau),  D = sqrt(1-beta^2)/(1-c beta)
//!   single:  F(k, c) = int dtau L(tau) exp(i k tau),  L = beta/(1-c beta)
//! with tau = t - c z(t). `Method::time_domain` integrates in lab time with
//! the nonlinear phase; `Method::retarded` integrates in tau after one
//! integration by parts (adiabatic switching removes the boundary terms),
//! so the integrand is localized where the particle accelerates.
#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "unruh/kinematics.hpp"
#include "unruh/quadrature.hpp"
#include "unruh/vec3.hpp"

namespace unruh {

enum class Polarization
{
    linear1,  //!< theta-hat
    linear2,  //!< phi-hat
    plus,     //!< (e1 + i e2)/sqrt(2)
    minus,    //!< (e1 - i e2)/sqrt(2)
    custom,   //!< user-supplied vector
};

std::string_view polarization_name(Polarization p);

struct PolarizationBasis
{
    Vec3 e1;
    Vec3 e2;
};

//! theta-hat / phi-hat with the acceleration axis as polar axis. Directions
//! on the axis use phi = 0: +z gives (x, y), -z gives (-x, y).
PolarizationBasis polarization_basis(Vec3 const& khat);
PolarizationBasis polarization_basis(double theta, double phi);

struct PhotonMode
{
    double k{1};
    double theta{0};
    double phi{0};
    Polarization label{Polarization::linear1};
    CVec3 e{};

    static PhotonMode make(double k, double theta, double phi, Polarization label);
    static PhotonMode with_vector(double k, double theta, double phi, CVec3 const& e);
    Vec3 direction() const;
};

enum class Method
{
    time_domain,
    retarded,
};

std::string_view method_name(Method m);

//! Gaussian switching of the coupling, exp(-(t-center)^2 / (2 sigma^2)).
//! Only meaningful as an analytic test fixture.
struct CouplingWindow
{
    double sigma{1};
    double center{0};
};

struct AmplitudeOptions
{
    QuadratureTolerance tol{0.0, 1e-9, 1e-12, 1u << 20, 8};
    std::optional<CouplingWindow> window{};
    //! When false a tolerance shortfall returns the best estimate with
    //! `converged == false` instead of throwing ConvergenceError.
    bool throw_on_failure{true};
};

struct Transform
{
    complex value{};
    double error{0};
    bool converged{true};
};

//! G(omega, c) as described above.
Transform doppler_transform(Trajectory const& traj, DirectionWeight const& w, double omega,
                            Method method, AmplitudeOptions const& opts = {});

//! F(k, c) as described above.
Transform velocity_transform(Trajectory const& traj, DirectionWeight const& w, double k,
                             Method method, AmplitudeOptions const& opts = {});

struct TwoPhotonAmplitude
{
    PhotonMode mode1;
    PhotonMode mode2;
    complex value{};  //!< V * amplitude
    Method method{Method::retarded};
    double error{0};
    bool converged{true};
};

struct LarmorCoefficient
{
    PhotonMode mode;
    complex value{};  //!< sqrt(V) * alpha
    Method method{Method::retarded};
    double error{0};
    bool converged{true};
};

TwoPhotonAmplitude unruh_amplitude(Trajectory const& traj, PhotonMode const& mode1,
                                   PhotonMode const& mode2, Method method = Method::retarded,
                                   AmplitudeOptions const& opts = {});

LarmorCoefficient larmor_coefficient(Trajectory const& traj, PhotonMode const& mode,
                                     Method method = Method::retarded,
                                     AmplitudeOptions const& opts = {});

//! (e1 . e2) g / (2 i sqrt(k1 k2)): multiplies G to give V * amplitude.
complex pair_prefactor(PhotonMode const& mode1, PhotonMode const& mode2);

enum class BasisKind
{
    linear,
    circular,
};

struct PairMatrix
{
    BasisKind basis{BasisKind::linear};
    //! m[a][b]: photon 1 in state a, photon 2 in state b; (1, 2) or (+, -).
    std::array<std::array<complex, 2>, 2> m{};
    double error{0};
    bool converged{true};
};

//! Amplitudes for all polarization pairings of two photons given as
//! (k, theta, phi); the Fourier factor is computed once.
PairMatrix polarization_pair_matrix(Trajectory const& traj, PhotonMode const& photon1,
                                    PhotonMode const& photon2, BasisKind basis,
                                    Method method = Method::retarded,
                                    AmplitudeOptions const& opts = {});

}  // namespace unruh
