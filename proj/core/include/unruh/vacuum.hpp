// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
//! \file vacuum.hpp
//! Euler-Heisenberg weak-field response of the vacuum around a homogeneous
//! background (E0, B0): permittivity, magneto-electric block, the modified
//! transversality condition and the resulting longitudinal leakage.
#pragma once

#include <array>

#include "unruh/radiation.hpp"
#include "unruh/vec3.hpp"

namespace unruh {

using Matrix3 = std::array<std::array<double, 3>, 3>;

struct BackgroundField
{
    Vec3 E{};
    Vec3 B{};

    double invariant_f() const { return dot(E, E) - dot(B, B); }
    double invariant_g() const { return dot(E, B); }
};

//! alpha / (90 pi E_S^2), the quartic coefficient.
double eh_coefficient();

//! 1/2 (E^2 - B^2) + c [(E^2 - B^2)^2 + 7 (E.B)^2]
double eh_lagrangian(Vec3 const& E, Vec3 const& B);

struct PermittivityTensor
{
    Matrix3 eps{};
    BackgroundField background{};
};

//! d^2 L / dE_i dE_j at the background.
PermittivityTensor permittivity(BackgroundField const& bg);

//! d^2 L / dE_i dB_j at the background.
Matrix3 magnetoelectric(BackgroundField const& bg);

//! Vector a with k . D(wave e) = a . e for a plane wave along khat,
//! D = eps e + psi (khat x e).
Vec3 transversality_functional(Vec3 const& khat, BackgroundField const& bg);

struct CorrectedBasis
{
    Vec3 e1;
    Vec3 e2;
    bool fallback{false};  //!< degenerate response, free basis returned
};

//! Free basis vectors shifted along khat so that the linearized Gauss law
//! holds, then normalized. Reduces to polarization_basis for no background.
CorrectedBasis corrected_polarization(Vec3 const& khat, BackgroundField const& bg);

//! (4 alpha / 45 pi) k E0 B0 / E_S^2 for k parallel to E0, B0 orthogonal.
double forward_leakage(double k, double e0, double b0);

struct Leakage
{
    double leaking{0};  //!< |k . e| of the polarization orthogonal to B0
    double blind{0};    //!< the polarization along B0 (exactly zero)
};

//! Checked geometry: throws InvalidArgument unless khat || E0 and B0 _|_ E0.
Leakage forward_leakage(double k, Vec3 const& khat, BackgroundField const& bg);

//! |k . e| for both free polarizations from the full linearized response.
std::array<double, 2> constitutive_leakage(double k, Vec3 const& khat, BackgroundField const& bg);

//! Photon mode whose polarization is the corrected basis vector.
PhotonMode corrected_mode(double k, double theta, double phi, int index, BackgroundField const& bg);

}  // namespace unruh
