// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include "unruh/vacuum.hpp"

#include <cmath>
#include <numbers>

#include "unruh/errors.hpp"
#include "unruh/units.hpp"

namespace unruh {
namespace {

Vec3 mul(Matrix3 const& m, Vec3 const& v)
{
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

Vec3 mul_transposed(Matrix3 const& m, Vec3 const& v)
{
    return {m[0][0] * v.x + m[1][0] * v.y + m[2][0] * v.z,
            m[0][1] * v.x + m[1][1] * v.y + m[2][1] * v.z,
            m[0][2] * v.x + m[1][2] * v.y + m[2][2] * v.z};
}

}  // namespace

double eh_coefficient()
{
    auto const& k = Constants::codata();
    return k.alpha_qed / (90 * std::numbers::pi * k.schwinger_field * k.schwinger_field);
}

double eh_lagrangian(Vec3 const& E, Vec3 const& B)
{
    double const f = dot(E, E) - dot(B, B);
    double const g = dot(E, B);
    return 0.5 * f + eh_coefficient() * (f * f + 7 * g * g);
}

PermittivityTensor permittivity(BackgroundField const& bg)
{
    double const c = eh_coefficient();
    double const f = bg.invariant_f();
    PermittivityTensor out;
    out.background = bg;
    for (int i = 0; i < 3; ++i)
    {
        for (int j = 0; j < 3; ++j)
        {
            out.eps[i][j] = c * (8 * (bg.E[i] * bg.E[j]) + 14 * (bg.B[i] * bg.B[j]));
            if (i == j)
                out.eps[i][j] += 1 + 4 * c * f;
        }
    }
    return out;
}

Matrix3 magnetoelectric(BackgroundField const& bg)
{
    double const c = eh_coefficient();
    double const g = bg.invariant_g();
    Matrix3 psi{};
    for (int i = 0; i < 3; ++i)
    {
        for (int j = 0; j < 3; ++j)
        {
            psi[i][j] = c * (-8 * bg.E[i] * bg.B[j] + 14 * bg.B[i] * bg.E[j]);
            if (i == j)
                psi[i][j] += 14 * c * g;
        }
    }
    return psi;
}

Vec3 transversality_functional(Vec3 const& khat, BackgroundField const& bg)
{
    // k.(eps e) + k.(psi (k x e)) = (eps k).e + ((psi^T k) x k).e
    auto const eps = permittivity(bg).eps;
    auto const psi = magnetoelectric(bg);
    return mul(eps, khat) + cross(mul_transposed(psi, khat), khat);
}

CorrectedBasis corrected_polarization(Vec3 const& khat, BackgroundField const& bg)
{
    auto const free = polarization_basis(khat);
    Vec3 const a = transversality_functional(khat, bg);
    double const along = dot(a, khat);
    if (!(std::abs(along) > 1e-12 * norm(a)))
        return {free.e1, free.e2, true};
    auto shift = [&](Vec3 const& e) { return normalized(e - khat * (dot(a, e) / along)); };
    return {shift(free.e1), shift(free.e2), false};
}

double forward_leakage(double k, double e0, double b0)
{
    if (!(k >= 0))
        throw InvalidArgument("forward_leakage: k must be >= 0");
    auto const& c = Constants::codata();
    double const es = c.schwinger_field;
    return 4 * c.alpha_qed / (45 * std::numbers::pi) * k * e0 * b0 / (es * es);
}

Leakage forward_leakage(double k, Vec3 const& khat, BackgroundField const& bg)
{
    double const e0 = norm(bg.E);
    double const b0 = norm(bg.B);
    double const kn = norm(khat);
    if (!(std::abs(kn - 1) <= 1e-9))
        throw InvalidArgument("forward_leakage: direction must be a unit vector");
    if (e0 > 0 && norm(cross(khat, bg.E)) > 1e-9 * e0)
        throw InvalidArgument("forward_leakage: photon direction must be parallel to E0");
    if (e0 > 0 && b0 > 0 && std::abs(dot(bg.E, bg.B)) > 1e-9 * e0 * b0)
        throw InvalidArgument("forward_leakage: B0 must be orthogonal to E0");
    if (e0 == 0 && b0 > 0 && std::abs(dot(khat, bg.B)) > 1e-9 * b0)
        throw InvalidArgument("forward_leakage: B0 must be orthogonal to the photon direction");
    return {forward_leakage(k, e0, b0), 0.0};
}

std::array<double, 2> constitutive_leakage(double k, Vec3 const& khat, BackgroundField const& bg)
{
    auto const basis = corrected_polarization(khat, bg);
    return {k * std::abs(dot(khat, basis.e1)), k * std::abs(dot(khat, basis.e2))};
}

PhotonMode corrected_mode(double k, double theta, double phi, int index, BackgroundField const& bg)
{
    if (index != 1 && index != 2)
        throw InvalidArgument("corrected_mode: index must be 1 or 2");
    double const st = polar_sine(theta);
    Vec3 const khat{st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
    auto const basis = corrected_polarization(khat, bg);
    return PhotonMode::with_vector(k, theta, phi, CVec3(index == 1 ? basis.e1 : basis.e2));
}

}  // namespace unruh
