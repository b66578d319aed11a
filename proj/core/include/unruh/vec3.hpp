// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace unruh {

using complex = std::complex<double>;

struct Vec3
{
    double x{0}, y{0}, z{0};

    constexpr Vec3 operator+(Vec3 const& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(Vec3 const& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

constexpr Vec3 operator*(double s, Vec3 const& v) { return v * s; }
constexpr double dot(Vec3 const& a, Vec3 const& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(Vec3 const& a, Vec3 const& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 const& v) { return std::sqrt(dot(v, v)); }
inline Vec3 normalized(Vec3 const& v) { return v / norm(v); }

//! sin(theta) for a polar angle in [0, pi]. pi - theta is exact for
//! theta >= pi/2, so the backward axis gives an exact zero.
inline double polar_sine(double theta)
{
    constexpr double pi = 3.141592653589793238462643383279502884;
    return theta > pi / 2 ? std::sin(pi - theta) : std::sin(theta);
}

//! Complex 3-vector, used for (possibly circular) polarization vectors.
struct CVec3
{
    complex x{}, y{}, z{};

    CVec3() = default;
    CVec3(complex a, complex b, complex c) : x(a), y(b), z(c) {}
    explicit CVec3(Vec3 const& v) : x(v.x), y(v.y), z(v.z) {}

    CVec3 operator+(CVec3 const& o) const { return {x + o.x, y + o.y, z + o.z}; }
    CVec3 operator-(CVec3 const& o) const { return {x - o.x, y - o.y, z - o.z}; }
    CVec3 operator*(complex s) const { return {x * s, y * s, z * s}; }
};

//! Bilinear (unconjugated) product a.b
inline complex bilinear(CVec3 const& a, CVec3 const& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline complex bilinear(CVec3 const& a, Vec3 const& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
//! Hermitian product conj(a).b
inline complex hermitian(CVec3 const& a, CVec3 const& b)
{
    return std::conj(a.x) * b.x + std::conj(a.y) * b.y + std::conj(a.z) * b.z;
}

}  // namespace unruh
