// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
//! \file kinematics.hpp
//! One-dimensional relativistic motion along the field axis and the
//! retarded-time map tau = t - c z(t).
//!
//! The proper velocity u = gamma*beta is evaluated exactly from the field
//! integral. Position z(t) and the lag s(t) = t - z(t) are tabulated by
//! Gauss-Legendre integration of beta and 1 - beta and interpolated with
//! quintic Hermite polynomials (value, slope and curvature are all known).
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "unruh/pulse.hpp"
#include "unruh/vec3.hpp"

namespace unruh {

struct TimeWindow
{
    double begin{0};
    double end{0};
};

struct SamplingPolicy
{
    //! Largest oscillation frequency the caller will integrate against.
    double max_wavenumber{0};
    std::size_t min_samples{1024};
    std::size_t max_samples{1u << 23};
};

struct TrajectorySample
{
    double t;
    double z;
    double beta;
    double gamma;
};

//! Proper-velocity law u(t) and its time derivative.
struct VelocityLaw
{
    std::function<double(double)> proper_velocity;
    std::function<double(double)> acceleration;
    //! Smallest time scale on which the law changes.
    double time_scale{1};
    //! Points where the acceleration jumps.
    std::vector<double> kinks;
};

class Trajectory
{
  public:
    //! Motion in the pulse starting with proper velocity u0. The window must
    //! cover the pulse until |E| < 1e-12 E0 at both ends.
    static Trajectory solve(PulseProfile const& pulse, double u0, TimeWindow window,
                            SamplingPolicy const& sampling = {});

    //! Motion with a prescribed proper-velocity law (constant outside the window).
    static Trajectory from_law(VelocityLaw law, TimeWindow window, SamplingPolicy const& sampling = {});

    static Trajectory at_rest(TimeWindow window);

    //! Direction of motion; photon angles are measured from it.
    static Vec3 axis() { return {0, 0, 1}; }

    double proper_velocity(double t) const;
    //! du/dt = qE/m
    double acceleration(double t) const;
    double beta(double t) const;
    double gamma(double t) const;
    double position(double t) const;
    //! t - z(t), accurate when beta is close to one.
    double lag(double t) const;

    double t_begin() const { return t_.front(); }
    double t_end() const { return t_.back(); }
    double u_begin() const { return u_.front(); }
    double u_end() const { return u_.back(); }
    double gamma_max() const { return gamma_max_; }
    std::span<double const> kinks() const { return kinks_; }
    std::size_t sample_count() const { return t_.size(); }
    std::vector<TrajectorySample> samples() const;
    //! True when u(t) is identically zero.
    bool is_static() const { return static_; }

  private:
    Trajectory() = default;
    void build(TimeWindow window, SamplingPolicy const& sampling);
    std::size_t interval(double t) const;

    VelocityLaw law_;
    std::vector<double> kinks_;
    std::vector<double> t_, u_, z_, s_;
    std::vector<double> acc_right_, acc_left_;  // one-sided du/dt at nodes
    std::vector<double> beta_, lag_rate_;        // beta and 1 - beta at nodes
    std::vector<double> bdot_right_, bdot_left_; // one-sided dbeta/dt at nodes
    double gamma_max_{1};
    bool static_{false};

    friend class RetardedTimeMap;
};

//! Weight c of a direction against the axis, with 1 - c and 1 + c kept
//! accurate for nearly (anti)parallel directions.
struct DirectionWeight
{
    double c{0};
    double one_minus{1};
    double one_plus{1};

    static DirectionWeight from_cosine(double c);
    static DirectionWeight from_angle(double theta);
    //! (k1 cos(theta1) + k2 cos(theta2)) / (k1 + k2)
    static DirectionWeight pair(double k1, double theta1, double k2, double theta2);
};

//! 1 - c*beta computed without cancellation.
double doppler_denominator(DirectionWeight const& w, double u);

//! Lorentz factor for proper velocity u (in units of c).
inline double lorentz_factor(double u) { return std::sqrt(std::fma(u, u, 1.0)); }

class RetardedTimeMap
{
  public:
    //! Throws InvalidArgument when |c| > 1.
    RetardedTimeMap(Trajectory const& traj, DirectionWeight weight);

    double tau(double t) const;
    //! Inverse of tau(t).
    double time(double tau) const;
    //! Inverse of tau(t) starting the interval search at `hint`, which is
    //! updated; for sequences of nearby evaluations by one thread.
    double time(double tau, std::size_t& hint) const;
    double dtau_dt(double t) const;
    double jacobian_at_tau(double tau) const { return 1 / dtau_dt(time(tau)); }
    DirectionWeight const& weight() const { return w_; }
    static constexpr bool monotone() { return true; }

  private:
    double tau_node(std::size_t i) const;
    std::size_t locate(double tau, std::size_t hint) const;
    double local_time(std::size_t i, double tau) const;

    Trajectory const* traj_;  // not owned; must outlive the map
    DirectionWeight w_;
};

//! Peak field that brings a particle from u0 to gamma_target by the end of
//! the pulse shape (the peak of `shape` is ignored).
double peak_field_for_gamma(PulseProfile const& shape, double u0, double gamma_target);

struct CutoffEstimate
{
    double primary;      //!< gamma_max^2 / length
    double alternative;  //!< gamma_max q E0 / m
};

CutoffEstimate cutoff_wavenumber(Trajectory const& traj, PulseProfile const& pulse);

//! Default window: the pulse where |E| >= 1e-13 E0, widened by a
//! quarter length on each side for compact shapes so the tabulated motion includes free segments.
TimeWindow default_window(PulseProfile const& pulse);

}  // namespace unruh
