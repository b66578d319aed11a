// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
//! \file units.hpp
//! Natural-unit system (hbar = c = eps0 = mu0 = 1, Heaviside-Lorentz) with
//! energies measured in eV. Times and lengths are in 1/eV, fields in eV^2.
#pragma once

#include <string>
#include <string_view>

namespace unruh {

//! Physical constants in natural units (CODATA 2018).
struct Constants
{
    double alpha_qed;       //!< fine-structure constant
    double q;               //!< electron charge, sqrt(4 pi alpha)
    double m;               //!< electron mass [eV]
    double g;               //!< scattering length q^2/m [1/eV]
    double schwinger_field; //!< E_S = m^2/q [eV^2]

    double hbar_ev_s;       //!< [eV s]: 1 s = 1/hbar_ev_s [1/eV]
    double hbar_c_ev_m;     //!< [eV m]: 1 m = 1/hbar_c_ev_m [1/eV]
    double joule_per_ev;
    double boltzmann_ev_per_k;

    //! Reference constants (immutable, shared).
    static Constants const& codata();
};

//! Dimension of a laboratory unit.
enum class Dimension
{
    time,
    length,
    field,
    energy,
    intensity,
    temperature,
    angle,
    dimensionless,
};

//! Laboratory unit tags understood by the conversion layer.
enum class Unit
{
    natural,  //!< already in natural units, any dimension
    second,
    femtosecond,
    attosecond,
    meter,
    nanometer,
    volt_per_meter,
    schwinger,  //!< fraction of the Schwinger field
    electronvolt,
    kiloelectronvolt,
    megaelectronvolt,
    watt_per_cm2,
    kelvin,
    radian,
    degree,
};

//! Parse a unit tag ("as", "keV", "V/m", "E_S", "W/cm2", "deg", ...).
//! Throws InvalidArgument for unknown tags.
Unit parse_unit(std::string_view tag);

std::string_view unit_name(Unit u);
Dimension unit_dimension(Unit u);

//! Convert a laboratory value to natural units (powers of eV).
double to_natural(double value, Unit u);
//! Inverse of to_natural.
double from_natural(double value, Unit u);

//! A value with its laboratory unit tag.
struct Quantity
{
    double value{0};
    Unit unit{Unit::natural};

    double natural() const { return to_natural(value, unit); }
};

//! Parse "<number> [unit]" (e.g. "0.3 as", "30 keV", "2.5").
Quantity parse_quantity(std::string_view text);

}  // namespace unruh
