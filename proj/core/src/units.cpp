// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include "unruh/units.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>

#include "unruh/errors.hpp"

namespace unruh {
namespace {

Constants make_codata()
{
    Constants c{};
    c.alpha_qed = 7.2973525693e-3;
    c.q = std::sqrt(4 * std::numbers::pi * c.alpha_qed);
    c.m = 510998.95;
    c.g = c.q * c.q / c.m;
    c.schwinger_field = c.m * c.m / c.q;
    c.hbar_ev_s = 6.582119569e-16;
    c.hbar_c_ev_m = 1.973269804e-7;
    c.joule_per_ev = 1.602176634e-19;
    c.boltzmann_ev_per_k = 8.617333262e-5;
    return c;
}

struct UnitInfo
{
    Unit unit;
    std::string_view name;
    Dimension dim;
};

constexpr std::array<UnitInfo, 15> kUnits{{
    {Unit::natural, "natural", Dimension::dimensionless},
    {Unit::second, "s", Dimension::time},
    {Unit::femtosecond, "fs", Dimension::time},
    {Unit::attosecond, "as", Dimension::time},
    {Unit::meter, "m", Dimension::length},
    {Unit::nanometer, "nm", Dimension::length},
    {Unit::volt_per_meter, "V/m", Dimension::field},
    {Unit::schwinger, "E_S", Dimension::field},
    {Unit::electronvolt, "eV", Dimension::energy},
    {Unit::kiloelectronvolt, "keV", Dimension::energy},
    {Unit::megaelectronvolt, "MeV", Dimension::energy},
    {Unit::watt_per_cm2, "W/cm2", Dimension::intensity},
    {Unit::kelvin, "K", Dimension::temperature},
    {Unit::radian, "rad", Dimension::angle},
    {Unit::degree, "deg", Dimension::angle},
}};

// Multiplicative factor lab -> natural.
double factor(Unit u)
{
    auto const& c = Constants::codata();
    switch (u)
    {
        case Unit::natural:
        case Unit::electronvolt:
        case Unit::radian:
            return 1.0;
        case Unit::second:
            return 1.0 / c.hbar_ev_s;
        case Unit::femtosecond:
            return 1e-15 / c.hbar_ev_s;
        case Unit::attosecond:
            return 1e-18 / c.hbar_ev_s;
        case Unit::meter:
            return 1.0 / c.hbar_c_ev_m;
        case Unit::nanometer:
            return 1e-9 / c.hbar_c_ev_m;
        case Unit::volt_per_meter:
            // Force e*E[V/m] = E eV/m = E * hbar_c eV^2 = q * E_nat.
            return c.hbar_c_ev_m / c.q;
        case Unit::schwinger:
            return c.schwinger_field;
        case Unit::kiloelectronvolt:
            return 1e3;
        case Unit::megaelectronvolt:
            return 1e6;
        case Unit::watt_per_cm2:
        {
            double const hbar_c_ev_cm = c.hbar_c_ev_m * 1e2;
            return c.hbar_ev_s * hbar_c_ev_cm * hbar_c_ev_cm / c.joule_per_ev;
        }
        case Unit::kelvin:
            return c.boltzmann_ev_per_k;
        case Unit::degree:
            return std::numbers::pi / 180.0;
    }
    throw InvalidArgument("unknown unit");
}

}  // namespace

Constants const& Constants::codata()
{
    static Constants const instance = make_codata();
    return instance;
}

Unit parse_unit(std::string_view tag)
{
    for (auto const& info : kUnits)
    {
        if (info.name == tag)
            return info.unit;
    }
    // A few common spellings.
    static constexpr std::array<std::pair<std::string_view, Unit>, 6> aliases{{
        {"W/cm^2", Unit::watt_per_cm2},
        {"sec", Unit::second},
        {"degree", Unit::degree},
        {"degrees", Unit::degree},
        {"Es", Unit::schwinger},
        {"", Unit::natural},
    }};
    for (auto const& [name, unit] : aliases)
    {
        if (name == tag)
            return unit;
    }
    throw InvalidArgument("unknown unit tag '" + std::string(tag) + "'");
}

std::string_view unit_name(Unit u)
{
    for (auto const& info : kUnits)
    {
        if (info.unit == u)
            return info.name;
    }
    return "?";
}

Dimension unit_dimension(Unit u)
{
    for (auto const& info : kUnits)
    {
        if (info.unit == u)
            return info.dim;
    }
    throw InvalidArgument("unknown unit");
}

double to_natural(double value, Unit u) { return value * factor(u); }

double from_natural(double value, Unit u) { return value / factor(u); }

Quantity parse_quantity(std::string_view text)
{
    auto trim = [](std::string_view s) {
        auto const b = s.find_first_not_of(" \t");
        if (b == std::string_view::npos)
            return std::string_view{};
        auto const e = s.find_last_not_of(" \t");
        return s.substr(b, e - b + 1);
    };
    text = trim(text);
    double value{};
    auto const* first = text.data();
    auto const* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || !std::isfinite(value))
        throw InvalidArgument("malformed quantity '" + std::string(text) + "'");
    return Quantity{value, parse_unit(trim(std::string_view(ptr, last - ptr)))};
}

}  // namespace unruh
