// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "test_support.hpp"
#include "unruh/errors.hpp"
#include "unruh/units.hpp"

namespace unruh {
namespace {

using testing::Generator;
using testing::kPi;
using testing::relative;

constexpr std::array kAllUnits{
    Unit::natural,      Unit::second,           Unit::femtosecond,      Unit::attosecond, Unit::meter,
    Unit::nanometer,    Unit::volt_per_meter,   Unit::schwinger,        Unit::electronvolt,
    Unit::kiloelectronvolt, Unit::megaelectronvolt, Unit::watt_per_cm2, Unit::kelvin,     Unit::radian,
    Unit::degree,
};

TEST(Constants, DerivedChainIsExact)
{
    auto const& c = Constants::codata();
    EXPECT_DOUBLE_EQ(c.q, std::sqrt(4 * kPi * c.alpha_qed));
    EXPECT_DOUBLE_EQ(c.g, c.q * c.q / c.m);
    EXPECT_DOUBLE_EQ(c.schwinger_field, c.m * c.m / c.q);
}

TEST(Constants, ChargeValue)
{
    // sqrt(4 pi 0.0072973525) = 0.302822...
    EXPECT_NEAR(Constants::codata().q, 0.30282, 1e-4);
}

TEST(Constants, CouplingLengthInMeters)
{
    double const g_m = from_natural(Constants::codata().g, Unit::meter);
    EXPECT_LT(relative(g_m, 3.5e-14), 0.03) << g_m;
    // Classical electron radius times 4 pi: 4 pi * 2.8179403e-15 m.
    EXPECT_LT(relative(g_m, 4 * kPi * 2.8179403262e-15), 1e-8);
}

TEST(Constants, SchwingerFieldInVoltPerMeter)
{
    double const es = from_natural(Constants::codata().schwinger_field, Unit::volt_per_meter);
    EXPECT_LT(relative(es, 1.3e18), 0.03) << es;
    // m^2 c^3 / (e hbar) in SI.
    double const si = 9.1093837015e-31 * 9.1093837015e-31 * std::pow(299792458.0, 3)
                      / (1.602176634e-19 * 1.054571817e-34);
    EXPECT_LT(relative(es, si), 1e-8);
}

TEST(Units, ZeroMapsToZero)
{
    for (Unit u : kAllUnits)
    {
        EXPECT_EQ(to_natural(0.0, u), 0.0);
        EXPECT_EQ(from_natural(0.0, u), 0.0);
    }
}

TEST(Units, RoundTripProperty)
{
    Generator gen(0x756e697473ULL);
    for (int i = 0; i < 2000; ++i)
    {
        double const v = (gen.integer(0, 1) ? 1 : -1) * gen.log_uniform(1e-30, 1e30);
        for (Unit u : kAllUnits)
        {
            double const back = from_natural(to_natural(v, u), u);
            ASSERT_LE(relative(back, v), 1e-14) << unit_name(u) << " " << v;
        }
    }
}

TEST(Units, KnownConversions)
{
    // 1 as = 1e-18 s; hbar = 6.582119569e-16 eV s.
    EXPECT_LT(relative(to_natural(1, Unit::attosecond), 1e-18 / 6.582119569e-16), 1e-14);
    EXPECT_LT(relative(to_natural(1, Unit::femtosecond), 1000 * to_natural(1, Unit::attosecond)), 1e-14);
    EXPECT_LT(relative(to_natural(1, Unit::nanometer), 1e-9 * to_natural(1, Unit::meter)), 1e-14);
    EXPECT_EQ(to_natural(2.5, Unit::kiloelectronvolt), 2500.0);
    EXPECT_EQ(to_natural(1, Unit::schwinger), Constants::codata().schwinger_field);
    EXPECT_LT(relative(to_natural(180, Unit::degree), kPi), 1e-15);
    EXPECT_LT(relative(from_natural(to_natural(1, Unit::kelvin), Unit::electronvolt), 8.617333262e-5), 1e-14);
}

TEST(Units, IntensityFromFieldEnergyDensity)
{
    // I = E^2 in Heaviside-Lorentz units with c = 1, eps0 c E^2 in SI.
    double const es = Constants::codata().schwinger_field;
    double const w_cm2 = from_natural(es * es, Unit::watt_per_cm2);
    double const es_si = from_natural(es, Unit::volt_per_meter);
    double const si = 8.8541878128e-12 * 299792458.0 * es_si * es_si * 1e-4;
    EXPECT_LT(relative(w_cm2, si), 1e-8);
}

TEST(Units, ParseTags)
{
    EXPECT_EQ(parse_unit("as"), Unit::attosecond);
    EXPECT_EQ(parse_unit("keV"), Unit::kiloelectronvolt);
    EXPECT_EQ(parse_unit("V/m"), Unit::volt_per_meter);
    EXPECT_EQ(parse_unit("E_S"), Unit::schwinger);
    EXPECT_EQ(parse_unit("W/cm2"), Unit::watt_per_cm2);
    EXPECT_EQ(parse_unit("deg"), Unit::degree);
    for (Unit u : kAllUnits)
        EXPECT_EQ(parse_unit(unit_name(u)), u);
    EXPECT_THROW(parse_unit("furlong"), InvalidArgument);
    EXPECT_THROW(parse_unit("AS"), InvalidArgument);
}

TEST(Units, ParseQuantity)
{
    auto const q = parse_quantity(" 0.3 as ");
    EXPECT_EQ(q.value, 0.3);
    EXPECT_EQ(q.unit, Unit::attosecond);
    EXPECT_EQ(parse_quantity("2.5").unit, Unit::natural);
    EXPECT_EQ(parse_quantity("30 keV").natural(), 30000.0);
    EXPECT_THROW(parse_quantity("fast"), InvalidArgument);
    EXPECT_THROW(parse_quantity("1 parsec"), InvalidArgument);
    EXPECT_THROW(parse_quantity(""), InvalidArgument);
}

TEST(Units, Dimensions)
{
    EXPECT_EQ(unit_dimension(Unit::attosecond), Dimension::time);
    EXPECT_EQ(unit_dimension(Unit::schwinger), Dimension::field);
    EXPECT_EQ(unit_dimension(Unit::watt_per_cm2), Dimension::intensity);
    EXPECT_EQ(unit_dimension(Unit::degree), Dimension::angle);
}

}  // namespace
}  // namespace unruh
