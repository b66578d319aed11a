// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include "unruh_cli/run_config.hpp"

#include <cmath>
#include <initializer_list>
#include <set>

#include "unruh/errors.hpp"
#include "unruh/units.hpp"

namespace unruh::cli {
namespace {

// Reads the keys of one section and remembers which were used, so that
// leftovers can be reported as unknown.
class SectionReader
{
  public:
    SectionReader(ConfigDocument const& doc, std::string name) : name_(std::move(name))
    {
        auto const it = doc.sections.find(name_);
        if (it != doc.sections.end())
            section_ = &it->second;
    }

    bool present() const { return section_ != nullptr; }
    int line() const { return section_ ? section_->line : 0; }

    ConfigValue const* find(std::string const& key)
    {
        if (!section_)
            return nullptr;
        auto const it = section_->entries.find(key);
        if (it == section_->entries.end())
            return nullptr;
        used_.insert(key);
        return &it->second;
    }

    [[noreturn]] void fail(ConfigValue const& v, std::string const& key, std::string const& message) const
    {
        throw ConfigError(v.line, "[" + name_ + "] " + key + ": " + message);
    }

    [[noreturn]] void missing(std::string const& key) const
    {
        throw ConfigError(line(), "[" + name_ + "] missing required key '" + key + "'");
    }

    void finish() const
    {
        if (!section_)
            return;
        for (auto const& [key, value] : section_->entries)
        {
            if (!used_.count(key))
                throw ConfigError(value.line, "[" + name_ + "] unknown key '" + key + "'");
        }
    }

    std::optional<double> number(std::string const& key)
    {
        auto const* v = find(key);
        if (!v)
            return std::nullopt;
        if (!v->is_number())
            fail(*v, key, "expected a number, got " + std::string(v->type_name()));
        return as_double(*v);
    }

    std::optional<bool> boolean(std::string const& key)
    {
        auto const* v = find(key);
        if (!v)
            return std::nullopt;
        if (!v->is_bool())
            fail(*v, key, "expected true or false, got " + std::string(v->type_name()));
        return std::get<bool>(v->data);
    }

    std::optional<std::string> string(std::string const& key)
    {
        auto const* v = find(key);
        if (!v)
            return std::nullopt;
        if (!v->is_string())
            fail(*v, key, "expected a string, got " + std::string(v->type_name()));
        return std::get<std::string>(v->data);
    }

    std::optional<std::size_t> count(std::string const& key, std::size_t minimum)
    {
        auto const* v = find(key);
        if (!v)
            return std::nullopt;
        if (!v->is_integer())
            fail(*v, key, "expected an integer, got " + std::string(v->type_name()));
        auto const n = std::get<std::int64_t>(v->data);
        if (n < static_cast<std::int64_t>(minimum))
            fail(*v, key, "must be at least " + std::to_string(minimum));
        return static_cast<std::size_t>(n);
    }

    //! A number (natural units) or a "<value> <unit>" string whose unit has
    //! one of the allowed dimensions.
    std::optional<double> quantity(std::string const& key, std::initializer_list<Dimension> dims)
    {
        auto const* v = find(key);
        if (!v)
            return std::nullopt;
        return convert(*v, key, dims);
    }

    std::optional<std::vector<double>> quantity_list(std::string const& key,
                                                     std::initializer_list<Dimension> dims)
    {
        auto const* v = find(key);
        if (!v)
            return std::nullopt;
        if (!v->is_array())
            fail(*v, key, "expected an array, got " + std::string(v->type_name()));
        auto const& items = std::get<ConfigArray>(v->data);
        if (items.empty())
            fail(*v, key, "array must not be empty");
        std::vector<double> out;
        for (auto const& item : items)
            out.push_back(convert(item, key, dims));
        return out;
    }

    double convert(ConfigValue const& v, std::string const& key, std::initializer_list<Dimension> dims) const
    {
        if (v.is_number())
            return as_double(v);
        if (!v.is_string())
            fail(v, key, "expected a number or a \"<value> <unit>\" string");
        Quantity q;
        try
        {
            q = parse_quantity(std::get<std::string>(v.data));
        }
        catch (InvalidArgument const& e)
        {
            fail(v, key, e.what());
        }
        if (q.unit != Unit::natural)
        {
            bool ok = false;
            for (auto d : dims)
                ok = ok || unit_dimension(q.unit) == d;
            if (!ok)
                fail(v, key, "unit '" + std::string(unit_name(q.unit)) + "' has the wrong dimension");
        }
        return q.natural();
    }

  private:
    static double as_double(ConfigValue const& v)
    {
        return v.is_integer() ? static_cast<double>(std::get<std::int64_t>(v.data)) : std::get<double>(v.data);
    }

    std::string name_;
    ConfigSection const* section_{nullptr};
    std::set<std::string> used_;
};

constexpr auto kTime = {Dimension::time};
constexpr auto kField = {Dimension::field};
constexpr auto kEnergy = {Dimension::energy};
constexpr auto kAngle = {Dimension::angle};

template <class F>
auto with_line(SectionReader const& r, std::string const& key, ConfigValue const* v, F&& f)
{
    try
    {
        return f();
    }
    catch (InvalidArgument const& e)
    {
        throw ConfigError(v ? v->line : r.line(), "[" + std::string(key) + "] " + e.what());
    }
}

void require_positive(SectionReader& r, std::string const& key, double value)
{
    if (!(value > 0) || !std::isfinite(value))
        r.fail(*r.find(key), key, "must be positive");
}

PulseSection read_pulse(ConfigDocument const& doc)
{
    SectionReader r(doc, "pulse");
    if (!r.present())
        throw ConfigError(0, "missing required section [pulse]");
    PulseSection p;
    if (auto s = r.string("shape"))
        p.shape = with_line(r, "pulse", r.find("shape"), [&] { return parse_shape(*s); });
    p.peak_field = r.quantity("peak_field", kField);
    p.gamma_max = r.number("gamma_max");
    if (p.peak_field.has_value() == p.gamma_max.has_value())
        throw ConfigError(r.line(), "[pulse] set exactly one of 'peak_field' and 'gamma_max'");
    if (p.gamma_max && !(*p.gamma_max > 1))
        r.fail(*r.find("gamma_max"), "gamma_max", "must exceed 1");
    if (p.peak_field && !(*p.peak_field >= 0))
        r.fail(*r.find("peak_field"), "peak_field", "must not be negative");
    auto const length = r.quantity("length", kTime);
    if (!length)
        r.missing("length");
    require_positive(r, "length", *length);
    p.length = *length;
    if (auto rise = r.quantity("rise_time", kTime))
    {
        if (p.shape != PulseShape::smooth_front)
            r.fail(*r.find("rise_time"), "rise_time", "only used by the smooth_front shape");
        require_positive(r, "rise_time", *rise);
        p.rise_time = *rise;
    }
    else if (p.shape == PulseShape::smooth_front)
    {
        r.missing("rise_time");
    }
    p.center = r.quantity("center", kTime).value_or(0);
    r.finish();
    return p;
}

ElectronSection read_electron(ConfigDocument const& doc)
{
    SectionReader r(doc, "electron");
    ElectronSection e;
    e.u0 = r.number("u0").value_or(0);
    r.finish();
    return e;
}

TrajectorySection read_trajectory(ConfigDocument const& doc)
{
    SectionReader r(doc, "trajectory");
    TrajectorySection t;
    t.samples = r.count("samples", 2).value_or(t.samples);
    t.max_wavenumber = r.quantity("max_wavenumber", kEnergy);
    if (t.max_wavenumber)
        require_positive(r, "max_wavenumber", *t.max_wavenumber);
    r.finish();
    return t;
}

std::optional<MapSection> read_map(ConfigDocument const& doc)
{
    SectionReader r(doc, "map");
    if (!r.present())
        return std::nullopt;
    MapSection m;
    auto const k_min = r.quantity("k_min", kEnergy);
    auto const k_max = r.quantity("k_max", kEnergy);
    if (!k_min)
        r.missing("k_min");
    if (!k_max)
        r.missing("k_max");
    require_positive(r, "k_min", *k_min);
    if (!(*k_max > *k_min))
        r.fail(*r.find("k_max"), "k_max", "grid must be increasing (k_max > k_min)");
    m.k_min = *k_min;
    m.k_max = *k_max;
    auto const nk = r.count("k_points", 1);
    if (!nk)
        r.missing("k_points");
    m.k_points = *nk;
    if (auto s = r.string("k_spacing"))
    {
        if (*s == "linear")
            m.k_spacing = Spacing::linear;
        else if (*s == "log")
            m.k_spacing = Spacing::log;
        else
            r.fail(*r.find("k_spacing"), "k_spacing", "expected \"linear\" or \"log\"");
    }
    m.theta_points = r.count("theta_points", 2).value_or(0);
    if (auto s = r.string("theta_spacing"))
    {
        if (*s == "uniform")
            m.theta_spacing = AngleSpacing::uniform;
        else if (*s == "axis_refined")
            m.theta_spacing = AngleSpacing::axis_refined;
        else
            r.fail(*r.find("theta_spacing"), "theta_spacing", "expected \"uniform\" or \"axis_refined\"");
    }
    if (auto s = r.string("pairing"))
        m.pairing = with_line(r, "map", r.find("pairing"), [&] { return parse_pairing(*s); });
    if (auto s = r.string("polarization"))
    {
        m.polarization = with_line(r, "map", r.find("polarization"), [&] { return parse_polarization(*s); });
        if (m.polarization == Polarization::custom)
            r.fail(*r.find("polarization"), "polarization", "custom vectors are not configurable");
    }
    if (auto s = r.string("method"))
    {
        if (*s == "retarded")
            m.method = Method::retarded;
        else if (*s == "time_domain")
            m.method = Method::time_domain;
        else
            r.fail(*r.find("method"), "method", "expected \"retarded\" or \"time_domain\"");
    }
    m.phi = r.quantity("phi", kAngle).value_or(0);
    m.window = r.quantity("window", kTime);
    if (m.window)
        require_positive(r, "window", *m.window);
    else if (m.theta_points == 0)
        r.missing("theta_points");
    r.finish();
    return m;
}

std::optional<ConeSection> read_cone(ConfigDocument const& doc)
{
    SectionReader r(doc, "cone");
    if (!r.present())
        return std::nullopt;
    ConeSection c;
    if (auto v = r.quantity_list("k_ref", kEnergy))
        c.k_ref = *v;
    if (auto v = r.quantity_list("k_ref_fraction", {}))
        c.k_ref_fraction = *v;
    if (c.k_ref.empty() == c.k_ref_fraction.empty())
        throw ConfigError(r.line(), "[cone] set exactly one of 'k_ref' and 'k_ref_fraction'");
    for (double k : c.k_ref)
    {
        if (!(k > 0))
            r.fail(*r.find("k_ref"), "k_ref", "wavenumbers must be positive");
    }
    for (double f : c.k_ref_fraction)
    {
        if (!(f > 0))
            r.fail(*r.find("k_ref_fraction"), "k_ref_fraction", "fractions must be positive");
    }
    c.forward = r.boolean("forward").value_or(true);
    c.backward = r.boolean("backward").value_or(true);
    if (!c.forward && !c.backward)
        throw ConfigError(r.line(), "[cone] at least one of forward/backward must be true");
    c.scan_points = r.count("scan_points", 4).value_or(c.scan_points);
    r.finish();
    return c;
}

std::optional<ProbabilitySection> read_probability(ConfigDocument const& doc)
{
    SectionReader r(doc, "probability");
    if (!r.present())
        return std::nullopt;
    ProbabilitySection p;
    p.theta_max = r.quantity("theta_max", kAngle);
    if (p.theta_max && !(*p.theta_max > 0 && *p.theta_max < std::acos(-1.0) / 2))
        r.fail(*r.find("theta_max"), "theta_max", "must lie in (0, 90 deg)");
    p.k_max = r.quantity("k_max", kEnergy);
    if (p.k_max)
        require_positive(r, "k_max", *p.k_max);
    p.k_max_fraction = r.number("k_max_fraction").value_or(p.k_max_fraction);
    require_positive(r, "k_max_fraction", p.k_max_fraction);
    p.k_min = r.quantity("k_min", kEnergy);
    if (p.k_min)
        require_positive(r, "k_min", *p.k_min);
    p.k_min_fraction = r.number("k_min_fraction").value_or(p.k_min_fraction);
    require_positive(r, "k_min_fraction", p.k_min_fraction);
    p.pair = r.boolean("pair").value_or(true);
    p.single = r.boolean("single").value_or(true);
    r.finish();
    return p;
}

std::optional<SweepSection> read_sweep(ConfigDocument const& doc)
{
    SectionReader r(doc, "sweep");
    if (!r.present())
        return std::nullopt;
    SweepSection s;
    auto const name = r.string("parameter");
    if (!name)
        r.missing("parameter");
    std::initializer_list<Dimension> dims{};
    if (*name == "peak_field")
    {
        s.parameter = SweepParameter::peak_field;
        dims = kField;
    }
    else if (*name == "gamma_max")
        s.parameter = SweepParameter::gamma_max;
    else if (*name == "length")
    {
        s.parameter = SweepParameter::length;
        dims = kTime;
    }
    else if (*name == "u0")
        s.parameter = SweepParameter::u0;
    else
        r.fail(*r.find("parameter"), "parameter", "expected peak_field, gamma_max, length or u0");
    auto const values = r.quantity_list("values", dims);
    if (!values)
        r.missing("values");
    s.values = *values;
    for (double v : s.values)
    {
        bool ok = std::isfinite(v);
        if (s.parameter == SweepParameter::gamma_max)
            ok = ok && v > 1;
        else if (s.parameter != SweepParameter::u0)
            ok = ok && v > 0;
        if (!ok)
            r.fail(*r.find("values"), "values", "value out of range for " + *name);
    }
    r.finish();
    return s;
}

std::optional<SlopesSection> read_slopes(ConfigDocument const& doc)
{
    SectionReader r(doc, "slopes");
    if (!r.present())
        return std::nullopt;
    SlopesSection s;
    s.theta = r.quantity("theta", kAngle).value_or(0);
    s.k_lo_fraction = r.number("k_lo_fraction").value_or(s.k_lo_fraction);
    s.k_hi_fraction = r.number("k_hi_fraction").value_or(s.k_hi_fraction);
    require_positive(r, "k_lo_fraction", s.k_lo_fraction);
    if (!(s.k_hi_fraction > s.k_lo_fraction))
        throw ConfigError(r.line(), "[slopes] k_hi_fraction must exceed k_lo_fraction");
    s.points = r.count("points", 2).value_or(s.points);
    r.finish();
    return s;
}

Vec3 read_vector(SectionReader& r, std::string const& key)
{
    auto const v = r.quantity_list(key, kField);
    if (!v)
        return {};
    if (v->size() != 3)
        r.fail(*r.find(key), key, "expected three components");
    return {(*v)[0], (*v)[1], (*v)[2]};
}

std::optional<VacuumSection> read_vacuum(ConfigDocument const& doc)
{
    SectionReader r(doc, "vacuum");
    if (!r.present())
        return std::nullopt;
    VacuumSection v;
    v.e_field = read_vector(r, "e_field");
    v.b_field = read_vector(r, "b_field");
    auto const k = r.quantity("k", kEnergy);
    if (!k)
        r.missing("k");
    require_positive(r, "k", *k);
    v.k = *k;
    v.theta_points = r.count("theta_points", 2).value_or(v.theta_points);
    v.phi = r.quantity("phi", kAngle).value_or(0);
    r.finish();
    return v;
}

AnalysisSection read_analysis(ConfigDocument const& doc)
{
    SectionReader r(doc, "analysis");
    AnalysisSection a;
    a.cone = r.boolean("cone").value_or(a.cone);
    a.probability = r.boolean("probability").value_or(a.probability);
    a.slopes = r.boolean("slopes").value_or(a.slopes);
    a.temperature = r.boolean("temperature").value_or(a.temperature);
    a.vacuum = r.boolean("vacuum").value_or(a.vacuum);
    r.finish();
    return a;
}

OutputSection read_output(ConfigDocument const& doc)
{
    SectionReader r(doc, "output");
    OutputSection o;
    if (auto d = r.string("directory"))
    {
        if (d->empty())
            r.fail(*r.find("directory"), "directory", "must not be empty");
        o.directory = *d;
    }
    if (auto const* v = r.find("formats"))
    {
        if (!v->is_array() || std::get<ConfigArray>(v->data).empty())
            r.fail(*v, "formats", "expected a non-empty array of strings");
        o.csv = o.pgm = false;
        for (auto const& item : std::get<ConfigArray>(v->data))
        {
            if (!item.is_string())
                r.fail(item, "formats", "expected strings");
            auto const& s = std::get<std::string>(item.data);
            if (s == "csv")
                o.csv = true;
            else if (s == "pgm")
                o.pgm = true;
            else
                r.fail(item, "formats", "unknown format '" + s + "' (csv, pgm)");
        }
        if (!o.csv)
            r.fail(*v, "formats", "csv is the authoritative output and cannot be disabled");
    }
    r.finish();
    return o;
}

ToleranceSection read_tolerance(ConfigDocument const& doc)
{
    SectionReader r(doc, "tolerance");
    ToleranceSection t;
    auto read = [&r](char const* key, double& target, bool allow_zero) {
        if (auto v = r.number(key))
        {
            if (!(allow_zero ? *v >= 0 : *v > 0) || !std::isfinite(*v))
                r.fail(*r.find(key), key, allow_zero ? "must not be negative" : "must be positive");
            target = *v;
        }
    };
    read("amplitude_rel", t.amplitude_rel, true);
    read("amplitude_abs", t.amplitude_abs, true);
    read("amplitude_norm_rel", t.amplitude_norm_rel, true);
    read("probability_rel", t.probability_rel, false);
    read("cone_rel", t.cone_rel, false);
    if (t.amplitude_rel == 0 && t.amplitude_abs == 0 && t.amplitude_norm_rel == 0)
        throw ConfigError(r.line(), "[tolerance] amplitude tolerances must not all be zero");
    r.finish();
    return t;
}

}  // namespace

std::string_view sweep_parameter_name(SweepParameter p)
{
    switch (p)
    {
    case SweepParameter::peak_field: return "peak_field";
    case SweepParameter::gamma_max: return "gamma_max";
    case SweepParameter::length: return "length";
    case SweepParameter::u0: return "u0";
    }
    return "?";
}

RunConfig load_run_config(ConfigDocument const& doc)
{
    static std::set<std::string> const known{"pulse",  "electron", "trajectory", "map",      "cone",
                                             "probability", "sweep", "slopes",   "vacuum",
                                             "analysis", "output", "tolerance"};
    for (auto const& [name, section] : doc.sections)
    {
        if (name.empty())
        {
            auto const& first = *section.entries.begin();
            throw ConfigError(first.second.line, "key '" + first.first + "' outside of any section");
        }
        if (!known.count(name))
            throw ConfigError(section.line, "unknown section [" + name + "]");
    }
    RunConfig c;
    c.pulse = read_pulse(doc);
    c.electron = read_electron(doc);
    c.trajectory = read_trajectory(doc);
    c.map = read_map(doc);
    c.cone = read_cone(doc);
    c.probability = read_probability(doc);
    c.sweep = read_sweep(doc);
    c.slopes = read_slopes(doc);
    c.vacuum = read_vacuum(doc);
    c.analysis = read_analysis(doc);
    c.output = read_output(doc);
    c.tolerance = read_tolerance(doc);
    return c;
}

RunConfig load_run_config_text(std::string_view text)
{
    return load_run_config(parse_config(text));
}

ToleranceSection scaled(ToleranceSection const& t, double factor)
{
    if (!(factor > 0) || !std::isfinite(factor))
        throw ConfigError(0, "tolerance scale must be positive");
    ToleranceSection s = t;
    s.amplitude_rel *= factor;
    s.amplitude_abs *= factor;
    s.amplitude_norm_rel *= factor;
    s.probability_rel *= factor;
    s.cone_rel *= factor;
    return s;
}

}  // namespace unruh::cli
