// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include "unruh_cli/runner.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "unruh/analysis.hpp"
#include "unruh/errors.hpp"
#include "unruh/parallel.hpp"
#include "unruh/units.hpp"
#include "unruh/vacuum.hpp"
#include "unruh_cli/output.hpp"
#include "unruh_cli/run_config.hpp"

namespace unruh::cli {
namespace {

constexpr char const* kVersion = "0.1.0";

double to_kev(double k) { return from_natural(k, Unit::kiloelectronvolt); }
double to_deg(double a) { return from_natural(a, Unit::degree); }
double to_as(double t) { return from_natural(t, Unit::attosecond); }
double to_nm(double z) { return from_natural(z, Unit::nanometer); }
double to_schwinger(double e) { return from_natural(e, Unit::schwinger); }

struct Setup
{
    PulseProfile pulse;
    double u0{0};
    Trajectory traj;
    CutoffEstimate cut{};
};

PulseProfile make_pulse(PulseSection const& p, double u0)
{
    PulseProfile shape;
    switch (p.shape)
    {
    case PulseShape::gaussian: shape = PulseProfile::gaussian(1, p.length, p.center); break;
    case PulseShape::rectangular: shape = PulseProfile::rectangular(1, p.length, p.center); break;
    case PulseShape::smooth_front:
        shape = PulseProfile::smooth_front(1, p.length, p.rise_time, p.center);
        break;
    }
    double const peak = p.peak_field ? *p.peak_field : peak_field_for_gamma(shape, u0, *p.gamma_max);
    return shape.with_peak(peak);
}

// Builds the trajectory twice when the required resolution depends on k_cut.
Setup make_setup(PulseSection const& section, double u0,
                 std::function<double(CutoffEstimate const&)> const& wavenumber)
{
    auto const pulse = make_pulse(section, u0);
    auto const window = default_window(pulse);
    auto traj = Trajectory::solve(pulse, u0, window, SamplingPolicy{});
    auto const cut = cutoff_wavenumber(traj, pulse);
    if (wavenumber)
    {
        double const k = wavenumber(cut);
        if (k > 0)
            traj = Trajectory::solve(pulse, u0, window, SamplingPolicy{k});
    }
    return {pulse, u0, std::move(traj), cut};
}

double peak_acceleration(PulseProfile const& pulse)
{
    auto const& c = Constants::codata();
    return c.q * std::abs(pulse.peak_field) / c.m;
}

double default_cone_angle(Setup const& s)
{
    auto const& c = Constants::codata();
    return std::sqrt(std::abs(s.pulse.peak_field) / c.schwinger_field) / s.traj.gamma_max();
}

struct ProbabilityPlan
{
    double theta_max;
    double k_max;
    double k_min;
};

ProbabilityPlan probability_plan(std::optional<ProbabilitySection> const& p, Setup const& s)
{
    ProbabilitySection const d = p.value_or(ProbabilitySection{});
    ProbabilityPlan plan{};
    plan.theta_max = d.theta_max.value_or(default_cone_angle(s));
    plan.k_max = d.k_max.value_or(d.k_max_fraction * s.cut.primary);
    plan.k_min = d.k_min.value_or(d.k_min_fraction * s.cut.primary);
    if (!(plan.theta_max > 0 && plan.theta_max < std::numbers::pi / 2))
        throw ConfigError(0, "[probability] derived cone angle is outside (0, 90 deg); set theta_max");
    if (!(plan.k_max > plan.k_min))
        throw ConfigError(0, "[probability] k_max must exceed k_min");
    return plan;
}

class Runner
{
  public:
    Runner(RunConfig cfg, RunRequest const& req, std::string config_hash, std::filesystem::path out,
           std::ostream& log, std::ostream& err)
        : cfg_(std::move(cfg)),
          req_(req),
          hash_(std::move(config_hash)),
          manifest_(std::move(out)),
          log_(log),
          err_(err)
    {
        cfg_.tolerance = scaled(cfg_.tolerance, req.tolerance_scale);
        auto const& c = Constants::codata();
        manifest_.set("tool", std::string("unruh"));
        manifest_.set("version", std::string(kVersion));
        manifest_.set("subcommand", req.subcommand);
        manifest_.set("config_path", req.config_path.string());
        manifest_.set("config_sha256", hash_);
        manifest_.set("tolerance_scale", req.tolerance_scale);
        manifest_.set("constant.alpha_qed", c.alpha_qed);
        manifest_.set("constant.electron_mass_eV", c.m);
        manifest_.set("constant.charge", c.q);
        manifest_.set("constant.scattering_length_m", from_natural(c.g, Unit::meter));
        manifest_.set("constant.schwinger_field_V_per_m", from_natural(c.schwinger_field, Unit::volt_per_meter));
        manifest_.set("tolerance.amplitude_rel", cfg_.tolerance.amplitude_rel);
        manifest_.set("tolerance.amplitude_abs", cfg_.tolerance.amplitude_abs);
        manifest_.set("tolerance.amplitude_norm_rel", cfg_.tolerance.amplitude_norm_rel);
        manifest_.set("tolerance.probability_rel", cfg_.tolerance.probability_rel);
        manifest_.set("tolerance.cone_rel", cfg_.tolerance.cone_rel);
    }

    int execute()
    {
        auto const& cmd = req_.subcommand;
        int status = kExitOk;
        if (cmd == "trajectory")
            status = trajectory();
        else if (cmd == "map")
            status = map();
        else if (cmd == "cone")
            status = cone();
        else if (cmd == "probability")
            status = probability();
        else if (cmd == "sweep")
            status = sweep();
        else if (cmd == "slopes")
            status = slopes();
        else if (cmd == "vacuum")
            status = vacuum();
        else
            throw ConfigError(0, "unknown subcommand '" + cmd + "'");
        manifest_.set("status", static_cast<long long>(status));
        manifest_.write();
        log_ << "wrote " << manifest_.files().size() << " files and manifest.json to "
             << manifest_.directory().string() << "\n";
        return status;
    }

  private:
    RunConfig cfg_;
    RunRequest const& req_;
    std::string hash_;
    Manifest manifest_;
    std::ostream& log_;
    std::ostream& err_;

    AmplitudeOptions amplitude_options() const
    {
        AmplitudeOptions o;
        o.tol.abs = cfg_.tolerance.amplitude_abs;
        o.tol.rel = cfg_.tolerance.amplitude_rel;
        o.tol.norm_rel = cfg_.tolerance.amplitude_norm_rel;
        return o;
    }

    MapOptions map_options(unsigned threads) const
    {
        MapOptions o;
        if (cfg_.map)
        {
            o.pairing = cfg_.map->pairing;
            o.polarization = cfg_.map->polarization;
            o.method = cfg_.map->method;
            o.phi = cfg_.map->phi;
        }
        o.amplitude = amplitude_options();
        o.threads = threads;
        return o;
    }

    ProbabilityOptions probability_options(unsigned threads) const
    {
        ProbabilityOptions o;
        o.rel_tol = cfg_.tolerance.probability_rel;
        o.threads = threads;
        o.amplitude.throw_on_failure = false;
        return o;
    }

    void emit(std::string const& name, CsvTable const& table) { manifest_.write_file(name, table.render(hash_)); }

    CsvTable table(std::vector<Column> columns, std::string const& title) const
    {
        CsvTable t(std::move(columns));
        t.add_comment("unruh " + std::string(kVersion) + " " + req_.subcommand + ": " + title);
        return t;
    }

    void describe(Setup const& s, std::string const& prefix = "")
    {
        double const a = peak_acceleration(s.pulse);
        double const t = unruh_temperature(a);
        manifest_.set(prefix + "pulse.shape", std::string(shape_name(s.pulse.shape)));
        manifest_.set(prefix + "pulse.peak_field_E_S", to_schwinger(s.pulse.peak_field));
        manifest_.set(prefix + "pulse.length_as", to_as(s.pulse.length));
        manifest_.set(prefix + "electron.u0", s.u0);
        manifest_.set(prefix + "gamma_max", s.traj.gamma_max());
        manifest_.set(prefix + "trajectory.samples", static_cast<long long>(s.traj.sample_count()));
        manifest_.set(prefix + "k_cut_keV", to_kev(s.cut.primary));
        manifest_.set(prefix + "k_cut_alternative_keV", to_kev(s.cut.alternative));
        if (cfg_.analysis.temperature)
        {
            manifest_.set(prefix + "unruh_temperature_keV", to_kev(t));
            manifest_.set(prefix + "unruh_temperature_K", unruh_temperature_kelvin(a));
            if (t > 0)
                manifest_.set(prefix + "k_cut_over_2pi_T_gamma",
                              s.cut.primary / (2 * std::numbers::pi * t * s.traj.gamma_max()));
        }
    }

    // Optional stages requested by [analysis] on top of the main pipeline.
    int extras()
    {
        int status = kExitOk;
        auto merge = [&status](int s) { status = std::max(status, s); };
        if (cfg_.analysis.cone && req_.subcommand != "cone")
            merge(cone());
        if (cfg_.analysis.probability && req_.subcommand != "probability")
            merge(probability());
        if (cfg_.analysis.slopes && req_.subcommand != "slopes")
            merge(slopes());
        if (cfg_.analysis.vacuum && req_.subcommand != "vacuum")
            merge(vacuum());
        return status;
    }

    int trajectory()
    {
        auto const s = make_setup(cfg_.pulse, cfg_.electron.u0, {});
        describe(s);
        auto out = table({{"t", "as"}, {"field", "E_S"}, {"u", ""}, {"beta", ""}, {"gamma", ""},
                          {"z", "nm"}, {"t_minus_z", "as"}},
                         "trajectory samples");
        std::size_t const n = cfg_.trajectory.samples;
        double const t0 = s.traj.t_begin(), t1 = s.traj.t_end();
        for (std::size_t i = 0; i < n; ++i)
        {
            double const t = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n - 1);
            out.add_row({to_as(t), to_schwinger(field_at(s.pulse, t)), s.traj.proper_velocity(t),
                         s.traj.beta(t), s.traj.gamma(t), to_nm(s.traj.position(t)), to_as(s.traj.lag(t))});
        }
        emit("trajectory.csv", out);
        return extras();
    }

    MapSection const& require_map() const
    {
        if (!cfg_.map)
            throw ConfigError(0, "subcommand '" + req_.subcommand + "' needs a [map] section");
        return *cfg_.map;
    }

    std::vector<double> k_grid(MapSection const& m) const
    {
        return m.k_spacing == Spacing::log ? log_grid(m.k_min, m.k_max, m.k_points)
                                           : linear_grid(m.k_min, m.k_max, m.k_points);
    }

    int map()
    {
        auto const& m = require_map();
        if (m.window)
            return fixture(m);
        auto const s = make_setup(cfg_.pulse, cfg_.electron.u0, [&m](CutoffEstimate const&) { return 2 * m.k_max; });
        describe(s);
        auto const ks = k_grid(m);
        auto const thetas = m.theta_spacing == AngleSpacing::axis_refined
                                ? axis_refined_angles(m.theta_points)
                                : linear_grid(0, std::numbers::pi, m.theta_points);
        log_ << "map: " << ks.size() << " x " << thetas.size() << " cells\n";
        auto const result = spectral_map(s.traj, ks, thetas, map_options(req_.threads));

        std::vector<double> ratio(result.quantum.size());
        for (std::size_t i = 0; i < ks.size(); ++i)
            for (std::size_t j = 0; j < thetas.size(); ++j)
                ratio[result.index(i, j)] = result.ratio(i, j);

        auto grid = [&](std::string const& name, std::vector<double> const& values, std::string const& what) {
            std::vector<Column> cols{{"k", "keV"}};
            for (double th : thetas)
                cols.push_back({"theta=" + format_number(to_deg(th)), "deg"});
            auto t = table(cols, what + " (rows: k, columns: theta)");
            t.add_comment("pairing " + std::string(pairing_name(result.pairing)) + ", polarization "
                          + std::string(polarization_name(result.polarization)) + ", method "
                          + std::string(method_name(result.method)));
            for (std::size_t i = 0; i < ks.size(); ++i)
            {
                std::vector<Cell> row{to_kev(ks[i])};
                for (std::size_t j = 0; j < thetas.size(); ++j)
                    row.emplace_back(values[result.index(i, j)]);
                t.add_row(std::move(row));
            }
            emit(name + ".csv", t);
            if (cfg_.output.pgm)
                manifest_.write_file(name + ".pgm",
                                     render_pgm(values, ks.size(), thetas.size(), what + ", log10 scale"));
        };
        grid("map_quantum", result.quantum, "|V A| quantum pair amplitude");
        grid("map_classical", result.classical, "|sqrt(V) alpha|^2 classical product");
        grid("map_ratio", ratio, "quantum / classical");

        auto cells = table({{"k", "keV"}, {"theta", "deg"}, {"quantum", ""}, {"quantum_error", ""},
                            {"classical", ""}, {"classical_error", ""}, {"ratio", ""}, {"converged", ""}},
                           "map cells with error estimates");
        double max_rel_q = 0, max_rel_c = 0;
        for (std::size_t i = 0; i < ks.size(); ++i)
        {
            for (std::size_t j = 0; j < thetas.size(); ++j)
            {
                auto const idx = result.index(i, j);
                cells.add_row({to_kev(ks[i]), to_deg(thetas[j]), result.quantum[idx], result.quantum_error[idx],
                               result.classical[idx], result.classical_error[idx], ratio[idx],
                               static_cast<long long>(result.failed[idx] ? 0 : 1)});
                if (result.quantum[idx] > 0)
                    max_rel_q = std::max(max_rel_q, result.quantum_error[idx] / result.quantum[idx]);
                if (result.classical[idx] > 0)
                    max_rel_c = std::max(max_rel_c, result.classical_error[idx] / result.classical[idx]);
            }
        }
        emit("map_cells.csv", cells);
        manifest_.set("map.max_relative_error_quantum", max_rel_q);
        manifest_.set("map.max_relative_error_classical", max_rel_c);
        manifest_.set("map.failed_cells", static_cast<long long>(result.failed_count()));

        int status = extras();
        if (result.failed_count() > 0)
        {
            err_ << "error: " << result.failed_count() << " map cells missed the tolerance:\n";
            for (std::size_t i = 0; i < ks.size(); ++i)
                for (std::size_t j = 0; j < thetas.size(); ++j)
                    if (result.failed[result.index(i, j)])
                        err_ << "  k = " << format_number(to_kev(ks[i])) << " keV, theta = "
                             << format_number(to_deg(thetas[j])) << " deg\n";
            status = kExitConvergence;
        }
        return status;
    }

    // Static electron with a Gaussian coupling window: the pair amplitude is
    // known in closed form, so the table doubles as an end-to-end check.
    int fixture(MapSection const& m)
    {
        auto const s = make_setup(cfg_.pulse, cfg_.electron.u0, {});
        if (!s.traj.is_static())
            throw ConfigError(0, "[map] window requires a static electron (peak_field = 0, u0 = 0)");
        describe(s);
        auto const ks = k_grid(m);
        auto opts = amplitude_options();
        opts.window = CouplingWindow{*m.window, cfg_.pulse.center};
        double const theta = 0;
        auto out = table({{"k1", "keV"}, {"k2", "keV"}, {"numeric_re", ""}, {"numeric_im", ""},
                          {"analytic_re", ""}, {"analytic_im", ""}, {"relative_error", ""}},
                         "static coupling-window amplitude, numeric vs closed form");
        std::vector<std::pair<std::size_t, std::size_t>> cells;
        for (std::size_t i = 0; i < ks.size(); ++i)
            for (std::size_t j = 0; j < ks.size(); ++j)
                cells.emplace_back(i, j);
        std::vector<complex> numeric(cells.size()), exact(cells.size());
        parallel_for(cells.size(), resolve_threads(req_.threads), [&](std::size_t n) {
            auto const [i, j] = cells[n];
            auto const m1 = PhotonMode::make(ks[i], theta, m.phi, m.polarization);
            auto const m2 = PhotonMode::make(ks[j], theta, m.phi, m.polarization);
            numeric[n] = unruh_amplitude(s.traj, m1, m2, m.method, opts).value;
            double const w = ks[i] + ks[j];
            double const sigma = *m.window;
            exact[n] = pair_prefactor(m1, m2) * sigma * std::sqrt(2 * std::numbers::pi)
                       * std::exp(-0.5 * w * w * sigma * sigma) * std::polar(1.0, w * cfg_.pulse.center);
        });
        double worst = 0;
        for (std::size_t n = 0; n < cells.size(); ++n)
        {
            double const rel = std::abs(numeric[n] - exact[n]) / std::abs(exact[n]);
            worst = std::max(worst, rel);
            out.add_row({to_kev(ks[cells[n].first]), to_kev(ks[cells[n].second]), numeric[n].real(),
                         numeric[n].imag(), exact[n].real(), exact[n].imag(), rel});
        }
        emit("static_fixture.csv", out);
        manifest_.set("fixture.max_relative_error", worst);
        manifest_.set("fixture.window_as", to_as(*m.window));
        log_ << "fixture: max relative error " << format_number(worst) << "\n";
        if (!(worst < 1e-8))
        {
            err_ << "error: static fixture relative error " << format_number(worst) << " exceeds 1e-8\n";
            return kExitConvergence;
        }
        return kExitOk;
    }

    int cone()
    {
        ConeSection const c = cfg_.cone.value_or(ConeSection{{}, {0.1}, true, true, 64});
        std::vector<double> fractions = c.k_ref_fraction;
        auto const s = make_setup(cfg_.pulse, cfg_.electron.u0, [&](CutoffEstimate const& cut) {
            double k = 0;
            for (double v : c.k_ref)
                k = std::max(k, v);
            for (double f : fractions)
                k = std::max(k, f * cut.primary);
            return 2 * k;
        });
        describe(s);
        std::vector<double> ks = c.k_ref;
        for (double f : fractions)
            ks.push_back(f * s.cut.primary);
        std::vector<ConeDirection> dirs;
        if (c.forward)
            dirs.push_back(ConeDirection::forward);
        if (c.backward)
            dirs.push_back(ConeDirection::backward);

        ConeOptions opts;
        opts.scan_points = c.scan_points;
        opts.rel_tol = cfg_.tolerance.cone_rel;
        opts.map = map_options(1);
        std::vector<std::pair<double, ConeDirection>> jobs;
        for (double k : ks)
            for (auto d : dirs)
                jobs.emplace_back(k, d);
        std::vector<DominationCone> cones(jobs.size());
        parallel_for(jobs.size(), resolve_threads(req_.threads), [&](std::size_t i) {
            cones[i] = domination_angle(s.traj, jobs[i].first, jobs[i].second, opts);
        });

        auto out = table({{"k", "keV"}, {"k_over_kcut", ""}, {"direction", ""}, {"theta_max", "deg"},
                          {"theta_max_gamma", "rad"}, {"found", ""}, {"monotone", ""}, {"residual", ""}},
                         "quantum-domination cone half-angles");
        auto curves = table({{"k", "keV"}, {"direction", ""}, {"angle", "deg"}, {"ratio", ""}},
                            "quantum / classical along the scan rays");
        long long missing = 0;
        for (auto const& cone : cones)
        {
            missing += cone.found ? 0 : 1;
            out.add_row({to_kev(cone.k_ref), cone.k_ref / s.cut.primary, std::string(direction_name(cone.direction)),
                         cone.found ? to_deg(cone.theta_max) : std::nan(""),
                         cone.found ? cone.theta_max * s.traj.gamma_max() : std::nan(""),
                         static_cast<long long>(cone.found), static_cast<long long>(cone.monotone), cone.residual});
            for (auto const& [angle, ratio] : cone.ratio_curve)
                curves.add_row({to_kev(cone.k_ref), std::string(direction_name(cone.direction)), to_deg(angle), ratio});
        }
        emit("cone.csv", out);
        emit("cone_curves.csv", curves);
        manifest_.set("cone.no_crossing", missing);
        return req_.subcommand == "cone" ? extras() : kExitOk;
    }

    int probability()
    {
        ProbabilitySection const p = cfg_.probability.value_or(ProbabilitySection{});
        auto s = make_setup(cfg_.pulse, cfg_.electron.u0, {});
        auto const plan = probability_plan(cfg_.probability, s);
        s = make_setup(cfg_.pulse, cfg_.electron.u0, [&](CutoffEstimate const&) { return 2 * plan.k_max; });
        describe(s);
        auto out = table({{"quantity", ""}, {"value", ""}, {"error", ""}, {"theta_max", "deg"},
                          {"k_min", "keV"}, {"k_max", "keV"}},
                         "emission probabilities inside the forward and backward cones");
        auto const opts = probability_options(req_.threads);
        double const th = to_deg(plan.theta_max), kmax = to_kev(plan.k_max);
        if (p.pair)
        {
            log_ << "probability: pair sum up to " << format_number(kmax) << " keV\n";
            auto const r = pair_probability(s.traj, plan.theta_max, plan.k_max, opts);
            out.add_row({std::string("pair"), r.value, r.error, th, 0.0, kmax});
            char const* names[2] = {"1", "2"};
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    out.add_row({"pair_channel_" + std::string(names[a]) + names[b], r.channels[a][b], std::nan(""),
                                 th, 0.0, kmax});
            char const* sectors[4] = {"forward_forward", "backward_backward", "forward_backward", "backward_forward"};
            for (int i = 0; i < 4; ++i)
                out.add_row({"pair_sector_" + std::string(sectors[i]), r.sectors[i], std::nan(""), th, 0.0, kmax});
            manifest_.set("probability.pair", r.value);
            manifest_.set("probability.pair_error", r.error);
        }
        if (p.single)
        {
            auto const r = single_photon_probability(s.traj, plan.theta_max, plan.k_min, plan.k_max, opts);
            out.add_row({std::string("single_photon"), r.value, r.error, th, to_kev(plan.k_min), kmax});
            manifest_.set("probability.single_photon", r.value);
            manifest_.set("probability.single_photon_error", r.error);
        }
        manifest_.set("probability.theta_max_deg", th);
        manifest_.set("probability.k_max_keV", kmax);
        emit("probability.csv", out);
        return req_.subcommand == "probability" ? extras() : kExitOk;
    }

    struct SweepPoint
    {
        double parameter{0};
        double peak_field{0};
        double gamma_max{0};
        double k_cut{0};
        double k_cut_alt{0};
        double temperature{0};
        double cone_angle{NAN};
        double pair{NAN}, pair_error{NAN};
        double single{NAN}, single_error{NAN};
        double quantum_slope{NAN}, larmor_slope{NAN};
        double leakage{NAN};
        std::string failure;
    };

    int sweep()
    {
        if (!cfg_.sweep)
            throw ConfigError(0, "subcommand 'sweep' needs a [sweep] section");
        auto const& sw = *cfg_.sweep;
        bool const want_cone = cfg_.analysis.cone || cfg_.cone.has_value();
        bool const want_prob = cfg_.analysis.probability || cfg_.probability.has_value();
        bool const want_slopes = cfg_.analysis.slopes || cfg_.slopes.has_value();
        bool const want_vacuum = cfg_.analysis.vacuum;
        double const cone_fraction = cfg_.cone && !cfg_.cone->k_ref_fraction.empty() ? cfg_.cone->k_ref_fraction.front() : 0.1;
        SlopesSection const slope_cfg = cfg_.slopes.value_or(SlopesSection{});

        std::vector<SweepPoint> points(sw.values.size());
        // Validate every point up front so schema problems surface as config errors.
        std::vector<std::pair<PulseSection, double>> inputs;
        for (double v : sw.values)
        {
            PulseSection p = cfg_.pulse;
            double u0 = cfg_.electron.u0;
            switch (sw.parameter)
            {
            case SweepParameter::peak_field:
                p.peak_field = v;
                p.gamma_max.reset();
                break;
            case SweepParameter::gamma_max:
                p.gamma_max = v;
                p.peak_field.reset();
                break;
            case SweepParameter::length: p.length = v; break;
            case SweepParameter::u0: u0 = v; break;
            }
            make_pulse(p, u0).validate();
            inputs.emplace_back(p, u0);
        }
        unsigned const threads = resolve_threads(req_.threads);
        log_ << "sweep: " << inputs.size() << " points over " << sweep_parameter_name(sw.parameter) << "\n";
        parallel_for(inputs.size(), threads, [&](std::size_t i) {
            auto& pt = points[i];
            pt.parameter = sw.values[i];
            try
            {
                auto s = make_setup(inputs[i].first, inputs[i].second, {});
                std::optional<ProbabilityPlan> plan;
                if (want_prob)
                    plan = probability_plan(cfg_.probability, s);
                double need = 2 * cone_fraction * s.cut.primary;
                if (plan)
                    need = std::max(need, 2 * plan->k_max);
                if (want_slopes)
                    need = std::max(need, 2 * slope_cfg.k_hi_fraction * s.cut.primary);
                s = make_setup(inputs[i].first, inputs[i].second, [need](CutoffEstimate const&) { return need; });
                pt.peak_field = s.pulse.peak_field;
                pt.gamma_max = s.traj.gamma_max();
                pt.k_cut = s.cut.primary;
                pt.k_cut_alt = s.cut.alternative;
                pt.temperature = unruh_temperature(peak_acceleration(s.pulse));
                if (want_cone)
                {
                    ConeOptions opts;
                    opts.rel_tol = cfg_.tolerance.cone_rel;
                    opts.map = map_options(1);
                    auto const c = domination_angle(s.traj, cone_fraction * s.cut.primary, ConeDirection::forward, opts);
                    if (c.found)
                        pt.cone_angle = c.theta_max;
                }
                if (plan)
                {
                    auto const opts = probability_options(1);
                    auto const pr = pair_probability(s.traj, plan->theta_max, plan->k_max, opts);
                    pt.pair = pr.value;
                    pt.pair_error = pr.error;
                    auto const sp = single_photon_probability(s.traj, plan->theta_max, plan->k_min, plan->k_max, opts);
                    pt.single = sp.value;
                    pt.single_error = sp.error;
                }
                if (want_slopes)
                {
                    auto const sl = spectral_slope(s.traj, slope_cfg.theta, slope_cfg.k_lo_fraction * s.cut.primary,
                                                   slope_cfg.k_hi_fraction * s.cut.primary, slope_cfg.points,
                                                   map_options(1));
                    pt.quantum_slope = sl.quantum_fit.exponent;
                    pt.larmor_slope = sl.larmor_fit.exponent;
                }
                if (want_vacuum)
                    pt.leakage = forward_leakage(s.cut.primary, std::abs(s.pulse.peak_field), std::abs(s.pulse.peak_field));
            }
            catch (ConvergenceError const& e)
            {
                pt.failure = e.what();
            }
        });

        std::string const unit = sw.parameter == SweepParameter::peak_field ? "E_S"
                                 : sw.parameter == SweepParameter::length  ? "as"
                                                                           : "";
        auto out = table({{std::string(sweep_parameter_name(sw.parameter)), unit}, {"peak_field", "E_S"},
                          {"gamma_max", ""}, {"k_cut", "keV"}, {"k_cut_alternative", "keV"},
                          {"unruh_temperature", "keV"}, {"k_cut_over_2pi_T_gamma", ""}, {"cone_theta_max", "deg"},
                          {"pair_probability", ""}, {"pair_error", ""}, {"single_photon", ""},
                          {"single_photon_error", ""}, {"quantum_slope", ""}, {"larmor_slope", ""},
                          {"leakage_at_kcut", "eV"}, {"converged", ""}},
                         "parameter sweep");
        std::vector<std::string> failures;
        std::vector<double> fields, pairs, singles, params;
        for (std::size_t i = 0; i < points.size(); ++i)
        {
            auto const& pt = points[i];
            double shown = pt.parameter;
            if (sw.parameter == SweepParameter::peak_field)
                shown = to_schwinger(shown);
            else if (sw.parameter == SweepParameter::length)
                shown = to_as(shown);
            double const ratio = pt.temperature > 0 ? pt.k_cut / (2 * std::numbers::pi * pt.temperature * pt.gamma_max)
                                                    : std::nan("");
            out.add_row({shown, to_schwinger(pt.peak_field), pt.gamma_max, to_kev(pt.k_cut), to_kev(pt.k_cut_alt),
                         to_kev(pt.temperature), ratio, to_deg(pt.cone_angle), pt.pair, pt.pair_error, pt.single,
                         pt.single_error, pt.quantum_slope, pt.larmor_slope, pt.leakage,
                         static_cast<long long>(pt.failure.empty())});
            if (!pt.failure.empty())
            {
                failures.push_back("  point " + std::to_string(i) + " (" + format_number(shown) + "): " + pt.failure);
                continue;
            }
            if (std::isfinite(pt.pair) && pt.pair > 0)
            {
                fields.push_back(pt.peak_field);
                params.push_back(std::abs(pt.parameter));
                pairs.push_back(pt.pair);
                singles.push_back(pt.single);
            }
        }
        emit("sweep.csv", out);
        if (want_prob && pairs.size() >= 2)
        {
            try
            {
                manifest_.set("sweep.pair_exponent_vs_field", power_law_fit(fields, pairs).exponent);
                manifest_.set("sweep.single_exponent_vs_field", power_law_fit(fields, singles).exponent);
                if (sw.parameter == SweepParameter::length)
                    manifest_.set("sweep.pair_exponent_vs_length", power_law_fit(params, pairs).exponent);
            }
            catch (InvalidArgument const&)
            {
                // Degenerate abscissae (e.g. a u0 sweep at fixed field): no fit.
            }
        }
        manifest_.set("sweep.failed_points", static_cast<long long>(failures.size()));
        if (!failures.empty())
        {
            err_ << "error: " << failures.size() << " sweep points failed to converge:\n";
            for (auto const& f : failures)
                err_ << f << "\n";
            return kExitConvergence;
        }
        return kExitOk;
    }

    int slopes()
    {
        SlopesSection const sc = cfg_.slopes.value_or(SlopesSection{});
        auto const s = make_setup(cfg_.pulse, cfg_.electron.u0,
                                  [&sc](CutoffEstimate const& cut) { return 2 * sc.k_hi_fraction * cut.primary; });
        describe(s);
        double const lo = sc.k_lo_fraction * s.cut.primary, hi = sc.k_hi_fraction * s.cut.primary;
        auto const r = spectral_slope(s.traj, sc.theta, lo, hi, sc.points, map_options(req_.threads));
        auto out = table({{"k", "keV"}, {"quantum", ""}, {"larmor", ""}}, "spectral samples at theta = "
                                                                           + format_number(to_deg(sc.theta)) + " deg");
        for (std::size_t i = 0; i < r.k.size(); ++i)
            out.add_row({to_kev(r.k[i]), r.quantum[i], r.larmor[i]});
        emit("slopes.csv", out);
        auto fits = table({{"series", ""}, {"exponent", ""}, {"prefactor", ""}, {"rms_residual", ""}, {"points", ""}},
                          "power-law fits");
        fits.add_row({std::string("quantum"), r.quantum_fit.exponent, r.quantum_fit.prefactor,
                      r.quantum_fit.rms_residual, static_cast<long long>(r.quantum_fit.points)});
        fits.add_row({std::string("larmor"), r.larmor_fit.exponent, r.larmor_fit.prefactor, r.larmor_fit.rms_residual,
                      static_cast<long long>(r.larmor_fit.points)});
        emit("slopes_fit.csv", fits);
        manifest_.set("slopes.quantum_exponent", r.quantum_fit.exponent);
        manifest_.set("slopes.larmor_exponent", r.larmor_fit.exponent);
        return req_.subcommand == "slopes" ? extras() : kExitOk;
    }

    int vacuum()
    {
        if (!cfg_.vacuum)
            throw ConfigError(0, "subcommand 'vacuum' needs a [vacuum] section");
        auto const& v = *cfg_.vacuum;
        BackgroundField const bg{v.e_field, v.b_field};
        auto out = table({{"theta", "deg"}, {"e1_x", ""}, {"e1_y", ""}, {"e1_z", ""}, {"e2_x", ""}, {"e2_y", ""},
                          {"e2_z", ""}, {"leakage_1", "eV"}, {"leakage_2", "eV"}, {"fallback", ""}},
                         "corrected polarization basis and longitudinal leakage |k.e|");
        auto const thetas = linear_grid(0, std::numbers::pi, v.theta_points);
        long long fallbacks = 0;
        for (double th : thetas)
        {
            Vec3 const khat{std::sin(th) * std::cos(v.phi), std::sin(th) * std::sin(v.phi), std::cos(th)};
            auto const basis = corrected_polarization(khat, bg);
            auto const leak = constitutive_leakage(v.k, khat, bg);
            fallbacks += basis.fallback ? 1 : 0;
            out.add_row({to_deg(th), basis.e1.x, basis.e1.y, basis.e1.z, basis.e2.x, basis.e2.y, basis.e2.z, leak[0],
                         leak[1], static_cast<long long>(basis.fallback)});
        }
        emit("vacuum.csv", out);
        manifest_.set("vacuum.eh_coefficient", eh_coefficient());
        manifest_.set("vacuum.forward_leakage_formula_eV", forward_leakage(v.k, norm(v.e_field), norm(v.b_field)));
        manifest_.set("vacuum.fallback_directions", fallbacks);
        return kExitOk;
    }
};

std::string read_file(std::filesystem::path const& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw OutputError("cannot read config '" + path.string() + "'");
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

std::vector<std::string_view> subcommands()
{
    return {"trajectory", "map", "cone", "probability", "sweep", "slopes", "vacuum"};
}

int run(RunRequest const& request, std::ostream& log, std::ostream& err)
{
    std::string const where = request.config_path.string();
    try
    {
        std::string const text = read_file(request.config_path);
        RunConfig cfg = load_run_config_text(text);
        std::filesystem::path out = cfg.output.directory;
        if (char const* env = std::getenv(kOutputDirVariable); env && *env)
            out = env;
        if (request.out)
            out = *request.out;
        Runner runner(std::move(cfg), request, sha256_hex(text), out, log, err);
        return runner.execute();
    }
    catch (ConfigError const& e)
    {
        err << where << ":" << (e.line() > 0 ? std::to_string(e.line()) + ":" : "") << " error: " << e.message()
            << "\n";
        return kExitConfig;
    }
    catch (InvalidArgument const& e)
    {
        err << where << ": error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (ConfigurationError const& e)
    {
        err << where << ": error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (ConvergenceError const& e)
    {
        err << "error: numerical convergence failure: " << e.what() << "\n";
        return kExitConvergence;
    }
    catch (OutputError const& e)
    {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }
    catch (std::filesystem::filesystem_error const& e)
    {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }
}

}  // namespace unruh::cli
