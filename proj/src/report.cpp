#include "dce/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>
#include <vector>

#include "dce/errors.hpp"
#include "dce/flux.hpp"

namespace dce::report {

using scenario::Model;
using scenario::Scenario;

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

SweepAxis parse_axis(std::string_view name) {
    if (name == "v_pp") return SweepAxis::v_pp;
    if (name == "q") return SweepAxis::q;
    if (name == "z0") return SweepAxis::z0;
    if (name == "delta_x") return SweepAxis::delta_x;
    throw ConfigError("axis", "expected one of v_pp, q, z0, delta_x");
}

std::string axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::v_pp: return "v_pp";
        case SweepAxis::q: return "q";
        case SweepAxis::z0: return "z0";
        case SweepAxis::delta_x: return "delta_x";
    }
    return "?";
}

Scenario apply_options(const Scenario& s, const RunOptions& opt) {
    Scenario out = s;
    if (opt.points) {
        out.grid.points = *opt.points;
    }
    if (opt.window_time) {
        out.window_time = *opt.window_time;
    }
    out.validate();
    return out;
}

namespace {

const char* kNormalization =
    "columns are occupations per unit bandwidth; the |h|^2 term uses the turn-on part of the "
    "source transform and is not divided by window_time; window_time only sets the guard bands "
    "around the coherent lines";

void meta(std::ostream& out, const std::string& key, const std::string& value) {
    out << "# " << key << ": " << value << '\n';
}

void meta(std::ostream& out, const std::string& key, double value) {
    meta(out, key, format_number(value));
}

void scenario_header(std::ostream& out, const std::string& command, const Scenario& s,
                     const Model& m) {
    meta(out, "command", command);
    meta(out, "scenario", s.name);
    meta(out, "scenario_hash", scenario::scenario_hash(s));
    meta(out, "window_time_s", m.source.window_time);
    meta(out, "guard_band_rad_per_s", m.source.guard_band());
    meta(out, "Omega_rad_per_s", m.omega_m);
    meta(out, "omega_0_rad_per_s", m.cavity.omega_0());
    meta(out, "omega_0_bare_length_rad_per_s", m.omega_0_bare);
    meta(out, "d_eff_m", m.cavity.d_eff());
    meta(out, "l_eff_m", m.cavity.l_eff);
    meta(out, "delta_x_m", m.delta_x);
    meta(out, "c0_farads", m.plate.c0);
    meta(out, "delta_c_farads", m.plate.delta_c);
    meta(out, "temperature_k", m.env.temperature);
}

void write_row(std::ostream& out, double omega_over, const flux::SpectrumRow& r) {
    out << format_number(omega_over) << ',' << format_number(r.n_total) << ','
        << format_number(r.n_dce) << ',' << format_number(r.n_thermal) << ','
        << format_number(r.n_mech_only) << ',' << flux::flag_names(r.flags) << '\n';
}

template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t begin = 0; begin < n; begin += chunk) {
        pool.emplace_back([&fn, begin, end = std::min(n, begin + chunk)] {
            for (std::size_t i = begin; i < end; ++i) fn(i);
        });
    }
}

}  // namespace

RunStatus write_spectrum(std::ostream& out, const Scenario& in, const RunOptions& opt,
                         bool decompose) {
    const Scenario s = apply_options(in, opt);
    const Model m = scenario::build_model(s);
    const auto grid = s.grid.values();
    const auto table =
        decompose ? flux::decompose_mech_electrical(grid, m.cavity, m.source, m.line, m.env, opt.threads)
                  : flux::output_spectrum(grid, m.cavity, m.source, m.line, m.env, opt.threads);

    scenario_header(out, decompose ? "decompose" : "spectrum", s, m);
    meta(out, "normalization", kNormalization);
    if (!decompose) {
        meta(out, "n_mech_only", "not computed by this command (see decompose)");
    }
    out << "omega_over_Omega,n_total,n_dce,n_thermal,n_mech_only,flags\n";
    RunStatus status;
    for (const auto& r : table.rows) {
        write_row(out, r.omega / m.omega_m, r);
        if ((r.flags & flux::kNumerical) != 0U) {
            ++status.numerical_failures;
        }
    }
    return status;
}

RunStatus write_resonances(std::ostream& out, const Scenario& in, const RunOptions& opt) {
    const Scenario s = apply_options(in, opt);
    const Model m = scenario::build_model(s);
    const std::pair band{s.grid.omega_min, s.grid.omega_max};
    const auto roots = cavity::find_resonances(m.cavity, band);
    const auto minima = cavity::denominator_minima(m.cavity, band);

    scenario_header(out, "resonances", s, m);
    meta(out, "band_rad_per_s", format_number(band.first) + " " + format_number(band.second));
    meta(out, "residual", "|tan(2 pi w/w0) - wc/w| / (wc/w)");
    out << "index,omega_rad_per_s,omega_over_Omega,residual,exact_minimum_rad_per_s,"
           "relative_disagreement,flags\n";
    RunStatus status;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const auto& r = roots[i];
        double nearest = std::numeric_limits<double>::quiet_NaN();
        for (double w : minima) {
            if (std::isnan(nearest) || std::abs(w - r.omega) < std::abs(nearest - r.omega)) {
                nearest = w;
            }
        }
        std::string flags = "ok";
        if (!r.converged) {
            flags = "not_converged";
            ++status.numerical_failures;
        } else if (std::isnan(nearest)) {
            flags = "no_minimum";
        }
        out << i << ',' << format_number(r.omega) << ',' << format_number(r.omega / m.omega_m) << ','
            << format_number(r.residual) << ',' << format_number(nearest) << ','
            << format_number(std::abs(nearest - r.omega) / r.omega) << ',' << flags << '\n';
    }
    return status;
}

RunStatus write_sweep(std::ostream& out, const Scenario& in, SweepAxis axis,
                      std::span<const double> values, const RunOptions& opt, bool no_mechanics) {
    if (values.empty()) {
        throw ConfigError("values", "need at least one value");
    }
    for (double v : values) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ConfigError("values", "sweep values must be positive and finite");
        }
    }
    const Scenario base = apply_options(in, opt);
    scenario::ModelOverrides base_ov;
    base_ov.no_mechanics = no_mechanics;
    const Model base_model = scenario::build_model(base, base_ov);
    const double omega = 0.5 * base.geometry.omega_m;

    struct Result {
        flux::SpectrumRow row;
        double s2_sq = 0.0;
        double h_sq = 0.0;
        std::string flags;
        bool numerical = false;
    };
    std::vector<Result> results(values.size());

    parallel_for(values.size(), opt.threads, [&](std::size_t i) {
        const double v = values[i];
        Scenario s = base;
        scenario::ModelOverrides ov = base_ov;
        switch (axis) {
            case SweepAxis::v_pp: s.drive.v_pp = v; break;
            case SweepAxis::q: s.geometry.quality = v; break;
            case SweepAxis::z0: s.line = s.line.with_impedance_at_fixed_capacitance(v); break;
            case SweepAxis::delta_x: ov.delta_x = v; break;
        }
        Result& res = results[i];
        try {
            const Model m = scenario::build_model(s, ov);
            const std::vector<double> grid{omega};
            res.row = flux::decompose_mech_electrical(grid, m.cavity, m.source, m.line, m.env)
                          .rows.front();
            if ((res.row.flags & (flux::kGuardBand | flux::kNumerical)) == 0U) {
                const auto c = cavity::dressed_coefficients(res.row.omega, m.cavity, m.source, m.line);
                res.s2_sq = std::norm(c.s2_res);
                res.h_sq = std::norm(c.h_res);
            }
            res.flags = flux::flag_names(res.row.flags);
            res.numerical = (res.row.flags & flux::kNumerical) != 0U;
        } catch (const InvalidArgument&) {
            res.row = flux::SpectrumRow{};
            res.row.omega = omega;
            res.flags = "invalid_parameters";
        } catch (const NumericalError&) {
            res.row = flux::SpectrumRow{};
            res.row.omega = omega;
            res.flags = "numerical";
            res.numerical = true;
        }
    });

    scenario_header(out, "sweep", base, base_model);
    meta(out, "normalization", kNormalization);
    meta(out, "axis", axis_name(axis));
    meta(out, "mechanics", no_mechanics ? "pinned to zero (delta_c = 0)" : "on");
    out << "axis,value,omega_over_Omega,n_total,n_dce,n_thermal,n_mech_only,s2_res_sq,h_res_sq,"
           "flags\n";
    RunStatus status;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const Result& r = results[i];
        out << axis_name(axis) << ',' << format_number(values[i]) << ','
            << format_number(r.row.omega / base.geometry.omega_m) << ','
            << format_number(r.row.n_total) << ',' << format_number(r.row.n_dce) << ','
            << format_number(r.row.n_thermal) << ',' << format_number(r.row.n_mech_only) << ','
            << format_number(r.s2_sq) << ',' << format_number(r.h_sq) << ',' << r.flags << '\n';
        if (r.numerical) {
            ++status.numerical_failures;
        }
    }
    return status;
}

RunStatus write_squeeze(std::ostream& out, const scenario::SqueezeConfig& cfg) {
    cfg.lc.validate();
    const double lambda = squeeze::squeeze_coupling(cfg.lc);
    const auto series = squeeze::evolve_series(lambda, cfg.t_max, cfg.samples, cfg.dim);

    meta(out, "command", "squeeze");
    meta(out, "config", cfg.name);
    meta(out, "omega_rad_per_s", cfg.lc.omega());
    meta(out, "modulation_rad_per_s", cfg.lc.omega_m);
    meta(out, "lambda_rad_per_s", lambda);
    meta(out, "dim", std::to_string(cfg.dim));
    meta(out, "n_analytic", "sinh^2(2 lambda t)");
    out << "t_s,two_lambda_t,n_analytic,n_numeric,abs_diff,norm_defect,odd_leakage,top_population,"
           "flags\n";
    for (const auto& sample : series) {
        const double analytic = squeeze::analytic_photon_number(lambda, sample.t);
        const auto& r = sample.result;
        out << format_number(sample.t) << ',' << format_number(2.0 * lambda * sample.t) << ','
            << format_number(analytic) << ',' << format_number(r.mean_photons) << ','
            << format_number(std::abs(analytic - r.mean_photons)) << ','
            << format_number(r.norm_defect) << ',' << format_number(r.odd_leakage) << ','
            << format_number(r.top_population) << ',' << (r.truncation_flag ? "truncation" : "ok")
            << '\n';
    }
    return {};
}

}  // namespace dce::report
