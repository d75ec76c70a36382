#include "dce/flux.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "dce/constants.hpp"
#include "dce/errors.hpp"

namespace dce::flux {

void ThermalEnv::validate() const {
    if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
        throw InvalidArgument("temperature must be finite and >= 0");
    }
}

std::string flag_names(std::uint32_t flags) {
    if (flags == kRowOk) {
        return "ok";
    }
    std::string out;
    auto add = [&](std::uint32_t bit, const char* name) {
        if ((flags & bit) != 0U) {
            if (!out.empty()) {
                out += '|';
            }
            out += name;
        }
    };
    add(kGuardBand, "guard_band");
    add(kShiftedEdge, "shifted_edge");
    add(kNumerical, "numerical");
    add(kMechNegative, "mech_negative");
    return out;
}

double thermal_occupation(double omega, const ThermalEnv& env) {
    if (!(omega > 0.0)) {
        throw InvalidArgument("thermal occupation diverges for omega <= 0");
    }
    if (env.temperature == 0.0) {
        return 0.0;
    }
    const double x = constants::hbar * omega / (constants::k_boltzmann * env.temperature);
    return 1.0 / std::expm1(x);
}

namespace {

using cavity::CavityParams;
using scatter::LineParams;
using scatter::SourceConfig;

void check_grid(std::span<const double> grid, double omega_m) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0 && grid[i] < omega_m)) {
            throw InvalidArgument("spectrum grid must lie inside (0, omega_m)");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw InvalidArgument("spectrum grid must be strictly increasing");
        }
    }
}

// Relative tolerance for treating a point as sitting on a guard-band edge.
constexpr double kEdgeTol = 1e-12;

// Returns the evaluation frequency for grid[i] and the flags it picks up.
std::pair<double, std::uint32_t> place_point(std::span<const double> grid, std::size_t i,
                                             const SourceConfig& cfg) {
    double omega = grid[i];
    const double guard = cfg.guard_band();
    for (const auto& line : scatter::source_lines(cfg)) {
        const double dist = std::abs(omega - line.omega);
        if (std::abs(dist - guard) <= kEdgeTol * guard) {
            double step = 0.0;
            if (grid.size() > 1) {
                step = i + 1 < grid.size() ? grid[i + 1] - grid[i] : grid[i] - grid[i - 1];
            }
            omega += omega >= line.omega ? step : -step;
            return {omega, kShiftedEdge};
        }
        if (dist < guard) {
            return {omega, kGuardBand};
        }
    }
    return {omega, kRowOk};
}

SpectrumRow evaluate_row(double omega, const CavityParams& cav, const SourceConfig& cfg,
                         const LineParams& line, const ThermalEnv& env) {
    const double wm = cfg.cap.omega_m;
    const auto s = cavity::dressed_coefficients(omega, cav, cfg, line);
    const double n_w = thermal_occupation(omega, env);
    const double n_sum = thermal_occupation(wm + omega, env);
    const double n_diff = thermal_occupation(wm - omega, env);

    const double r2 = std::norm(s.r_res);
    const double s1 = std::norm(s.s1_res);
    const double s2 = std::norm(s.s2_res);
    const double h2 = std::norm(s.h_res);

    SpectrumRow row;
    row.omega = omega;
    row.n_total = r2 * n_w + s1 * n_sum + s2 * (1.0 + n_diff) + h2;
    row.n_dce = s2 + h2;
    row.n_thermal = r2 * n_w + s1 * n_sum + s2 * n_diff;
    return row;
}

template <typename RowFn>
SpectrumTable evaluate_grid(std::span<const double> grid, const SourceConfig& cfg,
                            unsigned threads, RowFn&& row_fn) {
    check_grid(grid, cfg.cap.omega_m);
    SpectrumTable table;
    table.rows.resize(grid.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto [omega, flags] = place_point(grid, i, cfg);
            SpectrumRow row;
            row.omega = omega;
            if ((flags & kGuardBand) == 0U) {
                try {
                    row = row_fn(omega);
                } catch (const NumericalError&) {
                    row = SpectrumRow{};
                    row.omega = omega;
                    row.flags |= kNumerical;
                }
            }
            row.flags |= flags;
            table.rows[i] = row;
        }
    };
    const std::size_t n = grid.size();
    const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (workers <= 1) {
        work(0, n);
        return table;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t begin = 0; begin < n; begin += chunk) {
        pool.emplace_back(work, begin, std::min(n, begin + chunk));
    }
    return table;
}

SourceConfig without_mechanics(const SourceConfig& cfg) {
    SourceConfig out = cfg;
    out.cap.delta_c = 0.0;
    return out;
}

}  // namespace

SpectrumTable output_spectrum(std::span<const double> grid, const CavityParams& cav,
                              const SourceConfig& cfg, const LineParams& line,
                              const ThermalEnv& env, unsigned threads) {
    return evaluate_grid(grid, cfg, threads,
                         [&](double omega) { return evaluate_row(omega, cav, cfg, line, env); });
}

SpectrumTable decompose_mech_electrical(std::span<const double> grid, const CavityParams& cav,
                                        const SourceConfig& cfg, const LineParams& line,
                                        const ThermalEnv& env, unsigned threads) {
    const SourceConfig electrical = without_mechanics(cfg);
    return evaluate_grid(grid, cfg, threads, [&](double omega) {
        SpectrumRow row = evaluate_row(omega, cav, cfg, line, env);
        const auto full = cavity::dressed_coefficients(omega, cav, cfg, line);
        const auto elec = cavity::dressed_coefficients(omega, cav, electrical, line);
        // |h|^2 - |h0|^2 written as a product to avoid cancellation.
        const double dh2 = std::real((full.h_res - elec.h_res) * std::conj(full.h_res + elec.h_res));
        double mech = std::norm(full.s2_res) + dh2 - std::norm(elec.s2_res);
        if (mech < 0.0) {
            if (mech < -1e-15) {
                row.flags |= kMechNegative;
            }
            mech = 0.0;
        }
        row.n_mech_only = mech;
        return row;
    });
}

ImpedanceScaling impedance_scaling_check(const CavityParams& cav, const SourceConfig& cfg,
                                         const LineParams& line, double factor) {
    if (!(factor > 0.0)) {
        throw InvalidArgument("impedance scaling factor must be > 0");
    }
    const double wm = cfg.cap.omega_m;
    const double w = 0.5 * wm;
    const LineParams scaled = line.with_impedance_at_fixed_capacitance(line.z0 * factor);

    const double s_ratio = std::abs(scatter::s_coefficient(cfg.cap.delta_c, scaled.z0, w, wm - w)) /
                           std::abs(scatter::s_coefficient(cfg.cap.delta_c, line.z0, w, wm - w));
    const double h_ratio = std::abs(scatter::h_coefficient(w, cfg, scaled)) /
                           std::abs(scatter::h_coefficient(w, cfg, line));

    const auto base = cavity::dressed_coefficients(w, cav, cfg, line);
    const auto meta = cavity::dressed_coefficients(w, cav, cfg, scaled);
    const double mech_ratio = std::norm(meta.s2_res) / std::norm(base.s2_res);
    const double share_base = std::norm(base.s2_res) / std::norm(base.h_res);
    const double share_meta = std::norm(meta.s2_res) / std::norm(meta.h_res);
    return {s_ratio, h_ratio, mech_ratio, share_meta / share_base};
}

double vc_ratio(double delta_x, double omega_m, double v_light) {
    if (!(delta_x >= 0.0) || !(omega_m > 0.0) || !(v_light > 0.0)) {
        throw InvalidArgument("vc_ratio requires delta_x >= 0 and positive omega_m, v_light");
    }
    return delta_x * omega_m / v_light;
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw InvalidArgument("log_log_slope needs two or more paired samples");
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

RateScaling resonant_rate_scaling(const CavityParams& cav, const SourceConfig& cfg,
                                  const LineParams& line) {
    const double w = 0.5 * cfg.cap.omega_m;
    const std::vector<double> multipliers{1.0, 2.0, 4.0};
    RateScaling out;
    for (double m : multipliers) {
        SourceConfig scaled = cfg;
        scaled.cap.delta_c *= m;  // delta_c is linear in delta_x
        out.fluxes_vs_delta_x.push_back(
            std::norm(cavity::dressed_coefficients(w, cav, scaled, line).s2_res));
    }
    for (double m : multipliers) {
        const LineParams faster =
            line.with_impedance_at_fixed_capacitance(1.0 / (line.cap_density * line.v_light * m));
        out.fluxes_vs_v_light.push_back(
            std::norm(cavity::dressed_coefficients(w, cav, cfg, faster).s2_res));
    }
    out.delta_x_exponent = log_log_slope(multipliers, out.fluxes_vs_delta_x);
    out.v_light_exponent = log_log_slope(multipliers, out.fluxes_vs_v_light);
    return out;
}

}  // namespace dce::flux
