#include "dce/scatter.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "dce/constants.hpp"
#include "dce/errors.hpp"

namespace dce::scatter {

void TimeVaryingCap::validate() const {
    if (!(c0 > 0.0)) {
        throw InvalidArgument("c0 must be > 0");
    }
    if (!(delta_c >= 0.0 && delta_c < c0)) {
        throw InvalidArgument("delta_c must lie in [0, c0)");
    }
    if (!(omega_m > 0.0)) {
        throw InvalidArgument("omega_m must be > 0");
    }
}

LineParams LineParams::from_impedance(double z0, double v_light) {
    return {z0, v_light, 1.0 / (v_light * z0), z0 / v_light};
}

LineParams LineParams::with_impedance_at_fixed_capacitance(double new_z0) const {
    const double v = 1.0 / (cap_density * new_z0);
    return {new_z0, v, cap_density, new_z0 / v};
}

void LineParams::validate() const {
    if (!(z0 > 0.0) || !(v_light > 0.0) || !(cap_density > 0.0) || !(ind_density > 0.0)) {
        throw InvalidArgument("line parameters must be > 0");
    }
    if (std::abs(std::sqrt(ind_density / cap_density) / z0 - 1.0) > 1e-9) {
        throw InvalidArgument("z0 inconsistent with sqrt(ind_density/cap_density)");
    }
    if (std::abs(1.0 / std::sqrt(ind_density * cap_density) / v_light - 1.0) > 1e-9) {
        throw InvalidArgument("v_light inconsistent with 1/sqrt(ind_density*cap_density)");
    }
}

void SourceConfig::validate() const {
    drive.validate();
    cap.validate();
    if (!(window_time > 100.0 * constants::two_pi / cap.omega_m)) {
        throw InvalidArgument("window_time must hold more than 100 modulation periods");
    }
}

double capacitance_at(const TimeVaryingCap& cap, double t) {
    return cap.c0 + cap.delta_c * std::cos(cap.omega_m * t);
}

double effective_length(double c0, const LineParams& line) { return c0 / line.cap_density; }

complex s_coefficient(double delta_c, double z0, double omega1, double omega2) {
    if (!(omega1 > 0.0) || !(omega2 > 0.0)) {
        return {0.0, 0.0};
    }
    return {0.0, -delta_c * z0 * std::sqrt(omega1 * omega2)};
}

namespace {

// One term a cos(nu t + psi) of the product C(t) V(t), nu >= 0.
struct Harmonic {
    double amplitude;
    double nu;
    double psi;
};

// C V = c0 V_pp cos(w_d t + phi)
//     + (dC V_pp / 2) [cos((w_m + w_d) t + phi) + cos((w_m - w_d) t - phi)]
std::array<Harmonic, 3> charge_harmonics(const SourceConfig& cfg) {
    const double v = cfg.drive.v_pp;
    const double phi = cfg.drive.phase;
    const double wd = cfg.drive.omega_d;
    const double wm = cfg.cap.omega_m;
    const double half = 0.5 * cfg.cap.delta_c * v;
    Harmonic diff{half, wm - wd, -phi};
    if (diff.nu < 0.0) {
        diff = {half, -diff.nu, phi};
    }
    return {Harmonic{cfg.cap.c0 * v, wd, phi}, Harmonic{half, wm + wd, phi}, diff};
}

// int_0^T e^{i x t} dt, stable near x = 0.
complex window_integral(double x, double T) {
    const complex phase = std::polar(1.0, 0.5 * x * T);
    if (std::abs(x * T) < 1e-8) {
        return phase * T;
    }
    return phase * (2.0 * std::sin(0.5 * x * T) / x);
}

const double inv_sqrt_2pi = 1.0 / std::sqrt(constants::two_pi);

}  // namespace

double charge_at(const SourceConfig& cfg, double t) {
    return capacitance_at(cfg.cap, t) * cfg.drive.v_pp * std::cos(cfg.drive.omega_d * t + cfg.drive.phase);
}

double source_time(const SourceConfig& cfg, double t) {
    if (!(t >= 0.0 && t <= cfg.window_time)) {
        throw InvalidArgument("t outside the source window [0, window_time]");
    }
    double f = 0.0;
    for (const auto& h : charge_harmonics(cfg)) {
        f -= h.amplitude * h.nu * std::sin(h.nu * t + h.psi);
    }
    return f;
}

double guard_band_line(const SourceConfig& cfg, double omega) {
    const double guard = cfg.guard_band();
    for (const auto& h : charge_harmonics(cfg)) {
        if (h.amplitude != 0.0 && h.nu > 0.0 && std::abs(omega - h.nu) < guard) {
            return h.nu;
        }
    }
    return -1.0;
}

complex source_spectrum(const SourceConfig& cfg, double omega, SpectrumPart part) {
    if (!(omega > 0.0)) {
        throw InvalidArgument("source_spectrum requires omega > 0");
    }
    // Turn-on impulse theta'(t) C(0) V(0).
    complex total{charge_at(cfg, 0.0), 0.0};
    const complex i{0.0, 1.0};
    if (part == SpectrumPart::continuous) {
        if (const double line = guard_band_line(cfg, omega); line > 0.0) {
            throw GuardBandError("omega lies inside the guard band of the coherent line at " +
                                     std::to_string(line) + " rad/s",
                                 line);
        }
        for (const auto& h : charge_harmonics(cfg)) {
            if (h.nu == 0.0 || h.amplitude == 0.0) {
                continue;
            }
            total -= 0.5 * h.amplitude * h.nu *
                     (std::polar(1.0, h.psi) / (omega + h.nu) - std::polar(1.0, -h.psi) / (omega - h.nu));
        }
    } else {
        const double T = cfg.window_time;
        for (const auto& h : charge_harmonics(cfg)) {
            if (h.nu == 0.0 || h.amplitude == 0.0) {
                continue;
            }
            total -= h.amplitude * h.nu / (2.0 * i) *
                     (std::polar(1.0, h.psi) * window_integral(omega + h.nu, T) -
                      std::polar(1.0, -h.psi) * window_integral(omega - h.nu, T));
        }
    }
    return inv_sqrt_2pi * total;
}

std::vector<SpectralLine> source_lines(const SourceConfig& cfg) {
    std::vector<SpectralLine> lines;
    const complex i{0.0, 1.0};
    for (const auto& h : charge_harmonics(cfg)) {
        if (h.nu == 0.0 || h.amplitude == 0.0) {
            continue;
        }
        const complex f = -i * h.amplitude * h.nu * std::polar(1.0, -h.psi) / 2.0;
        const complex weight = std::sqrt(constants::pi / 2.0) * f;
        auto same = std::find_if(lines.begin(), lines.end(), [&](const SpectralLine& l) {
            return std::abs(l.omega - h.nu) <= 1e-12 * h.nu;
        });
        if (same != lines.end()) {
            same->weight += weight;
        } else {
            lines.push_back({h.nu, weight});
        }
    }
    std::sort(lines.begin(), lines.end(),
              [](const SpectralLine& a, const SpectralLine& b) { return a.omega < b.omega; });
    return lines;
}

complex h_coefficient(double omega, const SourceConfig& cfg, const LineParams& line,
                      SpectrumPart part) {
    if (!(omega > 0.0)) {
        throw InvalidArgument("h_coefficient requires omega > 0");
    }
    const double scale = std::sqrt(4.0 * constants::pi * line.z0 / (constants::hbar * omega));
    return complex{0.0, -scale} * source_spectrum(cfg, omega, part);
}

ScatterSet single_mirror_output(double omega, const SourceConfig& cfg, const LineParams& line) {
    const double wm = cfg.cap.omega_m;
    if (!(omega > 0.0 && omega <= wm)) {
        throw InvalidArgument("single_mirror_output requires 0 < omega <= omega_m");
    }
    ScatterSet out;
    out.omega = omega;
    out.r_res = {1.0, 0.0};
    out.s1_res = s_coefficient(cfg.cap.delta_c, line.z0, omega, wm + omega);
    out.s2_res = s_coefficient(cfg.cap.delta_c, line.z0, omega, wm - omega);
    out.h_res = h_coefficient(omega, cfg, line);
    return out;
}

}  // namespace dce::scatter
