#pragma once

// Bare single-mirror scattering: the modulated FBAR capacitance terminating
// a transmission line, its electro-mechanical source term F(t) = d/dt(theta C V)
// and the first-order coefficients S(omega', omega'') and h(omega, Omega).

#include <complex>
#include <vector>

#include "dce/piezo.hpp"

namespace dce::scatter {

using complex = std::complex<double>;

/// C(t) = c0 + delta_c cos(omega_m t)
struct TimeVaryingCap {
    double c0;
    double delta_c;
    double omega_m;

    void validate() const;
};

/// Telegrapher line; z0 = sqrt(L/C), v_light = 1/sqrt(L C).
struct LineParams {
    double z0;
    double v_light;
    double cap_density;  ///< F/m
    double ind_density;  ///< H/m

    /// Derives the densities from z0 and v_light (cap_density = 1/(v z0)).
    [[nodiscard]] static LineParams from_impedance(double z0, double v_light);
    /// Same line with impedance z0 at unchanged capacitance density.
    [[nodiscard]] LineParams with_impedance_at_fixed_capacitance(double z0) const;

    void validate() const;
};

struct SourceConfig {
    piezo::DriveParams drive;
    TimeVaryingCap cap;
    double window_time;  ///< s

    void validate() const;
    /// Half-width of the excluded band around each coherent line, 100/window_time.
    [[nodiscard]] double guard_band() const { return 100.0 / window_time; }
    [[nodiscard]] double modulation() const { return cap.omega_m; }
};

/// Which part of the source transform to evaluate.
enum class SpectrumPart {
    /// Turn-on (lower-limit) contribution of the one-sided transform: the
    /// principal-value tails of the coherent lines. Independent of window_time.
    continuous,
    /// Full finite-window transform (2 pi)^{-1/2} int_0^T F(t) e^{i omega t} dt.
    windowed,
};

/// Coherent component of F(t) at a positive frequency.
struct SpectralLine {
    double omega;
    /// Integrated weight of the line in the one-sided transform, sqrt(pi/2) f_k
    /// for F(t) containing f_k e^{-i omega_k t} + c.c.
    complex weight;
};

/// Coefficient set for one output frequency. For the bare mirror r_res is the
/// elastic passthrough (1); the cavity module fills the dressed values.
struct ScatterSet {
    double omega{};
    complex r_res{1.0, 0.0};
    complex s1_res{};  ///< partner omega_m + omega
    complex s2_res{};  ///< partner omega_m - omega
    complex h_res{};
};

[[nodiscard]] double capacitance_at(const TimeVaryingCap& cap, double t);

/// Apparent mirror displacement L_eff = c0 / cap_density.
[[nodiscard]] double effective_length(double c0, const LineParams& line);

/// S(w1, w2) = -i dC z0 sqrt(w1 w2) theta(w1) theta(w2), with theta(0) = 0.
[[nodiscard]] complex s_coefficient(double delta_c, double z0, double omega1, double omega2);

/// F(t) for 0 < t <= window_time (the turn-on impulse at t = 0 is excluded).
[[nodiscard]] double source_time(const SourceConfig& cfg, double t);

/// Product C(t) V(t); its value at t = 0 weights the turn-on impulse.
[[nodiscard]] double charge_at(const SourceConfig& cfg, double t);

/// Transform of F at omega > 0. The continuous part throws GuardBandError
/// within guard_band() of a coherent line.
[[nodiscard]] complex source_spectrum(const SourceConfig& cfg, double omega,
                                      SpectrumPart part = SpectrumPart::continuous);

/// Coherent lines of F at positive frequency with non-zero weight, ascending.
[[nodiscard]] std::vector<SpectralLine> source_lines(const SourceConfig& cfg);

/// Line frequency whose guard band contains omega, or a negative value.
[[nodiscard]] double guard_band_line(const SourceConfig& cfg, double omega);

/// h(omega) = -i sqrt(4 pi z0 / (hbar omega)) F(omega).
[[nodiscard]] complex h_coefficient(double omega, const SourceConfig& cfg, const LineParams& line,
                                    SpectrumPart part = SpectrumPart::continuous);

/// Bare output coefficients for 0 < omega <= omega_m.
[[nodiscard]] ScatterSet single_mirror_output(double omega, const SourceConfig& cfg,
                                              const LineParams& line);

}  // namespace dce::scatter
