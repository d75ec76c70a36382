#pragma once

// Output photon spectral density in the readout line and its decompositions.
//
// All columns are dimensionless occupations per unit bandwidth. The
// electro-mechanical source enters through |h_res|^2 built from the
// turn-on (continuous) part of the source transform; window_time only fixes
// the guard bands around the coherent drive lines.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dce/cavity.hpp"
#include "dce/scatter.hpp"

namespace dce::flux {

struct ThermalEnv {
    double temperature;  ///< K

    void validate() const;
};

enum RowFlag : std::uint32_t {
    kRowOk = 0,
    kGuardBand = 1U << 0,      ///< point inside a guard band; values zeroed
    kShiftedEdge = 1U << 1,    ///< point on a guard-band edge moved outward one step
    kNumerical = 1U << 2,      ///< numerical failure (e.g. denominator underflow); values zeroed
    kMechNegative = 1U << 3,   ///< mechanical share below -1e-15, clipped to 0
};

/// "ok" or '|'-joined flag names.
[[nodiscard]] std::string flag_names(std::uint32_t flags);

struct SpectrumRow {
    double omega{};
    double n_total{};
    double n_dce{};
    double n_thermal{};
    double n_mech_only{};
    std::uint32_t flags{kRowOk};
};

struct SpectrumTable {
    std::vector<SpectrumRow> rows;
};

/// Bose-Einstein occupation; 0 at T = 0.
[[nodiscard]] double thermal_occupation(double omega, const ThermalEnv& env);

/// n_out(w) = |R|^2 n(w) + |S1|^2 n(W+w) + |S2|^2 [1 + n(W-w)] + |h|^2 per grid point.
/// Grid must be strictly increasing inside (0, W). Rows are evaluated on
/// `threads` workers; the table is identical for any thread count.
[[nodiscard]] SpectrumTable output_spectrum(std::span<const double> grid,
                                            const cavity::CavityParams& cav,
                                            const scatter::SourceConfig& cfg,
                                            const scatter::LineParams& line, const ThermalEnv& env,
                                            unsigned threads = 1);

/// output_spectrum plus n_mech_only = n_dce - n_dce(delta_c = 0).
[[nodiscard]] SpectrumTable decompose_mech_electrical(std::span<const double> grid,
                                                      const cavity::CavityParams& cav,
                                                      const scatter::SourceConfig& cfg,
                                                      const scatter::LineParams& line,
                                                      const ThermalEnv& env, unsigned threads = 1);

struct ImpedanceScaling {
    double s_ratio;  ///< |S| ratio of the bare coefficient (equals factor)
    double h_ratio;  ///< |h| ratio of the bare coefficient (equals sqrt(factor))
    /// Mechanical flux |S2_res(W/2)|^2 ratio with the cavity held fixed.
    double mech_flux_ratio;
    /// (|S2_res|^2 / |h_res|^2) ratio: improvement of the mechanical share.
    double mech_to_elec_improvement;
};

/// Re-evaluates at omega = W/2 with line impedance z0 * factor (capacitance
/// density held fixed, cavity unchanged).
[[nodiscard]] ImpedanceScaling impedance_scaling_check(const cavity::CavityParams& cav,
                                                       const scatter::SourceConfig& cfg,
                                                       const scatter::LineParams& line,
                                                       double factor);

/// Peak mirror velocity over signal speed, delta_x * W / v.
[[nodiscard]] double vc_ratio(double delta_x, double omega_m, double v_light);

struct RateScaling {
    /// Log-log slope of |S2_res(W/2)|^2 against delta_x over {1, 2, 4} x.
    double delta_x_exponent;
    /// Same against the line signal speed at fixed capacitance density.
    double v_light_exponent;
    std::vector<double> fluxes_vs_delta_x;
    std::vector<double> fluxes_vs_v_light;
};

[[nodiscard]] RateScaling resonant_rate_scaling(const cavity::CavityParams& cav,
                                                const scatter::SourceConfig& cfg,
                                                const scatter::LineParams& line);

/// Least-squares slope of log(y) against log(x).
[[nodiscard]] double log_log_slope(std::span<const double> x, std::span<const double> y);

}  // namespace dce::flux
