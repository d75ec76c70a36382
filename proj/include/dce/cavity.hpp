#pragma once

// Cavity dressing of the bare mirror scattering. The FBAR terminates a
// transmission-line resonator of length d (effective length d + L_eff) that
// couples to the readout line through a capacitor with rate omega_c.

#include <Eigen/Core>
#include <complex>
#include <utility>
#include <vector>

#include "dce/scatter.hpp"

namespace dce::cavity {

using complex = std::complex<double>;

struct CavityParams {
    double length_d;        ///< m
    double v_light;         ///< signal speed in the resonator, m/s
    double z0;              ///< Ohm
    double omega_coupling;  ///< omega_c = 1/(C_c Z_0), rad/s
    double l_eff;           ///< mirror displacement C_0 / cap_density, m

    void validate() const;
    [[nodiscard]] double d_eff() const { return length_d + l_eff; }
    /// omega_0 = 2 pi v / d_eff
    [[nodiscard]] double omega_0() const;
    /// k_omega d_eff
    [[nodiscard]] double phase(double omega) const { return omega / v_light * d_eff(); }
};

/// [[conj(alpha), beta], [conj(beta), alpha]] with alpha = 1 + i wc/2w, beta = i wc/2w.
[[nodiscard]] Eigen::Matrix2cd inout_transfer(double omega, double omega_coupling);

/// diag(e^{i k d_eff}, e^{-i k d_eff})
[[nodiscard]] Eigen::Matrix2cd propagate(double omega, const CavityParams& cav);

/// (1 - 2i w/wc) + e^{2 i k d_eff}; vanishes only in the decoupled limit.
[[nodiscard]] complex resonance_denominator(double omega, const CavityParams& cav);

/// R_res = [1 + (1 + 2i w/wc) e^{2ikd}] / [(1 - 2i w/wc) + e^{2ikd}], |R_res| = 1.
[[nodiscard]] complex reflection_coefficient(double omega, const CavityParams& cav);

/// A_res = (2i w/wc) e^{ikd} / [(1 - 2i w/wc) + e^{2ikd}].
[[nodiscard]] complex mode_response(double omega, const CavityParams& cav);

struct Resonance {
    double omega;
    /// |tan(2 pi w/w0) - wc/w| / (wc/w)
    double residual;
    bool converged;
};

/// Roots of tan(2 pi w / w0) = wc / w inside band, one per tangent branch,
/// each carrying its convergence status.
[[nodiscard]] std::vector<Resonance> find_resonances(const CavityParams& cav,
                                                     std::pair<double, double> band);

/// As find_resonances, but throws NumericalError if any root failed to converge.
[[nodiscard]] std::vector<double> cavity_resonances(const CavityParams& cav,
                                                    std::pair<double, double> band);

/// Minima of |resonance_denominator| in band, one per tangent branch.
[[nodiscard]] std::vector<double> denominator_minima(const CavityParams& cav,
                                                     std::pair<double, double> band);

/// Dressed {R_res, S1_res(w, W+w), S2_res(w, W-w), h_res(w, W)} for 0 < omega < W.
[[nodiscard]] scatter::ScatterSet dressed_coefficients(double omega, const CavityParams& cav,
                                                       const scatter::SourceConfig& cfg,
                                                       const scatter::LineParams& line);

}  // namespace dce::cavity
