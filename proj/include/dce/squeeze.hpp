#pragma once

// Lumped parametric picture: an LC resonator whose capacitance is modulated
// by the vibrating plate, reduced under the rotating-wave approximation to
// the squeezing Hamiltonian H = hbar lambda [(a^dag)^2 + a^2].

#include <Eigen/Core>
#include <vector>

namespace dce::squeeze {

struct LcParams {
    double inductance;  ///< H
    double cap_cavity;  ///< C, F
    double cap_mirror;  ///< C_0, F
    double gap;         ///< plate separation d0, m
    double delta_x;     ///< vibration amplitude, m
    double omega_m;     ///< vibration frequency, rad/s

    void validate() const;
    [[nodiscard]] double total_capacitance() const { return cap_cavity + cap_mirror; }
    /// omega = 1/sqrt(L C_T)
    [[nodiscard]] double omega() const;
};

/// Amplitudes over the photon-number basis |0>, |1>, ..., |dim-1>.
using NumberBasisState = Eigen::VectorXcd;

struct InverseCapacitance {
    double series;  ///< 1/C_T + (C_0 dx / (C_T^2 d0)) cos(W t)
    double exact;   ///< 1/(C + C_0 d0/d(t)) with d(t) = d0 + dx cos(W t)
};

[[nodiscard]] InverseCapacitance inverse_capacitance_series(const LcParams& p, double t);

/// lambda = (omega/8) C_0 dx / (C_T d0). Throws InvalidArgument unless
/// omega_m = 2 omega to 1e-6 relative.
[[nodiscard]] double squeeze_coupling(const LcParams& p);

/// <n(t)> = sinh^2(2 lambda t) for evolution from vacuum.
[[nodiscard]] double analytic_photon_number(double lambda, double t);

struct EvolutionResult {
    double mean_photons;
    double norm_defect;      ///< 1 - <psi|psi>
    double odd_leakage;      ///< max |amplitude| over odd number states
    double top_population;   ///< population of the two highest basis states
    bool truncation_flag;    ///< top_population > 1e-8
};

struct EvolutionSample {
    double t;
    EvolutionResult result;
};

/// Fixed-step RK4 integration from vacuum with 2 lambda dt <= 1e-4.
/// Requires dim >= 16 and 2 lambda t <= 2.
[[nodiscard]] EvolutionResult evolve_truncated(double lambda, double t, int dim);

/// One integration over [0, t_max] sampled at `samples` equally spaced times
/// (including both ends).
[[nodiscard]] std::vector<EvolutionSample> evolve_series(double lambda, double t_max, int samples,
                                                         int dim);

[[nodiscard]] EvolutionResult summarize(const NumberBasisState& psi);

}  // namespace dce::squeeze
