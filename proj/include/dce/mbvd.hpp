#pragma once

// Modified Butterworth-Van Dyke equivalent circuit: a motional R_m-L_m-C_m
// branch in parallel with the plate branch R_0-C_0. The electrode series
// resistance R_s is carried for completeness but is not part of Z_eq.

#include <complex>

namespace dce::mbvd {

struct MbvdParams {
    double c_m;      ///< motional capacitance, F
    double l_m;      ///< motional inductance, H
    double r_m;      ///< motional resistance, Ohm
    double r_0;      ///< dielectric-loss resistance, Ohm
    double r_s;      ///< electrode series resistance, Ohm
    double c_plate;  ///< plate capacitance C_0, F

    void validate() const;
};

struct EquivalentImpedance {
    std::complex<double> z_eq;
    /// |z_eq - Z_0| / |Z_0|: how far the circuit is from the plate-branch reduction.
    double reduction_error;
};

struct ResonanceSummary {
    double omega_s;  ///< series resonance, rad/s
    double omega_p;  ///< parallel resonance, rad/s
    double r;        ///< capacitance ratio C_0/C_m
    double kt2;      ///< effective electro-acoustic coupling k_t^2
};

[[nodiscard]] std::complex<double> motional_impedance(const MbvdParams& p, double omega);
[[nodiscard]] std::complex<double> plate_impedance(const MbvdParams& p, double omega);

/// Z_0 || Z_m. Throws NumericalError when |Z_0 + Z_m| < 1e-9 |Z_m|.
[[nodiscard]] EquivalentImpedance equivalent_impedance(const MbvdParams& p, double omega);

[[nodiscard]] ResonanceSummary resonances_and_coupling(const MbvdParams& p);

/// 1/Q = omega C_m (R_m + R_0).
[[nodiscard]] double composite_quality(const MbvdParams& p, double omega);

}  // namespace dce::mbvd
