#pragma once

// Piezoelectric drive of a thickness-mode FBAR: static strain, resonant
// motional amplitude and the resulting plate-capacitance modulation.

#include <complex>

namespace dce::piezo {

struct MaterialProps {
    double youngs_modulus;  ///< Pa
    double density;         ///< kg/m^3
    double d33;             ///< m/V
    double poisson;
    double sound_speed;     ///< m/s
    double permittivity;    ///< F/m

    /// Throws InvalidArgument naming the first violated invariant.
    void validate() const;
};

struct FbarGeometry {
    double t_piezo;  ///< piezoelectric film thickness, m
    double area;     ///< electrode area, m^2
    double quality;  ///< mechanical Q
    double omega_m;  ///< mechanical resonance, rad/s

    void validate() const;
    /// Linewidth of the mechanical mode, Omega/Q.
    [[nodiscard]] double gamma() const { return omega_m / quality; }
};

/// V(t) = v_pp cos(omega_d t + phase)
struct DriveParams {
    double v_pp;
    double phase;
    double omega_d;

    void validate() const;
};

struct StaticResponse {
    double delta_z;              ///< |d33 V|, m
    double freq_shift_fraction;  ///< d33 V / t
};

struct PlateCapacitance {
    double c0;       ///< mean plate capacitance, F
    double delta_c;  ///< first-order modulation amplitude, F
};

/// Geometric (non-resonant) thickness change and the relative shift of the
/// thickness-mode frequency it implies.
[[nodiscard]] StaticResponse static_response(const MaterialProps& mat, const FbarGeometry& geo,
                                             double voltage);

/// chi(omega) = 1 / (Omega^2 - omega^2 - i gamma omega)
[[nodiscard]] std::complex<double> mechanical_susceptibility(double omega, double omega_m,
                                                             double gamma);

/// Resonantly driven motional amplitude (Q/Omega^2)(E/(rho t))(d33 V_pp/t).
/// Requires drv.omega_d == geo.omega_m to 1e-9 relative.
[[nodiscard]] double driven_amplitude(const MaterialProps& mat, const FbarGeometry& geo,
                                      const DriveParams& drv);

/// Amplitude at an arbitrary drive frequency, |chi(omega_d)| (E/(rho t)) d33 V_pp / t.
/// Coincides with driven_amplitude on resonance.
[[nodiscard]] double response_amplitude(const MaterialProps& mat, const FbarGeometry& geo,
                                        const DriveParams& drv);

/// Thickness-mode resonance pi sqrt(K/rho)/t with bulk modulus K = E/(3(1-2 nu)).
[[nodiscard]] double bulk_mode_frequency(const MaterialProps& mat, double thickness);

/// Amplitude after substituting the bulk-mode resonance: (Q/pi^2) 3(1-2nu) d33 V_pp.
[[nodiscard]] double driven_amplitude_bulk_form(const MaterialProps& mat, const FbarGeometry& geo,
                                                const DriveParams& drv);

/// Parallel-plate C0 = eps A / t and Delta C = C0 delta_x / t.
/// Throws ValidityError when delta_x >= t/100.
[[nodiscard]] PlateCapacitance delta_capacitance(const MaterialProps& mat, const FbarGeometry& geo,
                                                 double delta_x);

/// Electrode area reproducing a given plate capacitance, t C0 / eps.
[[nodiscard]] double area_for_capacitance(const MaterialProps& mat, double thickness, double c0);

}  // namespace dce::piezo
