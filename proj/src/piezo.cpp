#include "dce/piezo.hpp"

#include <cmath>
#include <string>

#include "dce/constants.hpp"
#include "dce/errors.hpp"

namespace dce::piezo {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw InvalidArgument(std::string(name) + " must be finite and > 0");
    }
}

}  // namespace

void MaterialProps::validate() const {
    require_positive(youngs_modulus, "youngs_modulus");
    require_positive(density, "density");
    require_positive(d33, "d33");
    require_positive(sound_speed, "sound_speed");
    require_positive(permittivity, "permittivity");
    if (!(poisson > 0.0 && poisson < 0.5)) {
        throw InvalidArgument("poisson must lie in (0, 0.5)");
    }
    if (permittivity < constants::vacuum_permittivity) {
        throw InvalidArgument("permittivity must not be below the vacuum permittivity");
    }
}

void FbarGeometry::validate() const {
    require_positive(t_piezo, "t_piezo");
    require_positive(area, "area");
    require_positive(omega_m, "omega_m");
    if (!(quality >= 1.0) || !std::isfinite(quality)) {
        throw InvalidArgument("quality must be >= 1");
    }
}

void DriveParams::validate() const {
    if (!(v_pp >= 0.0) || !std::isfinite(v_pp)) {
        throw InvalidArgument("v_pp must be finite and >= 0");
    }
    if (!std::isfinite(phase)) {
        throw InvalidArgument("phase must be finite");
    }
    require_positive(omega_d, "omega_d");
}

StaticResponse static_response(const MaterialProps& mat, const FbarGeometry& geo, double voltage) {
    if (!std::isfinite(voltage)) {
        throw InvalidArgument("voltage must be finite");
    }
    const double dz = std::abs(mat.d33 * voltage);
    return {dz, mat.d33 * voltage / geo.t_piezo};
}

std::complex<double> mechanical_susceptibility(double omega, double omega_m, double gamma) {
    if (!(omega_m > 0.0)) {
        throw InvalidArgument("omega_m must be > 0");
    }
    if (gamma < 0.0) {
        throw InvalidArgument("gamma must be >= 0");
    }
    if (gamma == 0.0 && std::abs(omega) == omega_m) {
        throw InvalidArgument("undamped susceptibility evaluated at its pole");
    }
    const std::complex<double> denom{omega_m * omega_m - omega * omega, -gamma * omega};
    return 1.0 / denom;
}

namespace {

// Acceleration per unit displacement response: F/m = (E/(rho t)) d33 V / t.
double force_per_mass(const MaterialProps& mat, const FbarGeometry& geo, double v_pp) {
    return mat.youngs_modulus / (mat.density * geo.t_piezo) * mat.d33 * v_pp / geo.t_piezo;
}

}  // namespace

double driven_amplitude(const MaterialProps& mat, const FbarGeometry& geo, const DriveParams& drv) {
    if (std::abs(drv.omega_d - geo.omega_m) > 1e-9 * geo.omega_m) {
        throw InvalidArgument(
            "driven_amplitude requires a resonant drive; use response_amplitude off resonance");
    }
    return geo.quality / (geo.omega_m * geo.omega_m) * force_per_mass(mat, geo, drv.v_pp);
}

double response_amplitude(const MaterialProps& mat, const FbarGeometry& geo,
                          const DriveParams& drv) {
    const auto chi = mechanical_susceptibility(drv.omega_d, geo.omega_m, geo.gamma());
    return std::abs(chi) * force_per_mass(mat, geo, drv.v_pp);
}

double bulk_mode_frequency(const MaterialProps& mat, double thickness) {
    const double bulk_modulus = mat.youngs_modulus / (3.0 * (1.0 - 2.0 * mat.poisson));
    return constants::pi * std::sqrt(bulk_modulus / mat.density) / thickness;
}

double driven_amplitude_bulk_form(const MaterialProps& mat, const FbarGeometry& geo,
                                  const DriveParams& drv) {
    return geo.quality / (constants::pi * constants::pi) * 3.0 * (1.0 - 2.0 * mat.poisson) *
           mat.d33 * drv.v_pp;
}

PlateCapacitance delta_capacitance(const MaterialProps& mat, const FbarGeometry& geo,
                                   double delta_x) {
    if (!(delta_x >= 0.0)) {
        throw InvalidArgument("delta_x must be >= 0");
    }
    if (delta_x >= geo.t_piezo / 100.0) {
        throw ValidityError("delta_x must stay below t_piezo/100 for the first-order capacitance "
                            "expansion");
    }
    const double c0 = mat.permittivity * geo.area / geo.t_piezo;
    return {c0, c0 * delta_x / geo.t_piezo};
}

double area_for_capacitance(const MaterialProps& mat, double thickness, double c0) {
    return thickness * c0 / mat.permittivity;
}

}  // namespace dce::piezo
