#include "dce/mbvd.hpp"

#include <cmath>

#include "dce/constants.hpp"
#include "dce/errors.hpp"

namespace dce::mbvd {

void MbvdParams::validate() const {
    if (!(c_m > 0.0) || !(l_m > 0.0) || !(c_plate > 0.0)) {
        throw InvalidArgument("c_m, l_m and c_plate must be > 0");
    }
    if (!(r_m >= 0.0) || !(r_0 >= 0.0) || !(r_s >= 0.0)) {
        throw InvalidArgument("resistances must be >= 0");
    }
}

namespace {

void require_positive_frequency(double omega) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw InvalidArgument("omega must be finite and > 0");
    }
}

}  // namespace

std::complex<double> motional_impedance(const MbvdParams& p, double omega) {
    require_positive_frequency(omega);
    return {p.r_m, omega * p.l_m - 1.0 / (omega * p.c_m)};
}

std::complex<double> plate_impedance(const MbvdParams& p, double omega) {
    require_positive_frequency(omega);
    return {p.r_0, -1.0 / (omega * p.c_plate)};
}

EquivalentImpedance equivalent_impedance(const MbvdParams& p, double omega) {
    const auto zm = motional_impedance(p, omega);
    const auto z0 = plate_impedance(p, omega);
    const auto sum = z0 + zm;
    if (std::abs(sum) < 1e-9 * std::abs(zm)) {
        throw NumericalError("motional and plate branches cancel (|Z_0 + Z_m| ~ 0)");
    }
    const auto z_eq = z0 * zm / sum;
    return {z_eq, std::abs(z_eq - z0) / std::abs(z0)};
}

ResonanceSummary resonances_and_coupling(const MbvdParams& p) {
    const double omega_s = 1.0 / std::sqrt(p.l_m * p.c_m);
    const double r = p.c_plate / p.c_m;
    const double omega_p = omega_s * std::sqrt(1.0 + 1.0 / r);
    const double kt2 = constants::pi * constants::pi / 8.0 / r * (1.0 - 1.0 / r);
    return {omega_s, omega_p, r, kt2};
}

double composite_quality(const MbvdParams& p, double omega) {
    require_positive_frequency(omega);
    if (p.r_m + p.r_0 <= 0.0) {
        throw InvalidArgument("quality factor undefined for a lossless circuit");
    }
    return 1.0 / (omega * p.c_m * (p.r_m + p.r_0));
}

}  // namespace dce::mbvd
