#include "dce/cavity.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>

#include "dce/constants.hpp"
#include "dce/errors.hpp"

namespace dce::cavity {

using constants::pi;

void CavityParams::validate() const {
    if (!(length_d > 0.0) || !(v_light > 0.0) || !(z0 > 0.0)) {
        throw InvalidArgument("cavity length, v_light and z0 must be > 0");
    }
    if (!(omega_coupling > 0.0)) {
        throw InvalidArgument("omega_coupling must be > 0");
    }
    if (!(l_eff >= 0.0)) {
        throw InvalidArgument("l_eff must be >= 0");
    }
}

double CavityParams::omega_0() const { return constants::two_pi * v_light / d_eff(); }

namespace {

void require_positive_frequency(double omega) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw InvalidArgument("omega must be finite and > 0");
    }
}

complex checked_denominator(double omega, const CavityParams& cav) {
    const complex den = resonance_denominator(omega, cav);
    if (std::abs(den) < 1e-14) {
        throw NumericalError("cavity denominator underflow");
    }
    return den;
}

}  // namespace

Eigen::Matrix2cd inout_transfer(double omega, double omega_coupling) {
    require_positive_frequency(omega);
    const complex beta{0.0, omega_coupling / (2.0 * omega)};
    const complex alpha = 1.0 + beta;
    Eigen::Matrix2cd m;
    m << std::conj(alpha), beta, std::conj(beta), alpha;
    return m;
}

Eigen::Matrix2cd propagate(double omega, const CavityParams& cav) {
    require_positive_frequency(omega);
    const double kd = cav.phase(omega);
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = std::polar(1.0, kd);
    m(1, 1) = std::polar(1.0, -kd);
    return m;
}

complex resonance_denominator(double omega, const CavityParams& cav) {
    require_positive_frequency(omega);
    const complex detune{1.0, -2.0 * omega / cav.omega_coupling};
    return detune + std::polar(1.0, 2.0 * cav.phase(omega));
}

complex reflection_coefficient(double omega, const CavityParams& cav) {
    const complex den = checked_denominator(omega, cav);
    const complex round_trip = std::polar(1.0, 2.0 * cav.phase(omega));
    const complex num = 1.0 + complex{1.0, 2.0 * omega / cav.omega_coupling} * round_trip;
    return num / den;
}

complex mode_response(double omega, const CavityParams& cav) {
    const complex den = checked_denominator(omega, cav);
    const complex gain{0.0, 2.0 * omega / cav.omega_coupling};
    return gain * std::polar(1.0, cav.phase(omega)) / den;
}

namespace {

// Branch n of tan(k d_eff) spans k d_eff in (n pi - pi/2, n pi + pi/2), cut at 0.
struct Branch {
    double lo;
    double hi;
};

Branch branch(const CavityParams& cav, long n) {
    const double scale = cav.v_light / cav.d_eff();
    return {std::max(0.0, (static_cast<double>(n) - 0.5) * pi * scale),
            (static_cast<double>(n) + 0.5) * pi * scale};
}

long branch_index(const CavityParams& cav, double omega) {
    return static_cast<long>(std::floor((cav.phase(omega) + 0.5 * pi) / pi));
}

double tan_residual(const CavityParams& cav, double omega) {
    return std::tan(cav.phase(omega)) - cav.omega_coupling / omega;
}

void check_band(std::pair<double, double> band) {
    if (!(band.first > 0.0) || !(band.second > band.first) || !std::isfinite(band.second)) {
        throw InvalidArgument("band must satisfy 0 < lo < hi < inf");
    }
}

}  // namespace

std::vector<Resonance> find_resonances(const CavityParams& cav, std::pair<double, double> band) {
    check_band(band);
    const double nudge = 1e-12 * cav.omega_0();
    std::vector<Resonance> roots;
    for (long n = branch_index(cav, band.first); n <= branch_index(cav, band.second); ++n) {
        const Branch br = branch(cav, n);
        // Poles are excluded by stepping inward; tan -> -inf on the left, +inf on the right.
        double a = std::max(band.first, br.lo > 0.0 ? br.lo + nudge : br.lo);
        double b = std::min(band.second, br.hi - nudge);
        if (!(a < b)) {
            continue;
        }
        double fa = tan_residual(cav, a);
        double fb = tan_residual(cav, b);
        if (fa > 0.0 || fb < 0.0) {
            continue;  // monotone branch: no root inside the band
        }
        for (int iter = 0; iter < 200; ++iter) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) {
                break;
            }
            const double fm = tan_residual(cav, mid);
            if (fm < 0.0) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
                fb = fm;
            }
            if (fm == 0.0) {
                break;
            }
        }
        const double w = std::abs(fa) < std::abs(fb) ? a : b;
        const double scale = cav.omega_coupling / w;
        const double residual = std::abs(tan_residual(cav, w)) / scale;
        roots.push_back({w, residual, residual < 1e-9});
    }
    return roots;
}

std::vector<double> cavity_resonances(const CavityParams& cav, std::pair<double, double> band) {
    std::vector<double> out;
    for (const auto& r : find_resonances(cav, band)) {
        if (!r.converged) {
            throw NumericalError("resonance refinement failed to converge near " +
                                 std::to_string(r.omega) + " rad/s");
        }
        out.push_back(r.omega);
    }
    return out;
}

std::vector<double> denominator_minima(const CavityParams& cav, std::pair<double, double> band) {
    check_band(band);
    std::vector<double> minima;
    const double scale = cav.v_light / cav.d_eff();
    for (long n = branch_index(cav, band.first); n <= branch_index(cav, band.second); ++n) {
        // |den|^2 is unimodal on the half-branch where tan(k d) >= 0.
        const double lo = std::max(band.first, static_cast<double>(n) * pi * scale);
        const double hi = std::min(band.second, branch(cav, n).hi);
        if (!(lo < hi)) {
            continue;
        }
        auto g = [&](double w) { return std::norm(resonance_denominator(w, cav)); };
        const auto [w, value] = boost::math::tools::brent_find_minima(
            g, lo, hi, std::numeric_limits<double>::digits / 2 + 4);
        const double edge_tol = 1e-9 * (hi - lo);
        if (w - lo > edge_tol && hi - w > edge_tol) {
            minima.push_back(w);
        }
    }
    return minima;
}

scatter::ScatterSet dressed_coefficients(double omega, const CavityParams& cav,
                                         const scatter::SourceConfig& cfg,
                                         const scatter::LineParams& line) {
    const double wm = cfg.cap.omega_m;
    if (!(omega > 0.0 && omega < wm)) {
        throw InvalidArgument("dressed_coefficients requires 0 < omega < omega_m");
    }
    const auto bare = scatter::single_mirror_output(omega, cfg, line);
    const complex a_w = mode_response(omega, cav);

    scatter::ScatterSet out;
    out.omega = omega;
    out.r_res = reflection_coefficient(omega, cav);
    out.s1_res = bare.s1_res * a_w * mode_response(wm + omega, cav);
    out.s2_res = bare.s2_res * std::conj(a_w) * mode_response(wm - omega, cav);
    out.h_res = bare.h_res / checked_denominator(omega, cav);
    return out;
}

}  // namespace dce::cavity
