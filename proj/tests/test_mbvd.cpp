#include <cmath>
#include <complex>

#include "dce/constants.hpp"
#include "dce/errors.hpp"
#include "dce/mbvd.hpp"
#include "doctest.h"

using namespace dce;
using namespace dce::mbvd;
using cd = std::complex<double>;

namespace {

MbvdParams table_values() { return {0.655e-15, 1.043e-6, 146.0, 8.0, 0.0, 0.4e-12}; }

const double kW = constants::two_pi * 2.1e9;

// Bisection for a sign change of f on [a, b].
template <typename F>
double bisect(F f, double a, double b) {
    double fa = f(a);
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

TEST_CASE("plate branch at 2.1 GHz") {
    const cd z = plate_impedance(table_values(), kW);
    CHECK(z.real() == doctest::Approx(8.0).epsilon(0.01));
    CHECK(z.imag() == doctest::Approx(-189.0).epsilon(0.01));
    const cd oracle = 8.0 + 1.0 / (cd{0.0, 1.0} * kW * 0.4e-12);
    CHECK(std::abs(z - oracle) < 1e-12 * std::abs(oracle));
}

TEST_CASE("equivalent impedance reduces to the plate branch far from resonance") {
    const auto p = table_values();
    const auto eq = equivalent_impedance(p, kW);
    const cd y = 1.0 / plate_impedance(p, kW) + 1.0 / motional_impedance(p, kW);
    CHECK(std::abs(eq.z_eq - 1.0 / y) < 1e-12 * std::abs(eq.z_eq));
    CHECK(eq.reduction_error < 0.01);
}

TEST_CASE("series and parallel resonances") {
    const auto p = table_values();
    const auto s = resonances_and_coupling(p);
    const double ws = bisect([&](double w) { return motional_impedance(p, w).imag(); }, 0.5 * s.omega_s,
                             2.0 * s.omega_s);
    CHECK(s.omega_s == doctest::Approx(ws).epsilon(1e-12));

    MbvdParams lossless = p;
    lossless.r_m = 0.0;
    lossless.r_0 = 0.0;
    // lossless admittance vanishes at the parallel resonance
    const double wp = bisect(
        [&](double w) {
            return (1.0 / plate_impedance(lossless, w) + 1.0 / motional_impedance(lossless, w)).imag();
        },
        s.omega_s * (1.0 + 1e-9), 2.0 * s.omega_s);
    CHECK(s.omega_p == doctest::Approx(wp).epsilon(1e-12));
    CHECK(s.r == doctest::Approx(0.4e-12 / 0.655e-15));
    CHECK(s.kt2 == doctest::Approx(constants::pi * constants::pi / (8.0 * s.r) * (1.0 - 1.0 / s.r)));
    CHECK_THROWS_AS((void)equivalent_impedance(lossless, s.omega_p), NumericalError);
}

TEST_CASE("composite quality equals the half-power bandwidth ratio") {
    const auto p = table_values();
    const double ws = resonances_and_coupling(p).omega_s;
    const double q = composite_quality(p, ws);
    auto power = [&](double w) { return 1.0 / std::norm(motional_impedance(p, w) + p.r_0); };
    const double half = 0.5 * power(ws);
    const double lo = bisect([&](double w) { return power(w) - half; }, 0.9 * ws, ws);
    const double hi = bisect([&](double w) { return power(w) - half; }, ws, 1.1 * ws);
    CHECK(q == doctest::Approx(ws / (hi - lo)).epsilon(1e-3));

    MbvdParams lossless = p;
    lossless.r_m = lossless.r_0 = 0.0;
    CHECK_THROWS_AS((void)composite_quality(lossless, ws), InvalidArgument);
}

TEST_CASE("domain checks") {
    const auto p = table_values();
    CHECK_THROWS_AS((void)plate_impedance(p, 0.0), InvalidArgument);
    CHECK_THROWS_AS((void)motional_impedance(p, -1.0), InvalidArgument);
    MbvdParams bad = p;
    bad.r_m = -1.0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad = p;
    bad.c_plate = 0.0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    CHECK_NOTHROW(p.validate());
}
