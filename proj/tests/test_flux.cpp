#include <algorithm>
#include <cmath>
#include <vector>

#include "dce/constants.hpp"
#include "dce/errors.hpp"
#include "dce/flux.hpp"
#include "doctest.h"

using namespace dce;
using namespace dce::flux;

namespace {

const double kOmega = constants::two_pi * 4.2e9;

struct Setup {
    cavity::CavityParams cav;
    scatter::SourceConfig cfg;
    scatter::LineParams line;
    ThermalEnv env;
};

// Low-Q operating point: 0.5 mV drive, dx = 8.55e-13 m on a 350 nm film with C0 = 0.4 pF.
Setup low_q(double v_pp = 5e-4, double delta_x = 8.5509668564194834e-13) {
    Setup s;
    s.line = scatter::LineParams::from_impedance(55.0, 1e8);
    s.cfg.drive = {v_pp, constants::pi / 2.0, kOmega};
    s.cfg.cap = {0.4e-12, 0.4e-12 * delta_x / 3.5e-7, kOmega};
    s.cfg.window_time = 1e-6;
    s.cav = {0.033, 1e8, 55.0, constants::two_pi * 29.1e9, scatter::effective_length(0.4e-12, s.line)};
    s.env = {0.01};
    return s;
}

std::vector<double> grid(double lo, double hi, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        g[static_cast<std::size_t>(i)] = (lo + (hi - lo) * i / (n - 1)) * kOmega;
    }
    return g;
}

}  // namespace

TEST_CASE("Bose-Einstein occupation") {
    const double w = constants::two_pi * 2.1e9;
    const double x = 1.054571817e-34 * w / (1.380649e-23 * 0.01);
    CHECK(thermal_occupation(w, {0.01}) == doctest::Approx(1.0 / (std::exp(x) - 1.0)).epsilon(1e-12));
    CHECK(thermal_occupation(w, {0.01}) == doctest::Approx(4.19e-5).epsilon(0.02));
    // Rayleigh-Jeans limit
    CHECK(thermal_occupation(w, {300.0}) ==
          doctest::Approx(1.380649e-23 * 300.0 / (1.054571817e-34 * w) - 0.5).epsilon(1e-6));
    CHECK(thermal_occupation(w, {0.0}) == 0.0);
    CHECK_THROWS_AS((void)thermal_occupation(0.0, {1.0}), InvalidArgument);
    CHECK_THROWS_AS(ThermalEnv{-1.0}.validate(), InvalidArgument);
}

TEST_CASE("no drive gives the equilibrium spectrum") {
    const Setup s = low_q(0.0, 0.0);
    const auto g = grid(0.01, 0.99, 2000);
    const auto t = output_spectrum(g, s.cav, s.cfg, s.line, s.env);
    for (const auto& row : t.rows) {
        const double n_in = thermal_occupation(row.omega, s.env);
        CHECK(std::abs(row.n_total - n_in) <= 1e-12 * n_in);
        CHECK(row.n_dce == 0.0);
        CHECK(row.flags == kRowOk);
    }
}

TEST_CASE("spectrum columns are consistent") {
    const Setup s = low_q();
    const auto g = grid(0.01, 0.99, 500);
    const auto t = output_spectrum(g, s.cav, s.cfg, s.line, s.env);
    REQUIRE(t.rows.size() == g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto& r = t.rows[i];
        CHECK(r.omega == g[i]);
        const auto c = cavity::dressed_coefficients(r.omega, s.cav, s.cfg, s.line);
        CHECK(r.n_total == doctest::Approx(r.n_thermal + r.n_dce).epsilon(1e-12));
        CHECK(r.n_dce == doctest::Approx(std::norm(c.s2_res) + std::norm(c.h_res)).epsilon(1e-14));
    }
}

TEST_CASE("n_dce at half the modulation frequency") {
    const Setup s = low_q();
    const std::vector<double> g{0.5 * kOmega};
    const auto row = output_spectrum(g, s.cav, s.cfg, s.line, s.env).rows.front();
    CHECK(row.n_dce >= 1e-3);
    CHECK(row.n_dce <= 1e-1);
    CHECK(row.n_thermal == doctest::Approx(4.1978e-5).epsilon(0.02));
}

TEST_CASE("n_dce peaks at the cavity resonance nearest Omega/2") {
    const Setup s = low_q();
    const auto g = grid(0.01, 0.99, 2000);
    const auto t = output_spectrum(g, s.cav, s.cfg, s.line, s.env);
    const auto roots = cavity::cavity_resonances(s.cav, {g.front(), g.back()});
    const double target = *std::min_element(roots.begin(), roots.end(), [](double a, double b) {
        return std::abs(a - 0.5 * kOmega) < std::abs(b - 0.5 * kOmega);
    });
    // local maximum of n_dce within the span between neighbouring resonances
    std::size_t best = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] > 0.33 * kOmega && g[i] < 0.66 * kOmega && t.rows[i].n_dce > t.rows[best].n_dce) {
            best = i;
        }
    }
    const double cell = g[1] - g[0];
    CHECK(std::abs(g[best] - target) <= cell);
}

TEST_CASE("guard bands are flagged and edges shifted") {
    Setup s = low_q();
    s.cfg.window_time = 101.0 * constants::two_pi / kOmega;
    const double guard = s.cfg.guard_band();
    // band edge of the line at Omega falls on a grid point
    const double edge = kOmega - guard;
    const double step = 0.001 * kOmega;
    std::vector<double> g{edge - 2.0 * step, edge - step, edge, edge + step, 0.99 * kOmega};
    const auto t = output_spectrum(g, s.cav, s.cfg, s.line, s.env);
    CHECK(t.rows[0].flags == kRowOk);
    CHECK(t.rows[2].flags == kShiftedEdge);
    CHECK(t.rows[2].omega == doctest::Approx(edge - step).epsilon(1e-15));
    CHECK(t.rows[3].flags == kGuardBand);
    CHECK(t.rows[3].n_total == 0.0);
    CHECK(t.rows[4].flags == kGuardBand);
    CHECK(flag_names(kGuardBand | kNumerical) == "guard_band|numerical");
    CHECK(flag_names(kRowOk) == "ok");
}

TEST_CASE("row values do not depend on the thread count") {
    const Setup s = low_q();
    const auto g = grid(0.01, 0.99, 777);
    const auto a = decompose_mech_electrical(g, s.cav, s.cfg, s.line, s.env, 1);
    const auto b = decompose_mech_electrical(g, s.cav, s.cfg, s.line, s.env, 5);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(a.rows[i].n_total == b.rows[i].n_total);
        CHECK(a.rows[i].n_mech_only == b.rows[i].n_mech_only);
        CHECK(a.rows[i].flags == b.rows[i].flags);
    }
}

TEST_CASE("grid preconditions") {
    const Setup s = low_q();
    const std::vector<double> unsorted{0.3 * kOmega, 0.2 * kOmega};
    CHECK_THROWS_AS((void)output_spectrum(unsorted, s.cav, s.cfg, s.line, s.env), InvalidArgument);
    const std::vector<double> outside{0.3 * kOmega, 1.2 * kOmega};
    CHECK_THROWS_AS((void)output_spectrum(outside, s.cav, s.cfg, s.line, s.env), InvalidArgument);
}

TEST_CASE("mechanical share of the generated photons") {
    const Setup s = low_q();
    const std::vector<double> g{0.5 * kOmega};
    const auto row = decompose_mech_electrical(g, s.cav, s.cfg, s.line, s.env).rows.front();
    CHECK(row.n_mech_only > 5e-10);
    CHECK(row.n_mech_only < 5e-8);
    const double ratio = row.n_mech_only / row.n_dce;
    CHECK(ratio > 1e-7);
    CHECK(ratio < 1e-5);

    // oracle: difference of two independent spectra
    Setup elec = s;
    elec.cfg.cap.delta_c = 0.0;
    const double full = output_spectrum(g, s.cav, s.cfg, s.line, s.env).rows.front().n_dce;
    const double bare = output_spectrum(g, elec.cav, elec.cfg, elec.line, elec.env).rows.front().n_dce;
    CHECK(row.n_mech_only == doctest::Approx(full - bare).epsilon(1e-5));
}

TEST_CASE("impedance scaling") {
    const Setup s = low_q();
    const double factor = 1e4 / 55.0;
    const auto r = impedance_scaling_check(s.cav, s.cfg, s.line, factor);
    CHECK(std::abs(r.s_ratio / factor - 1.0) < 1e-9);
    CHECK(std::abs(r.h_ratio / std::sqrt(factor) - 1.0) < 1e-9);
    CHECK(r.mech_flux_ratio == doctest::Approx(factor * factor).epsilon(1e-9));
    CHECK(r.mech_flux_ratio > 1e4);
    CHECK(r.mech_to_elec_improvement == doctest::Approx(factor).epsilon(1e-9));
    CHECK_THROWS_AS((void)impedance_scaling_check(s.cav, s.cfg, s.line, 0.0), InvalidArgument);
}

TEST_CASE("resonant rate scaling") {
    const Setup s = low_q();
    const auto r = resonant_rate_scaling(s.cav, s.cfg, s.line);
    CHECK(std::abs(r.delta_x_exponent - 2.0) < 1e-6);
    CHECK(std::abs(r.v_light_exponent + 2.0) < 1e-6);
}

TEST_CASE("v/c ratios") {
    CHECK(vc_ratio(8.55e-13, kOmega, 1e8) == doctest::Approx(2.2e-10).epsilon(0.1));
    CHECK(vc_ratio(8.5e-11, kOmega, 1e8) == doctest::Approx(2.2e-8).epsilon(0.1));
    CHECK_THROWS_AS((void)vc_ratio(1e-12, kOmega, 0.0), InvalidArgument);
}

TEST_CASE("log-log slope recovers exact power laws") {
    const std::vector<double> x{1.0, 2.0, 4.0, 8.0};
    std::vector<double> y;
    for (double v : x) y.push_back(3.0 * std::pow(v, -1.5));
    CHECK(log_log_slope(x, y) == doctest::Approx(-1.5).epsilon(1e-13));
    CHECK_THROWS_AS((void)log_log_slope(std::vector<double>{1.0}, std::vector<double>{1.0}), InvalidArgument);
}
