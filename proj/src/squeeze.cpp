#include "dce/squeeze.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "dce/errors.hpp"

namespace dce::squeeze {

void LcParams::validate() const {
    if (!(inductance > 0.0) || !(cap_cavity > 0.0) || !(cap_mirror > 0.0) || !(gap > 0.0) ||
        !(omega_m > 0.0)) {
        throw InvalidArgument("inductance, capacitances, gap and omega_m must be > 0");
    }
    if (!(delta_x >= 0.0)) {
        throw InvalidArgument("delta_x must be >= 0");
    }
    if (!(delta_x < gap / 100.0)) {
        throw ValidityError("delta_x must stay below gap/100");
    }
}

double LcParams::omega() const { return 1.0 / std::sqrt(inductance * total_capacitance()); }

InverseCapacitance inverse_capacitance_series(const LcParams& p, double t) {
    const double ct = p.total_capacitance();
    const double c = std::cos(p.omega_m * t);
    const double series = 1.0 / ct + p.cap_mirror * p.delta_x / (ct * ct * p.gap) * c;
    const double exact = 1.0 / (p.cap_cavity + p.cap_mirror / (1.0 + p.delta_x / p.gap * c));
    return {series, exact};
}

double squeeze_coupling(const LcParams& p) {
    const double w = p.omega();
    if (std::abs(p.omega_m - 2.0 * w) > 1e-6 * 2.0 * w) {
        throw InvalidArgument("rotating-wave condition violated: omega_m must equal 2 omega");
    }
    return w / 8.0 * p.cap_mirror * p.delta_x / (p.total_capacitance() * p.gap);
}

double analytic_photon_number(double lambda, double t) {
    if (!(t >= 0.0)) {
        throw InvalidArgument("t must be >= 0");
    }
    const double s = std::sinh(2.0 * lambda * t);
    return s * s;
}

namespace {

using complex = std::complex<double>;

// out = -i lambda [(a^dag)^2 + a^2] psi
void apply_generator(double lambda, const NumberBasisState& psi, NumberBasisState& out) {
    const Eigen::Index dim = psi.size();
    const complex minus_i_lambda{0.0, -lambda};
    for (Eigen::Index n = 0; n < dim; ++n) {
        complex acc{0.0, 0.0};
        const auto nd = static_cast<double>(n);
        if (n >= 2) {
            acc += std::sqrt(nd * (nd - 1.0)) * psi[n - 2];
        }
        if (n + 2 < dim) {
            acc += std::sqrt((nd + 1.0) * (nd + 2.0)) * psi[n + 2];
        }
        out[n] = minus_i_lambda * acc;
    }
}

class Rk4 {
public:
    Rk4(double lambda, Eigen::Index dim)
        : lambda_(lambda), k1_(dim), k2_(dim), k3_(dim), k4_(dim), tmp_(dim) {}

    void step(NumberBasisState& psi, double dt) {
        apply_generator(lambda_, psi, k1_);
        tmp_ = psi + 0.5 * dt * k1_;
        apply_generator(lambda_, tmp_, k2_);
        tmp_ = psi + 0.5 * dt * k2_;
        apply_generator(lambda_, tmp_, k3_);
        tmp_ = psi + dt * k3_;
        apply_generator(lambda_, tmp_, k4_);
        psi += dt / 6.0 * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
    }

private:
    double lambda_;
    NumberBasisState k1_, k2_, k3_, k4_, tmp_;
};

constexpr double kMaxPhaseStep = 1e-4;  // bound on 2 lambda dt

void check_evolution_args(double lambda, double t, int dim) {
    if (dim < 16) {
        throw InvalidArgument("truncation dimension must be >= 16");
    }
    if (!(t >= 0.0) || !(lambda >= 0.0)) {
        throw InvalidArgument("lambda and t must be >= 0");
    }
    if (2.0 * lambda * t > 2.0) {
        throw InvalidArgument("2 lambda t must not exceed 2 for the truncated evolution");
    }
}

NumberBasisState vacuum(int dim) {
    NumberBasisState psi = NumberBasisState::Zero(dim);
    psi[0] = 1.0;
    return psi;
}

}  // namespace

EvolutionResult summarize(const NumberBasisState& psi) {
    EvolutionResult r{};
    double norm = 0.0;
    double mean = 0.0;
    for (Eigen::Index n = 0; n < psi.size(); ++n) {
        const double p = std::norm(psi[n]);
        norm += p;
        mean += static_cast<double>(n) * p;
        if (n % 2 == 1) {
            r.odd_leakage = std::max(r.odd_leakage, std::abs(psi[n]));
        }
    }
    const Eigen::Index dim = psi.size();
    r.mean_photons = mean;
    r.norm_defect = 1.0 - norm;
    r.top_population = std::norm(psi[dim - 1]) + std::norm(psi[dim - 2]);
    r.truncation_flag = r.top_population > 1e-8;
    return r;
}

std::vector<EvolutionSample> evolve_series(double lambda, double t_max, int samples, int dim) {
    check_evolution_args(lambda, t_max, dim);
    if (samples < 2) {
        throw InvalidArgument("need at least two samples");
    }
    const auto intervals = static_cast<long>(samples - 1);
    long steps_per_interval = 1;
    if (lambda > 0.0 && t_max > 0.0) {
        const double dt_max = kMaxPhaseStep / (2.0 * lambda);
        steps_per_interval =
            std::max(1L, static_cast<long>(std::ceil(t_max / dt_max / static_cast<double>(intervals))));
    }
    const double dt = t_max / static_cast<double>(intervals * steps_per_interval);

    NumberBasisState psi = vacuum(dim);
    Rk4 rk(lambda, dim);
    std::vector<EvolutionSample> out;
    out.reserve(static_cast<std::size_t>(samples));
    out.push_back({0.0, summarize(psi)});
    for (long k = 1; k <= intervals; ++k) {
        if (lambda > 0.0) {
            for (long s = 0; s < steps_per_interval; ++s) {
                rk.step(psi, dt);
            }
        }
        out.push_back({t_max * static_cast<double>(k) / static_cast<double>(intervals), summarize(psi)});
    }
    return out;
}

EvolutionResult evolve_truncated(double lambda, double t, int dim) {
    return evolve_series(lambda, t, 2, dim).back().result;
}

}  // namespace dce::squeeze
