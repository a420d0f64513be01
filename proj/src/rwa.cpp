#include "qle/rwa.hpp"

#include <cmath>
#include <stdexcept>

#include "qle/thermal.hpp"

namespace qle::rwa {

using linear_sde::Mat2;
using linear_sde::Vec2;

namespace {
void require_positive(std::initializer_list<double> xs, const char* what) {
    for (double x : xs) {
        if (!(x > 0.0)) throw std::invalid_argument(what);
    }
}
} // namespace

double rwa_coupling(double coupling, double mass, double mode_mass, double omega0, double mode_omega, double hbar) {
    require_positive({coupling, mass, mode_mass, omega0, mode_omega, hbar}, "rwa_coupling: inputs must be positive");
    return hbar * coupling / (2.0 * std::sqrt(mass * mode_mass * omega0 * mode_omega));
}

HamiltonianSplit rwa_hamiltonian_split(double coupling, double mass, double mode_mass, double omega0,
                                       double mode_omega) {
    require_positive({coupling, mass, mode_mass, omega0, mode_omega}, "rwa_hamiltonian_split: inputs must be positive");
    return {0.5 * coupling, coupling / (2.0 * mass * omega0 * mode_mass * mode_omega)};
}

RwaParams RwaParams::from_system(const SystemSpec& sys, double gamma) {
    sys.validate();
    if (!(sys.omega0 > 0.0)) throw std::invalid_argument("RwaParams: omega0 must be positive");
    if (!(gamma > 0.0)) throw std::invalid_argument("RwaParams: gamma must be positive");
    const double hw = thermal::hw_coth(sys.hbar * sys.omega0, sys.kT());  // ħω₀ coth
    RwaParams p;
    p.sys = sys;
    p.gamma = gamma;
    p.intensity_x = 2.0 * gamma * hw / (sys.mass * sys.omega0 * sys.omega0);
    p.intensity_p = 2.0 * sys.mass * gamma * hw;
    return p;
}

Mat2 drift_matrix(const RwaParams& p) {
    const double m = p.sys.mass;
    Mat2 a;
    a << -p.gamma, 1.0 / m, -m * p.sys.omega0 * p.sys.omega0, -p.gamma;
    return a;
}

Mat2 diffusion_matrix(const RwaParams& p) {
    Mat2 d = Mat2::Zero();
    d(0, 0) = 0.5 * p.intensity_x;
    d(1, 1) = 0.5 * p.intensity_p;
    return d;
}

RwaMoments rwa_stationary_analytic(const RwaParams& p) {
    if (!(p.gamma > 0.0)) throw std::domain_error("no stationary state without damping");
    const Mat2 s = linear_sde::stationary_covariance(drift_matrix(p), diffusion_matrix(p));
    return {s(0, 0), s(1, 1), s(0, 1)};
}

double ehrenfest_reference(const RwaParams& p, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("ehrenfest_reference: dt must be positive");
    return 0.5 * p.intensity_x / dt + p.gamma * p.gamma * rwa_stationary_analytic(p).position;
}

EnsembleResult simulate_rwa(const RwaParams& p, const markovian::SdeOptions& o) {
    p.sys.validate();
    o.validate(p.sys.omega0);
    if (!(p.gamma > 0.0)) throw std::invalid_argument("simulate_rwa: gamma must be positive");
    if (o.scheme != markovian::Scheme::Exact) {
        throw std::invalid_argument("simulate_rwa: only the exact scheme is implemented");
    }
    const double burn_in = o.burn_in > 0.0 ? o.burn_in : 10.0 / p.gamma;
    const double interval = o.sample_interval > 0.0 ? o.sample_interval : 1.0 / p.gamma;
    const Mat2 a = drift_matrix(p);
    const Mat2 d = diffusion_matrix(p);
    const linear_sde::Transition burn = linear_sde::exact_transition(a, d, burn_in);
    const linear_sde::Transition sample = linear_sde::exact_transition(a, d, interval);
    const linear_sde::Transition probe = linear_sde::exact_transition(a, d, o.dt);
    const double m = p.sys.mass;

    struct Slot {
        double x2, p2, xp, residual;
    };
    std::vector<Slot> slots(o.n_traj);
    detail::parallel_for(o.n_traj, o.threads, [&](std::size_t i) {
        std::mt19937_64 gen = rng::stream(o.seed, i);
        std::normal_distribution<double> normal(0.0, 1.0);
        auto jump = [&](const linear_sde::Transition& t, const Vec2& z) {
            const Vec2 xi(normal(gen), normal(gen));
            return Vec2(t.propagator * z + t.noise_factor * xi);
        };
        Vec2 z = jump(burn, Vec2(o.x0, o.v0 * m));
        Slot acc{0.0, 0.0, 0.0, 0.0};
        for (std::size_t s = 0; s < o.n_samples; ++s) {
            z = jump(sample, z);
            acc.x2 += z[0] * z[0];
            acc.p2 += z[1] * z[1];
            acc.xp += z[0] * z[1];
            const Vec2 next = jump(probe, z);
            const double r = (next[0] - z[0]) / o.dt - z[1] / m;
            acc.residual += r * r;
        }
        const double n = static_cast<double>(o.n_samples);
        slots[i] = {acc.x2 / n, acc.p2 / n, acc.xp / n, acc.residual / n};
    });

    RunningStats x2, p2, xp, residual;
    for (const Slot& s : slots) {
        if (!std::isfinite(s.x2) || !std::isfinite(s.p2)) throw std::runtime_error("simulate_rwa: instability");
        x2.add(s.x2);
        p2.add(s.p2);
        xp.add(s.xp);
        residual.add(s.residual);
    }
    auto scaled = [](Estimate e, double k) { return Estimate{e.mean * k, e.std_error * k, e.count}; };
    EnsembleResult out;
    out.moments = {{"x2", x2.estimate()},
                   {"p2", p2.estimate()},
                   {"xp", xp.estimate()},
                   {"potential_energy", scaled(x2.estimate(), m * p.sys.omega0 * p.sys.omega0)},
                   {"kinetic_energy", scaled(p2.estimate(), 1.0 / m)},
                   {"ehrenfest_residual", residual.estimate()}};
    out.rng.seed = o.seed;
    out.trajectories = o.n_traj;
    out.samples_per_trajectory = o.n_samples;
    out.dt = o.dt;
    out.sample_interval = interval;
    return out;
}

} // namespace qle::rwa
