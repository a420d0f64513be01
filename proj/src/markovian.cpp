#include "qle/markovian.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qle/thermal.hpp"

namespace qle::markovian {

using linear_sde::Mat2;
using linear_sde::Vec2;

double noise_intensity(const SystemSpec& sys, double gamma) {
    sys.validate();
    if (!(gamma >= 0.0)) throw std::invalid_argument("noise_intensity: gamma must be >= 0");
    return 2.0 * sys.mass * gamma * thermal::hw_coth(sys.hbar * sys.omega0, sys.kT());
}

MarkovParams MarkovParams::from_system(const SystemSpec& sys, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("MarkovParams: gamma must be positive");
    return MarkovParams{sys, gamma, markovian::noise_intensity(sys, gamma), gamma < 2.0 * sys.omega0};
}

CharRoots char_roots(double gamma, double omega0) {
    const double disc = gamma * gamma - 4.0 * omega0 * omega0;
    if (disc < 0.0) {
        const double damped = 0.5 * std::sqrt(-disc);
        return {{-0.5 * gamma, damped}, {-0.5 * gamma, -damped}};
    }
    const double minus = -0.5 * (gamma + std::sqrt(disc));
    const double plus = minus != 0.0 ? omega0 * omega0 / minus : 0.0;
    return {{plus, 0.0}, {minus, 0.0}};
}

double greens_solution_kernel(const CharRoots& roots, double t) {
    if (!(t >= 0.0)) throw std::domain_error("greens_solution_kernel: t must be >= 0");
    if (roots.plus.imag() != 0.0) {
        const double decay = roots.plus.real();
        const double damped = std::abs(roots.plus.imag());
        return std::exp(decay * t) * std::sin(damped * t) / damped;
    }
    const double a = roots.plus.real();
    const double b = roots.minus.real();
    if (a == b) return t * std::exp(a * t);
    return std::exp(b * t) * std::expm1((a - b) * t) / (a - b);
}

StationaryMoments stationary_moments_analytic(const MarkovParams& p) {
    if (!(p.gamma > 0.0)) throw std::domain_error("no stationary state without damping");
    const double m = p.sys.mass;
    const double w2 = p.sys.omega0 * p.sys.omega0;
    const double s = p.symmetric_intensity();
    StationaryMoments out;
    out.velocity = s / (2.0 * p.gamma * m * m);
    out.position = w2 > 0.0 ? s / (2.0 * p.gamma * w2 * m * m) : std::numeric_limits<double>::infinity();
    return out;
}

Mat2 drift_matrix(const MarkovParams& p) {
    Mat2 a;
    a << 0.0, 1.0, -p.sys.omega0 * p.sys.omega0, -p.gamma;
    return a;
}

Mat2 diffusion_matrix(const MarkovParams& p) {
    Mat2 d = Mat2::Zero();
    d(1, 1) = p.symmetric_intensity() / (p.sys.mass * p.sys.mass);
    return d;
}

StationaryMoments stationary_moments_lyapunov(const MarkovParams& p) {
    const Mat2 s = linear_sde::stationary_covariance(drift_matrix(p), diffusion_matrix(p));
    return {s(0, 0), s(1, 1)};
}

void SdeOptions::validate(double omega0) const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("SdeOptions: dt must be positive");
    if (n_traj == 0) throw std::invalid_argument("SdeOptions: n_traj must be positive");
    if (n_samples == 0) throw std::invalid_argument("SdeOptions: n_samples must be positive");
    if (dt * omega0 > 0.01) throw std::invalid_argument("SdeOptions: need dt*omega0 <= 0.01");
    if (burn_in < 0.0 || sample_interval < 0.0) throw std::invalid_argument("SdeOptions: negative times");
}

namespace {

struct Schedule {
    double burn_in;
    double interval;
};

Schedule schedule(const SdeOptions& o, double gamma) {
    return {o.burn_in > 0.0 ? o.burn_in : 10.0 / gamma, o.sample_interval > 0.0 ? o.sample_interval : 1.0 / gamma};
}

std::size_t steps_for(double span, double dt) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(span / dt)));
}

struct PerTrajectory {
    double x2{0.0};
    double v2{0.0};
};

} // namespace

EnsembleResult simulate_sde(const MarkovParams& p, const SdeOptions& o) {
    p.sys.validate();
    o.validate(p.sys.omega0);
    if (!(p.gamma > 0.0)) throw std::invalid_argument("simulate_sde: gamma must be positive");
    if (!(p.noise_intensity >= 0.0)) throw std::invalid_argument("simulate_sde: noise intensity must be >= 0");

    const Schedule sch = schedule(o, p.gamma);
    const Mat2 a = drift_matrix(p);
    const Mat2 d = diffusion_matrix(p);
    const double kick_sd = std::sqrt(d(1, 1) * o.dt);
    const std::size_t burn_steps = steps_for(sch.burn_in, o.dt);
    const std::size_t sample_steps = steps_for(sch.interval, o.dt);

    linear_sde::Transition burn{};
    linear_sde::Transition sample{};
    if (o.scheme == Scheme::Exact) {
        burn = linear_sde::exact_transition(a, d, sch.burn_in);
        sample = linear_sde::exact_transition(a, d, sch.interval);
    }

    std::vector<PerTrajectory> slots(o.n_traj);
    detail::parallel_for(o.n_traj, o.threads, [&](std::size_t i) {
        std::mt19937_64 gen = rng::stream(o.seed, i);
        std::normal_distribution<double> normal(0.0, 1.0);
        Vec2 z(o.x0, o.v0);

        auto euler = [&](std::size_t n) {
            for (std::size_t k = 0; k < n; ++k) {
                z[1] += (a(1, 0) * z[0] + a(1, 1) * z[1]) * o.dt + kick_sd * normal(gen);
                z[0] += z[1] * o.dt;
            }
        };
        auto jump = [&](const linear_sde::Transition& t) {
            const Vec2 xi(normal(gen), normal(gen));
            z = t.propagator * z + t.noise_factor * xi;
        };

        if (o.scheme == Scheme::Exact) jump(burn);
        else euler(burn_steps);

        double sx = 0.0;
        double sv = 0.0;
        for (std::size_t s = 0; s < o.n_samples; ++s) {
            if (o.scheme == Scheme::Exact) jump(sample);
            else euler(sample_steps);
            sx += z[0] * z[0];
            sv += z[1] * z[1];
        }
        const double n = static_cast<double>(o.n_samples);
        slots[i] = {sx / n, sv / n};
    });

    RunningStats x2;
    RunningStats v2;
    for (const PerTrajectory& s : slots) {
        if (!std::isfinite(s.x2) || !std::isfinite(s.v2)) {
            throw std::runtime_error("simulate_sde: instability (non-finite state); reduce dt");
        }
        x2.add(s.x2);
        v2.add(s.v2);
    }
    const double m = p.sys.mass;
    const double stiffness = m * p.sys.omega0 * p.sys.omega0;
    auto scaled = [](Estimate e, double k) { return Estimate{e.mean * k, e.std_error * k, e.count}; };

    EnsembleResult out;
    out.moments = {{"x2", x2.estimate()},
                   {"v2", v2.estimate()},
                   {"potential_energy", scaled(x2.estimate(), stiffness)},
                   {"kinetic_energy", scaled(v2.estimate(), m)}};
    out.rng.seed = o.seed;
    out.trajectories = o.n_traj;
    out.samples_per_trajectory = o.n_samples;
    out.dt = o.dt;
    out.sample_interval = sch.interval;
    return out;
}

PathRecord record_path(const MarkovParams& p, double dt, std::size_t n_steps, std::uint64_t seed) {
    p.sys.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("record_path: dt must be positive");
    std::mt19937_64 gen = rng::stream(seed, 0);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double kick_sd = std::sqrt(p.symmetric_intensity() * dt) / p.sys.mass;
    const double w2 = p.sys.omega0 * p.sys.omega0;

    PathRecord rec;
    rec.dt = dt;
    rec.x.assign(n_steps + 1, 0.0);
    rec.v.assign(n_steps + 1, 0.0);
    rec.kicks.assign(n_steps, 0.0);
    for (std::size_t n = 0; n < n_steps; ++n) {
        const double kick = kick_sd * normal(gen);
        rec.kicks[n] = kick;
        rec.v[n + 1] = rec.v[n] - (p.gamma * rec.v[n] + w2 * rec.x[n]) * dt + kick;
        rec.x[n + 1] = rec.x[n] + rec.v[n + 1] * dt;
    }
    return rec;
}

} // namespace qle::markovian
