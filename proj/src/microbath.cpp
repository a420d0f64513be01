#include "qle/microbath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "qle/thermal.hpp"

namespace qle::microbath {

namespace {

void check_ics(const ModeSet& modes, const BathInitialConditions& ics) {
    if (ics.displacement.size() != modes.size() || ics.momentum.size() != modes.size()) {
        throw std::invalid_argument("initial conditions do not match the mode set");
    }
}

// Columns of S and P (N × R) from a batch of initial conditions.
void pack(std::span<const BathInitialConditions> batch, std::size_t n_modes, Eigen::MatrixXd& s, Eigen::MatrixXd& p) {
    const auto cols = static_cast<Eigen::Index>(batch.size());
    s.resize(static_cast<Eigen::Index>(n_modes), cols);
    p.resize(static_cast<Eigen::Index>(n_modes), cols);
    for (Eigen::Index r = 0; r < cols; ++r) {
        const auto& ic = batch[static_cast<std::size_t>(r)];
        s.col(r) = Eigen::Map<const Eigen::VectorXd>(ic.displacement.data(), static_cast<Eigen::Index>(n_modes));
        p.col(r) = Eigen::Map<const Eigen::VectorXd>(ic.momentum.data(), static_cast<Eigen::Index>(n_modes));
    }
}

// Rows are times, columns are modes.
void fill_basis(const ModeSet& modes, std::span<const double> times, Eigen::MatrixXd& cos_basis,
                Eigen::MatrixXd& sin_basis) {
    const auto nt = static_cast<Eigen::Index>(times.size());
    const auto nm = static_cast<Eigen::Index>(modes.size());
    cos_basis.resize(nt, nm);
    sin_basis.resize(nt, nm);
    for (Eigen::Index j = 0; j < nm; ++j) {
        const Mode& m = modes[static_cast<std::size_t>(j)];
        const double sin_weight = m.coupling / (m.mass * m.omega);
        for (Eigen::Index k = 0; k < nt; ++k) {
            const double phase = m.omega * times[static_cast<std::size_t>(k)];
            cos_basis(k, j) = m.coupling * std::cos(phase);
            sin_basis(k, j) = sin_weight * std::sin(phase);
        }
    }
}

double bath_energy(const ModeSet& modes, const BathInitialConditions& ics) {
    double e = 0.0;
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const Mode& m = modes[j];
        const double s = ics.displacement[j];
        const double p = ics.momentum[j];
        e += 0.5 * p * p / m.mass + 0.5 * m.mass * m.omega * m.omega * s * s;
    }
    return e;
}

} // namespace

void TrajectoryGrid::validate(const ModeSet& modes) const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("TrajectoryGrid: dt must be positive");
    if (n_steps == 0) throw std::invalid_argument("TrajectoryGrid: n_steps must be positive");
    if (!(dt * modes.max_omega() < 0.1)) {
        throw std::invalid_argument("TrajectoryGrid: dt*max(omega_j) must be < 0.1");
    }
}

BathInitialConditions sample_initial_conditions(const ModeSet& modes, const SystemSpec& sys, double x0,
                                                std::uint64_t seed, std::uint64_t index) {
    sys.validate();
    if (!std::isfinite(x0)) throw std::invalid_argument("sample_initial_conditions: x0 must be finite");
    std::mt19937_64 gen = rng::stream(seed, index);
    std::normal_distribution<double> normal(0.0, 1.0);
    BathInitialConditions ics;
    ics.x0 = x0;
    ics.displacement.resize(modes.size());
    ics.momentum.resize(modes.size());
    const double kT = sys.kT();
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const Mode& m = modes[j];
        const double hw = thermal::hw_coth(sys.hbar * m.omega, kT);  // ħω coth
        ics.displacement[j] = std::sqrt(hw / (2.0 * m.mass * m.omega * m.omega)) * normal(gen);
        ics.momentum[j] = std::sqrt(0.5 * m.mass * hw) * normal(gen);
    }
    return ics;
}

double noise_at(const ModeSet& modes, const BathInitialConditions& ics, double t) {
    check_ics(modes, ics);
    double f = 0.0;
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const Mode& m = modes[j];
        f += m.coupling * (ics.displacement[j] * std::cos(m.omega * t) +
                           ics.momentum[j] / (m.mass * m.omega) * std::sin(m.omega * t));
    }
    return f;
}

std::vector<double> noise_trajectory(const ModeSet& modes, const BathInitialConditions& ics,
                                     const TrajectoryGrid& grid) {
    grid.validate(modes);
    std::vector<double> f(grid.n_steps + 1);
    for (std::size_t k = 0; k <= grid.n_steps; ++k) f[k] = noise_at(modes, ics, grid.time(k));
    return f;
}

std::vector<double> undisplaced_noise(const ModeSet& modes, const BathInitialConditions& ics,
                                      const TrajectoryGrid& grid) {
    check_ics(modes, ics);
    BathInitialConditions raw = ics;
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const Mode& m = modes[j];
        raw.displacement[j] += m.coupling * ics.x0 / (m.mass * m.omega * m.omega);
    }
    return noise_trajectory(modes, raw, grid);
}

double initial_slip(const ModeSet& modes, double x0, double t) {
    if (!(t >= 0.0)) throw std::domain_error("initial_slip: t must be >= 0");
    double mu = 0.0;
    for (const Mode& m : modes.modes()) mu += m.kernel_weight() * std::cos(m.omega * t);
    return mu * x0;
}

double noise_correlation_exact(const ModeSet& modes, const SystemSpec& sys, double tau) {
    sys.validate();
    double sum = 0.0;
    for (const Mode& m : modes.modes()) {
        const double hw = thermal::hw_coth(sys.hbar * m.omega, sys.kT());
        sum += m.coupling * m.coupling * hw / (2.0 * m.mass * m.omega * m.omega) * std::cos(m.omega * tau);
    }
    return sum;
}

std::complex<double> noise_commutator(const ModeSet& modes, const SystemSpec& sys, double tau) {
    double sum = 0.0;
    for (const Mode& m : modes.modes()) sum += m.coupling * m.coupling / (m.mass * m.omega) * std::sin(m.omega * tau);
    return {0.0, -sys.hbar * sum};
}

void write_trajectory_csv(std::ostream& out, const GleTrajectory& traj) {
    out << "t,x,v,f\n";
    out.precision(17);
    for (std::size_t k = 0; k < traj.t.size(); ++k) {
        out << traj.t[k] << ',' << traj.x[k] << ',' << traj.v[k] << ',' << traj.f[k] << '\n';
    }
}

GleIntegrator::GleIntegrator(const ModeSet& modes, const SystemSpec& sys, const TrajectoryGrid& grid)
    : modes_(modes), sys_(sys), grid_(grid) {
    sys_.validate();
    grid_.validate(modes_);
    if (!(grid_.dt * sys_.omega0 < 0.1)) throw std::invalid_argument("GleIntegrator: dt*omega0 must be < 0.1");

    const std::size_t n = grid_.n_steps;
    const double half = 0.5 * grid_.dt;
    kernel_half_.resize(2 * n + 3);
    for (std::size_t k = 0; k < kernel_half_.size(); ++k) kernel_half_[k] = initial_slip(modes_, 1.0, half * k);

    std::vector<double> times(2 * n + 1);
    for (std::size_t k = 0; k < times.size(); ++k) times[k] = half * static_cast<double>(k);
    fill_basis(modes_, times, cos_basis_, sin_basis_);
}

GleTrajectory GleIntegrator::run(const BathInitialConditions& ics, double v0) const {
    GleTrajectory rec;
    integrate(std::span<const BathInitialConditions>(&ics, 1), v0, &rec);
    return rec;
}

std::vector<GleIntegrator::State> GleIntegrator::run_final(std::span<const BathInitialConditions> batch,
                                                           double v0) const {
    return integrate(batch, v0, nullptr);
}

std::vector<GleIntegrator::State> GleIntegrator::integrate(std::span<const BathInitialConditions> batch, double v0,
                                                           GleTrajectory* record) const {
    if (batch.empty()) return {};
    for (const auto& ic : batch) check_ics(modes_, ic);
    const std::size_t n = grid_.n_steps;
    const std::size_t width = batch.size();
    const double h = grid_.dt;
    const double m = sys_.mass;
    const double w2 = sys_.omega0 * sys_.omega0;
    const std::vector<double>& mu = kernel_half_;

    Eigen::MatrixXd s;
    Eigen::MatrixXd p;
    pack(batch, modes_.size(), s, p);
    const RowMatrix force = cos_basis_ * s + sin_basis_ * p;  // (2n+1) × R, row = half-step time

    std::vector<double> x(width), v(width), limit(width);
    for (std::size_t r = 0; r < width; ++r) {
        x[r] = batch[r].x0;
        v[r] = v0;
        const double e_sys = 0.5 * m * v0 * v0 + 0.5 * m * w2 * x[r] * x[r];
        limit[r] = 10.0 * (e_sys + bath_energy(modes_, batch[r])) + std::numeric_limits<double>::min();
    }
    RowMatrix history(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(width));
    for (std::size_t r = 0; r < width; ++r) history(0, static_cast<Eigen::Index>(r)) = v[r];

    if (record) {
        record->t.assign(n + 1, 0.0);
        record->x.assign(n + 1, 0.0);
        record->v.assign(n + 1, 0.0);
        record->f.assign(n + 1, 0.0);
        record->t[0] = 0.0;
        record->x[0] = x[0];
        record->v[0] = v[0];
        record->f[0] = force(0, 0);
    }

    std::vector<double> h_now(width, 0.0), h_half(width), h_full(width), h_full_prev(width, 0.0);
    std::vector<double> v_prev(width, 0.0);
    for (std::size_t step = 0; step < n; ++step) {
        // Trapezoid sums over [0, t_n] of μ(t_n + τ − t′) v(t′) for τ = h/2 and h.
        std::fill(h_half.begin(), h_half.end(), 0.0);
        std::fill(h_full.begin(), h_full.end(), 0.0);
        if (step > 0) {
            for (std::size_t i = 0; i <= step; ++i) {
                const double weight = (i == 0 || i == step) ? 0.5 * h : h;
                const double mu_half = weight * mu[2 * (step - i) + 1];
                const double mu_full = weight * mu[2 * (step - i) + 2];
                const double* vi = history.row(static_cast<Eigen::Index>(i)).data();
                for (std::size_t r = 0; r < width; ++r) {
                    h_half[r] += mu_half * vi[r];
                    h_full[r] += mu_full * vi[r];
                }
            }
            for (std::size_t r = 0; r < width; ++r) {
                h_now[r] = h_full_prev[r] + 0.5 * h * (mu[2] * v_prev[r] + mu[0] * v[r]);
            }
        }
        const double* f0 = force.row(static_cast<Eigen::Index>(2 * step)).data();
        const double* f1 = force.row(static_cast<Eigen::Index>(2 * step + 1)).data();
        const double* f2 = force.row(static_cast<Eigen::Index>(2 * step + 2)).data();
        for (std::size_t r = 0; r < width; ++r) {
            const double xn = x[r];
            const double vn = v[r];
            auto accel = [&](double xs, double memory, double f) { return (f - memory - m * w2 * xs) / m; };
            const double a1 = accel(xn, h_now[r], f0[r]);
            const double x2 = xn + 0.5 * h * vn;
            const double v2 = vn + 0.5 * h * a1;
            const double a2 = accel(x2, h_half[r] + 0.25 * h * (mu[1] * vn + mu[0] * v2), f1[r]);
            const double x3 = xn + 0.5 * h * v2;
            const double v3 = vn + 0.5 * h * a2;
            const double a3 = accel(x3, h_half[r] + 0.25 * h * (mu[1] * vn + mu[0] * v3), f1[r]);
            const double x4 = xn + h * v3;
            const double v4 = vn + h * a3;
            const double a4 = accel(x4, h_full[r] + 0.5 * h * (mu[2] * vn + mu[0] * v4), f2[r]);
            x[r] = xn + h / 6.0 * (vn + 2.0 * v2 + 2.0 * v3 + v4);
            v[r] = vn + h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
            v_prev[r] = vn;
            const double energy = 0.5 * m * v[r] * v[r] + 0.5 * m * w2 * x[r] * x[r];
            if (!(energy <= limit[r])) {
                throw std::runtime_error("GLE integration unstable (energy blow-up); reduce dt");
            }
            history(static_cast<Eigen::Index>(step + 1), static_cast<Eigen::Index>(r)) = v[r];
        }
        std::swap(h_full_prev, h_full);
        if (record) {
            record->t[step + 1] = grid_.time(step + 1);
            record->x[step + 1] = x[0];
            record->v[step + 1] = v[0];
            record->f[step + 1] = f2[0];
        }
    }

    std::vector<State> out(width);
    for (std::size_t r = 0; r < width; ++r) out[r] = {x[r], v[r]};
    return out;
}

GleTrajectory integrate_gle(const ModeSet& modes, const BathInitialConditions& ics, const SystemSpec& sys,
                            const TrajectoryGrid& grid, double v0) {
    return GleIntegrator(modes, sys, grid).run(ics, v0);
}

namespace {

std::size_t batch_count(const EnsembleOptions& o) {
    if (o.realizations == 0) throw std::invalid_argument("EnsembleOptions: realizations must be positive");
    if (o.batch == 0) throw std::invalid_argument("EnsembleOptions: batch must be positive");
    return (o.realizations + o.batch - 1) / o.batch;
}

std::vector<BathInitialConditions> sample_batch(const ModeSet& modes, const SystemSpec& sys, const EnsembleOptions& o,
                                                std::size_t b) {
    const std::size_t lo = b * o.batch;
    const std::size_t hi = std::min(o.realizations, lo + o.batch);
    std::vector<BathInitialConditions> ics;
    ics.reserve(hi - lo);
    for (std::size_t r = lo; r < hi; ++r) ics.push_back(sample_initial_conditions(modes, sys, o.x0, o.seed, r));
    return ics;
}

} // namespace

EnsembleResult gle_ensemble(const ModeSet& modes, const SystemSpec& sys, const TrajectoryGrid& grid,
                            const EnsembleOptions& o) {
    const GleIntegrator integrator(modes, sys, grid);
    const std::size_t n_batches = batch_count(o);
    std::vector<std::vector<GleIntegrator::State>> finals(n_batches);
    detail::parallel_for(n_batches, o.threads, [&](std::size_t b) {
        const auto ics = sample_batch(modes, sys, o, b);
        finals[b] = integrator.run_final(ics, o.v0);
    });

    RunningStats x2;
    RunningStats v2;
    for (const auto& batch : finals) {
        for (const auto& s : batch) {
            x2.add(s.x * s.x);
            v2.add(s.v * s.v);
        }
    }
    const double m = sys.mass;
    auto scaled = [](Estimate e, double k) { return Estimate{e.mean * k, e.std_error * k, e.count}; };
    EnsembleResult out;
    out.moments = {{"x2", x2.estimate()},
                   {"v2", v2.estimate()},
                   {"potential_energy", scaled(x2.estimate(), m * sys.omega0 * sys.omega0)},
                   {"kinetic_energy", scaled(v2.estimate(), m)}};
    out.rng.seed = o.seed;
    out.trajectories = o.realizations;
    out.samples_per_trajectory = 1;
    out.dt = grid.dt;
    out.sample_interval = grid.duration();
    return out;
}

NoiseStatistics noise_statistics(const ModeSet& modes, const SystemSpec& sys, std::span<const double> lags,
                                 std::span<const double> origins, const EnsembleOptions& o) {
    if (lags.empty() || origins.empty()) throw std::invalid_argument("noise_statistics: need lags and origins");
    // Times laid out origin-major: [o, o + lag_0, o + lag_1, …] for each origin.
    const std::size_t stride = lags.size() + 1;
    std::vector<double> times;
    times.reserve(origins.size() * stride);
    for (double t0 : origins) {
        times.push_back(t0);
        for (double lag : lags) times.push_back(t0 + lag);
    }
    Eigen::MatrixXd cos_basis;
    Eigen::MatrixXd sin_basis;
    fill_basis(modes, times, cos_basis, sin_basis);

    struct PerRealization {
        std::vector<double> corr;
        std::vector<double> mean;
    };
    const std::size_t n_batches = batch_count(o);
    std::vector<std::vector<PerRealization>> slots(n_batches);
    detail::parallel_for(n_batches, o.threads, [&](std::size_t b) {
        const auto ics = sample_batch(modes, sys, o, b);
        Eigen::MatrixXd s;
        Eigen::MatrixXd p;
        pack(ics, modes.size(), s, p);
        const Eigen::MatrixXd f = cos_basis * s + sin_basis * p;  // times × R
        auto& out = slots[b];
        out.resize(ics.size());
        for (Eigen::Index r = 0; r < f.cols(); ++r) {
            PerRealization pr{std::vector<double>(lags.size(), 0.0), std::vector<double>(origins.size(), 0.0)};
            for (std::size_t oi = 0; oi < origins.size(); ++oi) {
                const auto base = static_cast<Eigen::Index>(oi * stride);
                const double f0 = f(base, r);
                pr.mean[oi] = f0;
                for (std::size_t l = 0; l < lags.size(); ++l) {
                    pr.corr[l] += f0 * f(base + 1 + static_cast<Eigen::Index>(l), r);
                }
            }
            for (double& c : pr.corr) c /= static_cast<double>(origins.size());
            out[static_cast<std::size_t>(r)] = std::move(pr);
        }
    });

    std::vector<RunningStats> corr(lags.size());
    std::vector<RunningStats> mean(origins.size());
    for (const auto& batch : slots) {
        for (const auto& pr : batch) {
            for (std::size_t l = 0; l < lags.size(); ++l) corr[l].add(pr.corr[l]);
            for (std::size_t oi = 0; oi < origins.size(); ++oi) mean[oi].add(pr.mean[oi]);
        }
    }
    NoiseStatistics out;
    out.lags.assign(lags.begin(), lags.end());
    out.origins.assign(origins.begin(), origins.end());
    for (const auto& c : corr) out.correlation.push_back(c.estimate());
    for (const auto& mu : mean) out.mean.push_back(mu.estimate());
    return out;
}

} // namespace qle::microbath
