// Finite oscillator bath: sampled initial conditions, noise series, memory-kernel integration

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qle/bath.hpp"
#include "qle/stats.hpp"

namespace qle::microbath {

// Displaced mode coordinates s_j = q_j(0) − c_j x(0)/(m_jω_j²) and momenta
// p_j(0), one entry per mode, plus the system position they are measured from.
struct BathInitialConditions {
    std::vector<double> displacement;
    std::vector<double> momentum;
    double x0{0.0};
};

struct TrajectoryGrid {
    double dt{0.01};
    std::size_t n_steps{1000};

    double time(std::size_t k) const noexcept { return static_cast<double>(k) * dt; }
    double duration() const noexcept { return time(n_steps); }

    // dt > 0, n_steps > 0, dt·max ω_j < 0.1.
    void validate(const ModeSet& modes) const;
};

// Independent Gaussians with ⟨s_j²⟩ = (ħ/2m_jω_j) coth(ħω_j/2k_BT) and
// ⟨p_j²⟩ = (ħm_jω_j/2) coth(ħω_j/2k_BT). Stream `index` of run `seed`.
BathInitialConditions sample_initial_conditions(const ModeSet& modes, const SystemSpec& sys, double x0,
                                                std::uint64_t seed, std::uint64_t index = 0);

// f(t) = Σ c_j [s_j cos(ω_j t) + p_j/(m_jω_j) sin(ω_j t)].
double noise_at(const ModeSet& modes, const BathInitialConditions& ics, double t);
std::vector<double> noise_trajectory(const ModeSet& modes, const BathInitialConditions& ics,
                                     const TrajectoryGrid& grid);

// g(t): the same sum over the undisplaced coordinates q_j(0) = s_j + c_j x(0)/(m_jω_j²).
std::vector<double> undisplaced_noise(const ModeSet& modes, const BathInitialConditions& ics,
                                      const TrajectoryGrid& grid);

// μ(t)·x0 with μ(t) = Σ c_j²/(m_jω_j²) cos(ω_j t).
double initial_slip(const ModeSet& modes, double x0, double t);

// Σ c_j² (ħ/2m_jω_j) coth(ħω_j/2k_BT) cos(ω_j τ): the ensemble value the
// sampled noise reproduces for ½⟨{f(t+τ), f(t)}⟩.
double noise_correlation_exact(const ModeSet& modes, const SystemSpec& sys, double tau);

// ⟨[f(t+τ), f(t)]⟩ = −iħ Σ c_j²/(m_jω_j) sin(ω_j τ). Reported, never sampled.
std::complex<double> noise_commutator(const ModeSet& modes, const SystemSpec& sys, double tau);

struct GleTrajectory {
    std::vector<double> t;
    std::vector<double> x;
    std::vector<double> v;
    std::vector<double> f;
};

// Columns t, x, v, f with a header row.
void write_trajectory_csv(std::ostream& out, const GleTrajectory& traj);

// m ẍ + ∫₀ᵗ μ(t−t′) ẋ(t′) dt′ + mω₀² x = f(t) by classical RK4. The memory
// integral is a trapezoid sum over the stored velocity history, re-evaluated at
// each stage time, with the stage velocity closing the last sub-interval.
// Kernel and noise bases are tabulated on the half-step grid at construction;
// runs are read-only afterwards.
class GleIntegrator {
public:
    GleIntegrator(const ModeSet& modes, const SystemSpec& sys, const TrajectoryGrid& grid);

    struct State {
        double x{0.0};
        double v{0.0};
    };

    // Full series for one realization; x(0) is ics.x0.
    GleTrajectory run(const BathInitialConditions& ics, double v0 = 0.0) const;

    // Final states for a batch of realizations integrated side by side.
    std::vector<State> run_final(std::span<const BathInitialConditions> batch, double v0 = 0.0) const;

    const TrajectoryGrid& grid() const noexcept { return grid_; }

private:
    using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

    std::vector<State> integrate(std::span<const BathInitialConditions> batch, double v0, GleTrajectory* record) const;

    ModeSet modes_;
    SystemSpec sys_;
    TrajectoryGrid grid_;
    std::vector<double> kernel_half_;  // μ(k dt/2), k = 0 … 2n+2
    Eigen::MatrixXd cos_basis_;        // c_j cos(ω_j t_k) on the half-step grid
    Eigen::MatrixXd sin_basis_;        // c_j/(m_jω_j) sin(ω_j t_k)
};

GleTrajectory integrate_gle(const ModeSet& modes, const BathInitialConditions& ics, const SystemSpec& sys,
                            const TrajectoryGrid& grid, double v0 = 0.0);

struct EnsembleOptions {
    std::size_t realizations{1000};
    std::uint64_t seed{1};
    double x0{0.0};
    double v0{0.0};
    std::size_t batch{128};
    unsigned threads{1};  // 0 uses every hardware thread
};

// Moments of the final state: x2, v2, potential_energy, kinetic_energy.
EnsembleResult gle_ensemble(const ModeSet& modes, const SystemSpec& sys, const TrajectoryGrid& grid,
                            const EnsembleOptions& opts);

struct NoiseStatistics {
    std::vector<double> lags;
    std::vector<Estimate> correlation;  // per lag, averaged over origins then realizations
    std::vector<double> origins;
    std::vector<Estimate> mean;         // ⟨f⟩ at each origin
};

// Empirical noise statistics from sampled baths, evaluated in closed form at
// t = origin + lag.
NoiseStatistics noise_statistics(const ModeSet& modes, const SystemSpec& sys, std::span<const double> lags,
                                 std::span<const double> origins, const EnsembleOptions& opts);

} // namespace qle::microbath
