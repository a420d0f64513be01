// Weak-coupling Markovian Langevin dynamics of the oscillator

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qle/bath.hpp"
#include "qle/linear_sde.hpp"
#include "qle/stats.hpp"

namespace qle::markovian {

// ⟨{f(t), f(t′)}⟩ = noise_intensity·δ(t − t′). Simulators drive the velocity
// with the symmetrized correlation, half of this.
struct MarkovParams {
    SystemSpec sys;
    double gamma{0.1};
    double noise_intensity{0.0};
    bool underdamped{true};

    // noise_intensity = 2mγħω₀ coth(ħω₀/2k_BT); 4mγk_BT at ω₀ = 0.
    static MarkovParams from_system(const SystemSpec& sys, double gamma);

    double symmetric_intensity() const noexcept { return 0.5 * noise_intensity; }
};

double noise_intensity(const SystemSpec& sys, double gamma);

struct CharRoots {
    std::complex<double> plus;
    std::complex<double> minus;
};

// Roots of s² + γs + ω₀² = 0; a conjugate pair when γ < 2ω₀.
CharRoots char_roots(double gamma, double omega0);

// [e^{ω₊t} − e^{ω₋t}]/(ω₊ − ω₋): position response to a unit velocity kick at t = 0.
double greens_solution_kernel(const CharRoots& roots, double t);

struct StationaryMoments {
    double position{0.0};  // ⟨x²⟩
    double velocity{0.0};  // ⟨ẋ²⟩
};

// Closed-form stationary moments for white noise of symmetrized strength
// noise_intensity/2. Position is +∞ for a free particle.
StationaryMoments stationary_moments_analytic(const MarkovParams& params);

// The same moments from the 2×2 Lyapunov equation of the drift.
StationaryMoments stationary_moments_lyapunov(const MarkovParams& params);

// Drift and diffusion of Z = (x, ẋ).
linear_sde::Mat2 drift_matrix(const MarkovParams& params);
linear_sde::Mat2 diffusion_matrix(const MarkovParams& params);

enum class Scheme { Exact, EulerMaruyama };

struct SdeOptions {
    double dt{0.01};
    std::size_t n_samples{1000};  // recorded samples per trajectory, after burn-in
    std::size_t n_traj{1000};
    std::uint64_t seed{1};
    Scheme scheme{Scheme::Exact};
    double burn_in{0.0};          // 0 selects 10/γ
    double sample_interval{0.0};  // 0 selects 1/γ
    double x0{0.0};
    double v0{0.0};
    unsigned threads{1};          // 0 uses every hardware thread

    void validate(double omega0) const;
};

// Stationary ensemble. The exact scheme jumps between sample times with the
// exact Gaussian transition; Euler–Maruyama steps at dt throughout, velocity
// first and position from the updated velocity.
// Moments: x2, v2, potential_energy, kinetic_energy.
EnsembleResult simulate_sde(const MarkovParams& params, const SdeOptions& opts);

// One semi-implicit Euler–Maruyama path from rest. kicks[n] is the noise velocity
// increment applied on step n → n+1.
struct PathRecord {
    double dt{0.0};
    std::vector<double> x;
    std::vector<double> v;
    std::vector<double> kicks;
};

PathRecord record_path(const MarkovParams& params, double dt, std::size_t n_steps, std::uint64_t seed);

} // namespace qle::markovian
