// Rotating-wave Langevin pair with separate position and momentum noises

#pragma once

#include "qle/bath.hpp"
#include "qle/linear_sde.hpp"
#include "qle/markovian.hpp"
#include "qle/stats.hpp"

namespace qle::rwa {

// λ = ħc / (2√(m m_j ω₀ ω_j)).
double rwa_coupling(double coupling, double mass, double mode_mass, double omega0, double mode_omega,
                    double hbar = 1.0);

struct HamiltonianSplit {
    double position_coupling{0.0};  // on x·q_j
    double momentum_coupling{0.0};  // on p·p_j
};

// c/2 and c/(2mω₀ m_j ω_j).
HamiltonianSplit rwa_hamiltonian_split(double coupling, double mass, double mode_mass, double omega0,
                                       double mode_omega);

// ẋ = −γx + p/m + f_x,  ṗ = −γp − mω₀²x + f_p, with independent white noises
// ⟨{f_x, f_x′}⟩ = I_x δ and ⟨{f_p, f_p′}⟩ = I_p δ.
struct RwaParams {
    SystemSpec sys;
    double gamma{0.01};
    double intensity_x{0.0};  // 2γħ/(mω₀) coth(ħω₀/2k_BT)
    double intensity_p{0.0};  // 2mγħω₀ coth(ħω₀/2k_BT)

    static RwaParams from_system(const SystemSpec& sys, double gamma);

    // The pair is only meaningful for γ ≪ ω₀; flagged above 0.1ω₀.
    bool weak_coupling_ok() const noexcept { return gamma <= 0.1 * sys.omega0; }
};

linear_sde::Mat2 drift_matrix(const RwaParams& params);
linear_sde::Mat2 diffusion_matrix(const RwaParams& params);  // diag(I_x/2, I_p/2)

struct RwaMoments {
    double position{0.0};  // ⟨x²⟩
    double momentum{0.0};  // ⟨p²⟩
    double cross{0.0};     // ⟨xp + px⟩/2

    double potential_energy(const SystemSpec& s) const noexcept { return s.mass * s.omega0 * s.omega0 * position; }
    double kinetic_energy(const SystemSpec& s) const noexcept { return momentum / s.mass; }
};

RwaMoments rwa_stationary_analytic(const RwaParams& params);

// Expected ⟨(Δx/dt − p/m)²⟩ over a step dt in the stationary state: (I_x/2)/dt + γ²⟨x²⟩.
double ehrenfest_reference(const RwaParams& params, double dt);

// Moments: x2, p2, xp, potential_energy, kinetic_energy, ehrenfest_residual.
// The residual uses one extra exact step of length dt from each sample.
EnsembleResult simulate_rwa(const RwaParams& params, const markovian::SdeOptions& opts);

} // namespace qle::rwa
