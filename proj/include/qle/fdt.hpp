// Equilibrium correlations from the fluctuation-dissipation theorem

#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "qle/bath.hpp"
#include "qle/quadrature.hpp"
#include "qle/response.hpp"

namespace qle::fdt {

struct QuadratureConfig {
    double rel_tol{1e-8};
    double abs_tol{1e-12};
    double peak_window_halfwidths{20.0};  // k, in units of γ around ω₀
    double omega_max{std::numeric_limits<double>::infinity()};
    std::size_t max_panels{20000};

    // rel_tol > 0, k ≥ 1, omega_max > ω₀.
    void validate(double omega0) const;
    quad::Tolerance tolerance() const { return {rel_tol, abs_tol, max_panels}; }
};

// Dimensionless densities in Λ = ω/ω₀ with Γ = γ/ω₀. Both integrate to one on [0, ∞).
double pk_density(double lambda, double gamma_ratio);
double pp_density(double lambda, double gamma_ratio);

// The same densities in ω [time]: P_k = (2mω/π) Im α, P_p = (2mω₀²/πω) Im α.
double pk_dimensional(double omega, const response::Susceptibility& chi);
double pp_dimensional(double omega, const response::Susceptibility& chi);

enum class Density { Kinetic, Potential };

// ∫₀^{Λ_max} Λ^order 𝒫(Λ) dΛ. Λ_max may be +∞ where the moment converges.
quad::Result density_moment(Density which, int order, double gamma_ratio,
                            double lambda_max = std::numeric_limits<double>::infinity(),
                            const QuadratureConfig& cfg = {});

struct Correlation {
    double value{0.0};
    double error{0.0};
    double omega_max{0.0};  // upper frequency actually integrated to
};

// C_x(τ) = (ħ/π) ∫ Im α(ω) coth(ħω/2k_BT) cos(ωτ) dω over the band.
Correlation position_correlation(double tau, const response::Susceptibility& chi, const QuadratureConfig& cfg = {});
Correlation position_correlation(double tau, const SystemSpec& sys, const BathSpec& bath,
                                 const QuadratureConfig& cfg = {});

// C_ẋ(τ), the same integral weighted by ω². A strict-Ohmic bath needs a finite omega_max.
Correlation velocity_correlation(double tau, const response::Susceptibility& chi, const QuadratureConfig& cfg = {});
Correlation velocity_correlation(double tau, const SystemSpec& sys, const BathSpec& bath,
                                 const QuadratureConfig& cfg = {});

// Symmetrized noise correlation ½⟨{f(t+τ), f(t)}⟩ = (ħ/π) ∫ J(ω) coth(ħω/2k_BT) cos(ωτ) dω.
Correlation noise_correlation(double tau, const SystemSpec& sys, const BathSpec& bath,
                              const QuadratureConfig& cfg = {});

struct WeakLimit {
    double position{0.0};
    double velocity{0.0};
};

// γ → 0⁺ closed forms: (ħ/2mω₀) coth cos(ω₀τ) and (ħω₀/2m) coth cos(ω₀τ).
WeakLimit weak_limit_correlation(double tau, const SystemSpec& sys);

struct EnergySplit {
    double kinetic{0.0};    // m C_ẋ(0)
    double potential{0.0};  // mω₀² C_x(0)
    double kinetic_error{0.0};
    double potential_error{0.0};
    double omega_max{0.0};
};

EnergySplit mean_energies(const SystemSpec& sys, const BathSpec& bath, const QuadratureConfig& cfg = {});
EnergySplit mean_energies(const response::Susceptibility& chi, const QuadratureConfig& cfg = {});

// Value at x = 0 of the interpolating polynomial through (x_i, y_i) (Neville).
double extrapolate_to_zero(std::span<const double> x, std::span<const double> y);

// Strict-Ohmic energies at each γ in `gammas`, extrapolated to γ → 0.
EnergySplit weak_coupling_energies(const SystemSpec& sys, std::span<const double> gammas,
                                   const QuadratureConfig& cfg = {});

} // namespace qle::fdt
