// Fourier-domain friction μ̃(ω) and the susceptibility α(ω)

#pragma once

#include <complex>
#include <vector>

#include "qle/bath.hpp"

namespace qle::response {

using complex = std::complex<double>;

struct TransformOptions {
    // Ω·T_max for the truncated half-range transform of the sinc kernel.
    double cutoff_time_product{1e4};
    // Coarse cache spacing as a fraction of Ω; the window around ω₀ uses γ/10.
    double coarse_step_fraction{1.0 / 256.0};
    double peak_window_halfwidths{20.0};
};

// μ̃(ω) = ∫₀^∞ μ(t) e^{iωt} dt.
// StrictOhmic: mγ. CutoffOhmic: oscillatory Gauss–Legendre quadrature over
// [0, T_max] with the leading asymptotic tail added. Discrete: unsupported.
complex mu_fourier(const BathSpec& bath, const SystemSpec& sys, double omega,
                   const TransformOptions& opts = {});

// α(ω) = 1 / (m(ω₀² − ω²) − iωμ̃(ω)), evaluated without caching.
complex susceptibility(const SystemSpec& sys, const BathSpec& bath, double omega,
                       const TransformOptions& opts = {});

// Strict-Ohmic α with γ ≥ 0 allowed; γ = 0 at ω = ±ω₀ throws "undamped resonance".
complex susceptibility_strict(const SystemSpec& sys, double gamma, double omega);

// Susceptibility bound to one system and bath. For a cutoff bath μ̃ is
// tabulated once on [0, Ω) and linearly interpolated; the object is
// read-only afterwards and can be shared between threads.
class Susceptibility {
public:
    Susceptibility(SystemSpec sys, BathSpec bath, TransformOptions opts = {});

    const SystemSpec& system() const noexcept { return sys_; }
    const BathSpec& bath() const noexcept { return bath_; }

    complex mu(double omega) const;
    complex operator()(double omega) const;

    // Im α(ω)/ω, finite at ω = 0 (equals Re μ̃/|denominator|²).
    double im_over_omega(double omega) const;

    // Upper edge of the dissipative band: Ω for a cutoff bath, +∞ otherwise.
    double band_edge() const noexcept { return band_edge_; }

    std::size_t cache_size() const noexcept { return grid_.size(); }

private:
    complex denominator(double omega, complex mu_value) const;

    SystemSpec sys_;
    BathSpec bath_;
    TransformOptions opts_;
    double band_edge_;
    double log_zone_{0.0};  // above this, nodes are geometric in the distance to the band edge
    std::vector<double> grid_;
    std::vector<complex> mu_grid_;
};

} // namespace qle::response
