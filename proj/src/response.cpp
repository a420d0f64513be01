#include "qle/response.hpp"

#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_expint.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qle::response {

namespace {

constexpr int kNodes = 10;

struct UnitRule {
    std::array<double, kNodes> x{};
    std::array<double, kNodes> w{};
};

// 10-point Gauss–Legendre rule mapped to [0, 1].
const UnitRule& unit_rule() {
    static const UnitRule rule = [] {
        UnitRule r;
        gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(kNodes);
        for (int i = 0; i < kNodes; ++i) {
            gsl_integration_glfixed_point(0.0, 1.0, static_cast<std::size_t>(i), &r.x[i], &r.w[i], t);
        }
        gsl_integration_glfixed_table_free(t);
        return r;
    }();
    return rule;
}

// ∫_T^∞ sin(kt)/t dt and ∫_T^∞ cos(kt)/t dt for k ≠ 0.
double sine_tail(double k, double t_max) {
    const double arg = std::abs(k) * t_max;
    const double v = 0.5 * std::numbers::pi - gsl_sf_Si(arg);
    return k < 0.0 ? -v : v;
}
double cosine_tail(double k, double t_max) { return -gsl_sf_Ci(std::abs(k) * t_max); }

// ∫₀^∞ sin(Ωt)/t · e^{iωt} dt for ω ≥ 0: panels over [0, T_max] plus the exact tail.
complex sinc_transform(double cutoff, double omega, double time_product) {
    const UnitRule& rule = unit_rule();
    const double panel = std::numbers::pi / (cutoff + omega);
    const auto n_panels = static_cast<std::size_t>(std::ceil(time_product / (cutoff * panel)));
    const double t_max = static_cast<double>(n_panels) * panel;

    std::array<complex, kNodes> node_c{};  // e^{iΩ L u_i}
    std::array<complex, kNodes> node_w{};  // e^{iω L u_i}
    for (int i = 0; i < kNodes; ++i) {
        node_c[i] = std::polar(1.0, cutoff * panel * rule.x[i]);
        node_w[i] = std::polar(1.0, omega * panel * rule.x[i]);
    }
    const complex step_c = std::polar(1.0, cutoff * panel);
    const complex step_w = std::polar(1.0, omega * panel);

    complex sum{0.0, 0.0};
    complex phase_c{1.0, 0.0};
    complex phase_w{1.0, 0.0};
    constexpr std::size_t kReanchor = 256;
    for (std::size_t p = 0; p < n_panels; ++p) {
        if (p % kReanchor == 0) {
            const double t0 = static_cast<double>(p) * panel;
            phase_c = std::polar(1.0, cutoff * t0);
            phase_w = std::polar(1.0, omega * t0);
        }
        const double t0 = static_cast<double>(p) * panel;
        complex local{0.0, 0.0};
        for (int i = 0; i < kNodes; ++i) {
            const double t = t0 + panel * rule.x[i];
            const double s = (phase_c * node_c[i]).imag();
            local += (rule.w[i] * s / t) * (phase_w * node_w[i]);
        }
        sum += local;
        phase_c *= step_c;
        phase_w *= step_w;
    }
    sum *= panel;

    // sin(Ωt)e^{iωt} = ½[sin(at) + sin(bt)] + (i/2)[cos(bt) − cos(at)], a = Ω+ω, b = Ω−ω.
    const double a = cutoff + omega;
    const double b = cutoff - omega;
    double tail_re = 0.5 * sine_tail(a, t_max);
    double tail_im = -0.5 * cosine_tail(a, t_max);
    if (b != 0.0) {
        tail_re += 0.5 * sine_tail(b, t_max);
        tail_im += 0.5 * cosine_tail(b, t_max);
    }
    return sum + complex{tail_re, tail_im};
}

} // namespace

complex mu_fourier(const BathSpec& bath, const SystemSpec& sys, double omega, const TransformOptions& opts) {
    if (!std::isfinite(omega)) throw std::domain_error("mu_fourier: omega must be finite");
    switch (bath.kind()) {
        case BathKind::StrictOhmic:
            return {sys.mass * bath.gamma(), 0.0};
        case BathKind::CutoffOhmic: {
            if (!(opts.cutoff_time_product >= 1e3)) {
                throw std::invalid_argument("mu_fourier: cutoff_time_product must be >= 1e3");
            }
            complex v =
                bath.sinc_prefactor() * sinc_transform(bath.cutoff(), std::abs(omega), opts.cutoff_time_product);
            // The dissipative part is a spectral density; rounding above the band edge can dip below zero.
            v.real(std::max(v.real(), 0.0));
            return omega < 0.0 ? std::conj(v) : v;
        }
        case BathKind::Discrete:
            throw std::invalid_argument("mu_fourier: discrete baths are unsupported pointwise");
    }
    return {};
}

complex susceptibility(const SystemSpec& sys, const BathSpec& bath, double omega, const TransformOptions& opts) {
    const complex mu = mu_fourier(bath, sys, omega, opts);
    return 1.0 / (complex{sys.mass * (sys.omega0 * sys.omega0 - omega * omega), 0.0} - complex{0.0, omega} * mu);
}

complex susceptibility_strict(const SystemSpec& sys, double gamma, double omega) {
    if (!(gamma >= 0.0)) throw std::invalid_argument("susceptibility_strict: gamma must be >= 0");
    const double re = sys.mass * (sys.omega0 * sys.omega0 - omega * omega);
    const double im = -sys.mass * omega * gamma;
    if (re == 0.0 && im == 0.0) throw std::domain_error("undamped resonance");
    return 1.0 / complex{re, im};
}

Susceptibility::Susceptibility(SystemSpec sys, BathSpec bath, TransformOptions opts)
    : sys_(sys), bath_(std::move(bath)), opts_(opts), band_edge_(std::numeric_limits<double>::infinity()) {
    sys_.validate();
    if (bath_.kind() == BathKind::Discrete) {
        throw std::invalid_argument("Susceptibility: discrete baths are unsupported pointwise");
    }
    if (bath_.kind() != BathKind::CutoffOhmic) return;

    const double cutoff = bath_.cutoff();
    band_edge_ = cutoff;
    if (!(opts_.coarse_step_fraction > 0.0 && opts_.coarse_step_fraction < 1.0)) {
        throw std::invalid_argument("Susceptibility: coarse_step_fraction must lie in (0, 1)");
    }
    const double coarse = cutoff * opts_.coarse_step_fraction;
    std::vector<double> nodes;
    for (double w = 0.0; w < cutoff - 0.5 * coarse; w += coarse) nodes.push_back(w);

    const double gamma = bath_.gamma();
    const double fine = std::min(coarse, gamma / 10.0);
    const double lo = std::max(0.0, sys_.omega0 - opts_.peak_window_halfwidths * gamma);
    const double hi = std::min(cutoff - coarse, sys_.omega0 + opts_.peak_window_halfwidths * gamma);
    if (fine < coarse) {
        for (double w = lo; w <= hi; w += fine) nodes.push_back(w);
    }
    // Geometric approach to the log singularity of Im μ̃ at the band edge.
    log_zone_ = 0.75 * cutoff;
    for (int k = 0; k <= 184; ++k) nodes.push_back(cutoff - 0.25 * cutoff * std::exp2(-0.25 * k));

    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    grid_ = std::move(nodes);
    mu_grid_.reserve(grid_.size());
    for (double w : grid_) mu_grid_.push_back(mu_fourier(bath_, sys_, w, opts_));
}

complex Susceptibility::mu(double omega) const {
    if (grid_.empty()) return mu_fourier(bath_, sys_, omega, opts_);
    const double w = std::abs(omega);
    if (w > grid_.back()) return mu_fourier(bath_, sys_, omega, opts_);
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), w);
    complex v;
    if (it == grid_.end()) {
        v = mu_grid_.back();
    } else {
        const std::size_t j = static_cast<std::size_t>(it - grid_.begin());
        const double x0 = grid_[j - 1];
        const double x1 = grid_[j];
        // Im μ̃ is logarithmic in the distance to the edge, so interpolate in that variable there.
        const double frac = x0 >= log_zone_ ? std::log((band_edge_ - w) / (band_edge_ - x0)) /
                                                  std::log((band_edge_ - x1) / (band_edge_ - x0))
                                            : (w - x0) / (x1 - x0);
        v = mu_grid_[j - 1] + frac * (mu_grid_[j] - mu_grid_[j - 1]);
    }
    return omega < 0.0 ? std::conj(v) : v;
}

complex Susceptibility::denominator(double omega, complex mu_value) const {
    return complex{sys_.mass * (sys_.omega0 * sys_.omega0 - omega * omega), 0.0} - complex{0.0, omega} * mu_value;
}

complex Susceptibility::operator()(double omega) const { return 1.0 / denominator(omega, mu(omega)); }

double Susceptibility::im_over_omega(double omega) const {
    const complex m = mu(omega);
    return m.real() / std::norm(denominator(omega, m));
}

} // namespace qle::response
