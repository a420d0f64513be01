#include "qle/fdt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qle/thermal.hpp"

namespace qle::fdt {

namespace {

using response::Susceptibility;

enum class Channel { Position, Velocity };

constexpr double kMinWidth = 1e-12;

void require_oscillator(const SystemSpec& sys) {
    sys.validate();
    if (!(sys.omega0 > 0.0)) {
        throw std::invalid_argument("fdt: omega0 must be positive (a free particle has no stationary position variance)");
    }
}

void require_gamma_ratio(double gamma_ratio) {
    if (!(gamma_ratio > 0.0)) throw std::domain_error("density: Gamma must be positive");
}

// Edges around the resonance: ω₀(1 ± kΓ̂) plus a few inner ones.
std::vector<double> peak_points(double center, double width, double k) {
    std::vector<double> pts;
    for (double s : {-k, -4.0, -1.0, 0.0, 1.0, 4.0, k}) {
        const double w = center * (1.0 + s * width);
        if (w > 0.0) pts.push_back(w);
    }
    return pts;
}

void add_period_points(std::vector<double>& pts, double tau, double upto, std::size_t budget) {
    if (!(tau > 0.0)) return;
    const double period = 2.0 * std::numbers::pi / tau;
    for (std::size_t k = 1; k <= budget; ++k) {
        const double w = static_cast<double>(k) * period;
        if (w >= upto) break;
        pts.push_back(w);
    }
}

Correlation correlation(Channel channel, double tau, const Susceptibility& chi, const QuadratureConfig& cfg) {
    const SystemSpec& sys = chi.system();
    require_oscillator(sys);
    cfg.validate(sys.omega0);
    if (!std::isfinite(tau)) throw std::invalid_argument("fdt: tau must be finite");
    tau = std::abs(tau);

    const double upper = std::min(cfg.omega_max, chi.band_edge());
    if (channel == Channel::Velocity && std::isinf(upper)) {
        throw std::invalid_argument("UV-divergent; set omega_max");
    }
    const double hbar = sys.hbar;
    const double kT = sys.kT();
    const bool velocity = channel == Channel::Velocity;

    // (1/π)·[Im α/ω]·[ħω coth(ħω/2kT)]·w(ω), finite at ω = 0.
    auto envelope = [&chi, hbar, kT, velocity](double w) {
        const double weight = velocity ? w * w : 1.0;
        return chi.im_over_omega(w) * thermal::hw_coth(hbar * w, kT) * weight / std::numbers::pi;
    };
    const WeakLimit weak = weak_limit_correlation(0.0, sys);
    const double scale = velocity ? weak.velocity : weak.position;

    const double width = chi.bath().gamma() / sys.omega0;
    if (width < kMinWidth) throw std::runtime_error("fdt: resonance narrower than double precision can resolve");
    std::vector<double> interior = peak_points(sys.omega0, width, cfg.peak_window_halfwidths);
    const double peak_hi = sys.omega0 * (1.0 + cfg.peak_window_halfwidths * width);
    const double near_end = std::min(upper, std::max(2.0 * peak_hi, 4.0 * sys.omega0));
    const quad::Tolerance tol = cfg.tolerance();

    Correlation out;
    out.omega_max = upper;
    if (tau == 0.0) {
        std::vector<double> pts = quad::make_breakpoints(0.0, near_end, interior);
        if (near_end < upper) pts.push_back(upper);
        const quad::Result r = quad::integrate(envelope, pts, tol);
        out.value = r.value;
        out.error = r.error;
        return out;
    }

    add_period_points(interior, tau, near_end, cfg.max_panels / 2);
    const std::vector<double> pts = quad::make_breakpoints(0.0, near_end, interior);
    auto integrand = [&envelope, tau](double w) { return envelope(w) * std::cos(w * tau); };
    const quad::Result head = quad::integrate(integrand, pts, tol);
    out.value = head.value;
    out.error = head.error;
    if (near_end < upper) {
        quad::Tolerance tail_tol = tol;
        tail_tol.abs = std::max(cfg.abs_tol, 0.25 * cfg.rel_tol * scale);
        const quad::Result tail = quad::integrate_cosine(envelope, near_end, upper, tau, tail_tol);
        out.value += tail.value;
        out.error += tail.error;
    }
    return out;
}

} // namespace

void QuadratureConfig::validate(double omega0) const {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("QuadratureConfig: rel_tol must be positive");
    if (!(abs_tol >= 0.0)) throw std::invalid_argument("QuadratureConfig: abs_tol must be >= 0");
    if (!(peak_window_halfwidths >= 1.0)) throw std::invalid_argument("QuadratureConfig: k must be >= 1");
    if (!(omega_max > omega0)) throw std::invalid_argument("QuadratureConfig: omega_max must exceed omega0");
    if (max_panels < 16) throw std::invalid_argument("QuadratureConfig: max_panels must be >= 16");
}

double pk_density(double lambda, double gamma_ratio) {
    require_gamma_ratio(gamma_ratio);
    if (!(lambda >= 0.0)) throw std::domain_error("pk_density: Lambda must be >= 0");
    return lambda * lambda * pp_density(lambda, gamma_ratio);
}

double pp_density(double lambda, double gamma_ratio) {
    require_gamma_ratio(gamma_ratio);
    if (!(lambda >= 0.0)) throw std::domain_error("pp_density: Lambda must be >= 0");
    const double detune = 1.0 - lambda * lambda;
    const double damping = lambda * gamma_ratio;
    return 2.0 / std::numbers::pi * gamma_ratio / (detune * detune + damping * damping);
}

double pk_dimensional(double omega, const Susceptibility& chi) {
    if (!(omega >= 0.0)) throw std::domain_error("pk_dimensional: omega must be >= 0");
    return 2.0 * chi.system().mass * omega * omega * chi.im_over_omega(omega) / std::numbers::pi;
}

double pp_dimensional(double omega, const Susceptibility& chi) {
    if (!(omega >= 0.0)) throw std::domain_error("pp_dimensional: omega must be >= 0");
    const SystemSpec& sys = chi.system();
    return 2.0 * sys.mass * sys.omega0 * sys.omega0 * chi.im_over_omega(omega) / std::numbers::pi;
}

quad::Result density_moment(Density which, int order, double gamma_ratio, double lambda_max,
                            const QuadratureConfig& cfg) {
    require_gamma_ratio(gamma_ratio);
    if (order < 0) throw std::invalid_argument("density_moment: order must be >= 0");
    if (!(lambda_max > 0.0)) throw std::invalid_argument("density_moment: lambda_max must be positive");
    if (gamma_ratio < kMinWidth) throw std::runtime_error("density_moment: peak narrower than double precision can resolve");
    auto integrand = [which, order, gamma_ratio](double lambda) {
        const double p = which == Density::Kinetic ? pk_density(lambda, gamma_ratio) : pp_density(lambda, gamma_ratio);
        return std::pow(lambda, order) * p;
    };
    const std::vector<double> peaks = peak_points(1.0, gamma_ratio, cfg.peak_window_halfwidths);
    if (std::isinf(lambda_max)) {
        const double near_end = std::max(2.0, 2.0 * (1.0 + cfg.peak_window_halfwidths * gamma_ratio));
        std::vector<double> pts = quad::make_breakpoints(0.0, near_end, peaks);
        pts.push_back(lambda_max);
        return quad::integrate(integrand, pts, cfg.tolerance());
    }
    return quad::integrate(integrand, quad::make_breakpoints(0.0, lambda_max, peaks), cfg.tolerance());
}

Correlation position_correlation(double tau, const Susceptibility& chi, const QuadratureConfig& cfg) {
    return correlation(Channel::Position, tau, chi, cfg);
}

Correlation position_correlation(double tau, const SystemSpec& sys, const BathSpec& bath,
                                 const QuadratureConfig& cfg) {
    return correlation(Channel::Position, tau, Susceptibility(sys, bath), cfg);
}

Correlation velocity_correlation(double tau, const Susceptibility& chi, const QuadratureConfig& cfg) {
    return correlation(Channel::Velocity, tau, chi, cfg);
}

Correlation velocity_correlation(double tau, const SystemSpec& sys, const BathSpec& bath,
                                 const QuadratureConfig& cfg) {
    return correlation(Channel::Velocity, tau, Susceptibility(sys, bath), cfg);
}

Correlation noise_correlation(double tau, const SystemSpec& sys, const BathSpec& bath, const QuadratureConfig& cfg) {
    sys.validate();
    if (!std::isfinite(tau)) throw std::invalid_argument("noise_correlation: tau must be finite");
    if (!(cfg.rel_tol > 0.0)) throw std::invalid_argument("QuadratureConfig: rel_tol must be positive");
    tau = std::abs(tau);
    double upper = cfg.omega_max;
    switch (bath.kind()) {
        case BathKind::StrictOhmic:
            if (std::isinf(upper)) throw std::invalid_argument("UV-divergent; set omega_max");
            break;
        case BathKind::CutoffOhmic:
            upper = std::min(upper, bath.cutoff());
            break;
        case BathKind::Discrete:
            throw std::invalid_argument("noise_correlation: discrete baths have a closed-form sum");
    }
    // J(ω)/ω = mγ on the band for both continuum models.
    const double friction = sys.mass * bath.gamma();
    const double hbar = sys.hbar;
    const double kT = sys.kT();
    auto integrand = [=](double w) {
        return friction * thermal::hw_coth(hbar * w, kT) * std::cos(w * tau) / std::numbers::pi;
    };
    std::vector<double> interior;
    add_period_points(interior, tau, upper, cfg.max_panels / 2);
    const quad::Result r = quad::integrate(integrand, quad::make_breakpoints(0.0, upper, interior), cfg.tolerance());
    return Correlation{r.value, r.error, upper};
}

WeakLimit weak_limit_correlation(double tau, const SystemSpec& sys) {
    require_oscillator(sys);
    const double energy_scale = thermal::hw_coth(sys.hbar * sys.omega0, sys.kT());  // ħω₀ coth
    const double phase = std::cos(sys.omega0 * tau);
    return WeakLimit{energy_scale / (2.0 * sys.mass * sys.omega0 * sys.omega0) * phase,
                     energy_scale / (2.0 * sys.mass) * phase};
}

EnergySplit mean_energies(const Susceptibility& chi, const QuadratureConfig& cfg) {
    const SystemSpec& sys = chi.system();
    const Correlation cx = position_correlation(0.0, chi, cfg);
    const Correlation cv = velocity_correlation(0.0, chi, cfg);
    const double stiffness = sys.mass * sys.omega0 * sys.omega0;
    EnergySplit out;
    out.kinetic = sys.mass * cv.value;
    out.kinetic_error = sys.mass * cv.error;
    out.potential = stiffness * cx.value;
    out.potential_error = stiffness * cx.error;
    out.omega_max = cv.omega_max;
    return out;
}

EnergySplit mean_energies(const SystemSpec& sys, const BathSpec& bath, const QuadratureConfig& cfg) {
    return mean_energies(Susceptibility(sys, bath), cfg);
}

double extrapolate_to_zero(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.empty()) throw std::invalid_argument("extrapolate_to_zero: need matching, non-empty samples");
    std::vector<double> p(y.begin(), y.end());
    const std::size_t n = x.size();
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = 0; i + level < n; ++i) {
            const double xi = x[i];
            const double xj = x[i + level];
            if (xi == xj) throw std::invalid_argument("extrapolate_to_zero: abscissae must be distinct");
            p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
        }
    }
    return p[0];
}

EnergySplit weak_coupling_energies(const SystemSpec& sys, std::span<const double> gammas, const QuadratureConfig& cfg) {
    std::vector<double> kinetic;
    std::vector<double> potential;
    EnergySplit out;
    for (double g : gammas) {
        const EnergySplit e = mean_energies(sys, BathSpec::strict_ohmic(g), cfg);
        kinetic.push_back(e.kinetic);
        potential.push_back(e.potential);
        out.kinetic_error = std::max(out.kinetic_error, e.kinetic_error);
        out.potential_error = std::max(out.potential_error, e.potential_error);
        out.omega_max = e.omega_max;
    }
    out.kinetic = extrapolate_to_zero(gammas, kinetic);
    out.potential = extrapolate_to_zero(gammas, potential);
    return out;
}

} // namespace qle::fdt
