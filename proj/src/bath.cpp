#include "qle/bath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qle {

void SystemSpec::validate() const {
    if (!(mass > 0.0)) throw std::invalid_argument("system mass must be positive");
    if (!(omega0 >= 0.0) || !std::isfinite(omega0)) throw std::invalid_argument("omega0 must be >= 0");
    if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
    if (!(hbar > 0.0) || !(kB > 0.0)) throw std::invalid_argument("hbar and kB must be positive");
}

ModeSet::ModeSet(std::vector<Mode> modes) : modes_(std::move(modes)) {
    if (modes_.empty()) throw std::invalid_argument("ModeSet needs at least one mode");
    for (const Mode& m : modes_) {
        if (!(m.omega > 0.0) || !std::isfinite(m.omega)) {
            throw std::invalid_argument("mode frequencies must be positive");
        }
        if (!(m.mass > 0.0)) throw std::invalid_argument("mode masses must be positive");
        if (!std::isfinite(m.coupling)) throw std::invalid_argument("mode coupling must be finite");
        max_omega_ = std::max(max_omega_, m.omega);
    }
}

BathSpec BathSpec::strict_ohmic(double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    BathSpec b;
    b.kind_ = BathKind::StrictOhmic;
    b.gamma_ = gamma;
    return b;
}

BathSpec BathSpec::cutoff_ohmic(double ctilde, double mtilde, double cutoff, double system_mass) {
    if (!(ctilde > 0.0) || !(mtilde > 0.0) || !(cutoff > 0.0) || !(system_mass > 0.0)) {
        throw std::invalid_argument("cutoff_ohmic: parameters must be positive");
    }
    BathSpec b;
    b.kind_ = BathKind::CutoffOhmic;
    b.gamma_ = bath::gamma_from_micro(ctilde, mtilde, cutoff, system_mass);
    b.cutoff_ = cutoff;
    b.mtilde_ = mtilde;
    b.ctilde_ = ctilde;
    b.system_mass_ = system_mass;
    return b;
}

BathSpec BathSpec::cutoff_ohmic_with_gamma(double gamma, double cutoff, double system_mass,
                                           double mtilde) {
    if (!(gamma > 0.0) || !(cutoff > 0.0) || !(system_mass > 0.0) || !(mtilde > 0.0)) {
        throw std::invalid_argument("cutoff_ohmic_with_gamma: parameters must be positive");
    }
    const double ctilde =
        std::sqrt(2.0 * gamma * system_mass * mtilde * cutoff * cutoff * cutoff / (3.0 * std::numbers::pi));
    return cutoff_ohmic(ctilde, mtilde, cutoff, system_mass);
}

BathSpec BathSpec::discrete(ModeSet modes, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    BathSpec b;
    b.kind_ = BathKind::Discrete;
    b.gamma_ = gamma;
    b.modes_ = std::move(modes);
    return b;
}

namespace {
void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}
} // namespace

double BathSpec::cutoff() const {
    require(kind_ == BathKind::CutoffOhmic, "cutoff is defined for CutoffOhmic baths only");
    return cutoff_;
}
double BathSpec::mode_mass() const {
    require(kind_ == BathKind::CutoffOhmic, "mode_mass is defined for CutoffOhmic baths only");
    return mtilde_;
}
double BathSpec::mode_coupling() const {
    require(kind_ == BathKind::CutoffOhmic, "mode_coupling is defined for CutoffOhmic baths only");
    return ctilde_;
}
double BathSpec::system_mass() const {
    require(kind_ == BathKind::CutoffOhmic, "system_mass is recorded for CutoffOhmic baths only");
    return system_mass_;
}
const ModeSet& BathSpec::modes() const {
    require(kind_ == BathKind::Discrete, "modes are defined for Discrete baths only");
    return *modes_;
}
double BathSpec::sinc_prefactor() const {
    require(kind_ == BathKind::CutoffOhmic, "sinc prefactor is defined for CutoffOhmic baths only");
    return 3.0 * ctilde_ * ctilde_ / (mtilde_ * cutoff_ * cutoff_ * cutoff_);
}

namespace bath {

double ohmic_dos(double omega, double cutoff) {
    if (!(omega >= 0.0) || !(cutoff > 0.0)) throw std::domain_error("ohmic_dos: need omega >= 0, cutoff > 0");
    if (omega >= cutoff) return 0.0;
    return 3.0 * omega * omega / (cutoff * cutoff * cutoff);
}

double friction_kernel(const BathSpec& spec, double t) {
    switch (spec.kind()) {
        case BathKind::StrictOhmic:
            throw std::invalid_argument("kernel is distributional; use gamma directly");
        case BathKind::CutoffOhmic: {
            if (t < 0.0) return 0.0;
            const double omega_c = spec.cutoff();
            const double x = omega_c * t;
            // sin(Ωt)/t = Ω·sin(x)/x
            const double sinc = std::abs(x) < 1e-8 ? omega_c * (1.0 - x * x / 6.0) : std::sin(x) / t;
            return spec.sinc_prefactor() * sinc;
        }
        case BathKind::Discrete: {
            if (t < 0.0) return 0.0;
            double sum = 0.0;
            for (const Mode& m : spec.modes().modes()) sum += m.kernel_weight() * std::cos(m.omega * t);
            return sum;
        }
    }
    return 0.0;
}

double gamma_from_micro(double ctilde, double mtilde, double cutoff, double system_mass) {
    if (!(ctilde > 0.0) || !(mtilde > 0.0) || !(cutoff > 0.0) || !(system_mass > 0.0)) {
        throw std::domain_error("gamma_from_micro: all inputs must be positive");
    }
    return 3.0 * std::numbers::pi * ctilde * ctilde /
           (2.0 * system_mass * mtilde * cutoff * cutoff * cutoff);
}

double spectral_density(const BathSpec& spec, const SystemSpec& system, double omega) {
    if (!(omega >= 0.0)) throw std::domain_error("spectral_density: omega must be >= 0");
    switch (spec.kind()) {
        case BathKind::StrictOhmic:
            return system.mass * spec.gamma() * omega;
        case BathKind::CutoffOhmic: {
            if (omega == 0.0) return 0.0;
            const double ct = spec.mode_coupling();
            return 0.5 * std::numbers::pi * (ct * ct / spec.mode_mass()) *
                   ohmic_dos(omega, spec.cutoff()) / omega;
        }
        case BathKind::Discrete:
            throw std::invalid_argument("spectral density is a delta comb; not pointwise");
    }
    return 0.0;
}

ModeSet discretize_bath(const BathSpec& spec, std::size_t n) {
    if (n == 0) throw std::invalid_argument("discretize_bath: need at least one mode");
    const double omega_c = spec.cutoff();
    const double coupling = spec.mode_coupling() / std::sqrt(static_cast<double>(n));
    std::vector<Mode> modes;
    modes.reserve(n);
    for (std::size_t j = 1; j <= n; ++j) {
        const double q = (static_cast<double>(j) - 0.5) / static_cast<double>(n);
        modes.push_back(Mode{omega_c * std::cbrt(q), spec.mode_mass(), coupling});
    }
    return ModeSet(std::move(modes));
}

} // namespace bath
} // namespace qle
