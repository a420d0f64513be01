// Oscillator-bath models: density of states, friction kernel, spectral density

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace qle {

// The damped system: a particle of mass m in a harmonic well of frequency ω₀
// at temperature T. omega0 = 0 is the free particle. Units default to
// ħ = k_B = m = ω₀ = 1.
struct SystemSpec {
    double mass{1.0};
    double omega0{1.0};
    double temperature{1.0};
    double hbar{1.0};
    double kB{1.0};

    double kT() const noexcept { return kB * temperature; }
    double beta() const noexcept { return 1.0 / kT(); }

    // Throws std::invalid_argument when m ≤ 0, ω₀ < 0, T ≤ 0 or a unit constant ≤ 0.
    void validate() const;
};

struct Mode {
    double omega{1.0};
    double mass{1.0};
    double coupling{0.0};

    // c²/(m ω²): this mode's weight in the friction kernel.
    double kernel_weight() const noexcept { return coupling * coupling / (mass * omega * omega); }
};

// A finite set of bath oscillators. All frequencies and masses are positive.
class ModeSet {
public:
    explicit ModeSet(std::vector<Mode> modes);

    std::span<const Mode> modes() const noexcept { return modes_; }
    std::size_t size() const noexcept { return modes_.size(); }
    const Mode& operator[](std::size_t j) const { return modes_[j]; }
    double max_omega() const noexcept { return max_omega_; }

private:
    std::vector<Mode> modes_;
    double max_omega_{0.0};
};

enum class BathKind { StrictOhmic, CutoffOhmic, Discrete };

// Immutable bath description. Build through the named constructors; each one
// enforces the invariants of its kind.
class BathSpec {
public:
    static BathSpec strict_ohmic(double gamma);

    // Ohmic density of states 3ω²/Ω³ below the cutoff, N modes of mass m̃ with
    // couplings c̃/√N. γ follows from the microscopic parameters and the mass
    // of the system the bath damps.
    static BathSpec cutoff_ohmic(double ctilde, double mtilde, double cutoff, double system_mass);

    // Same model, parameterized by the damping rate it should produce.
    static BathSpec cutoff_ohmic_with_gamma(double gamma, double cutoff, double system_mass,
                                            double mtilde = 1.0);

    // Explicit mode list; gamma is the nominal damping it stands in for.
    static BathSpec discrete(ModeSet modes, double gamma);

    BathKind kind() const noexcept { return kind_; }
    double gamma() const noexcept { return gamma_; }
    double cutoff() const;
    double mode_mass() const;
    double mode_coupling() const;
    double system_mass() const;
    const ModeSet& modes() const;

    // 3c̃²/(m̃Ω³): prefactor of sin(Ωt)/t in the cutoff-Ohmic kernel.
    double sinc_prefactor() const;

private:
    BathSpec() = default;

    BathKind kind_{BathKind::StrictOhmic};
    double gamma_{0.0};
    double cutoff_{0.0};
    double mtilde_{0.0};
    double ctilde_{0.0};
    double system_mass_{0.0};
    std::optional<ModeSet> modes_;
};

namespace bath {

// g(ω) = 3ω²/Ω³ for ω < Ω, zero above. Integrates to one.
double ohmic_dos(double omega, double cutoff);

// μ(t). Zero for t < 0. Throws std::invalid_argument for StrictOhmic, whose
// kernel 2mγδ(t) is a distribution and is only ever used through γ.
double friction_kernel(const BathSpec& spec, double t);

// γ = 3πc̃² / (2 m m̃ Ω³).
double gamma_from_micro(double ctilde, double mtilde, double cutoff, double system_mass);

// J(ω). StrictOhmic: mγω. CutoffOhmic: (π/2)(c̃²/m̃) g(ω)/ω, which equals mγω
// below the cutoff. Discrete baths have a delta-comb J and throw.
double spectral_density(const BathSpec& spec, const SystemSpec& system, double omega);

// N modes at the equal-weight quantiles of g: ω_j = Ω((j − ½)/N)^{1/3},
// masses m̃ and couplings c̃/√N.
ModeSet discretize_bath(const BathSpec& spec, std::size_t n);

} // namespace bath
} // namespace qle
