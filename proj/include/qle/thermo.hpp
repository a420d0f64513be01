// Weak-coupling partition function and mean energies

#pragma once

#include "qle/bath.hpp"

namespace qle::thermo {

// Z = [2 sinh(βħω₀/2)]⁻¹. ω₀ = 0 throws and points to the free-particle path.
double partition_weak(double beta, double omega0, double hbar);

// ln Z, accurate where Z itself under- or overflows.
double log_partition_weak(double beta, double omega0, double hbar);

// (ħω₀/2) coth(βħω₀/2).
double mean_energy_weak(double beta, double omega0, double hbar);

// k_BT/2 for a free particle; ħ does not enter.
double free_particle_kinetic(double temperature, double kB = 1.0);

enum class Regime { Oscillator, FreeParticle };

struct ThermoReport {
    double partition{0.0};  // per unit length for a free particle
    double energy{0.0};     // full oscillator energy, or the kinetic k_BT/2
    Regime regime{Regime::Oscillator};
};

ThermoReport thermo_report(const SystemSpec& sys);

} // namespace qle::thermo
