#include "qle/thermo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qle/thermal.hpp"

namespace qle::thermo {

namespace {
void require(double beta, double omega0, double hbar) {
    if (!(beta > 0.0) || !(hbar > 0.0)) throw std::invalid_argument("thermo: beta and hbar must be positive");
    if (omega0 == 0.0) throw std::invalid_argument("thermo: omega0 = 0 is the free particle; use free_particle_kinetic");
    if (!(omega0 > 0.0)) throw std::invalid_argument("thermo: omega0 must be positive");
}
} // namespace

double log_partition_weak(double beta, double omega0, double hbar) {
    require(beta, omega0, hbar);
    const double x = 0.5 * beta * hbar * omega0;
    // ln(2 sinh x) = x + ln(1 − e^{−2x})
    return -(x + std::log1p(-std::exp(-2.0 * x)));
}

double partition_weak(double beta, double omega0, double hbar) {
    return std::exp(log_partition_weak(beta, omega0, hbar));
}

double mean_energy_weak(double beta, double omega0, double hbar) {
    require(beta, omega0, hbar);
    return thermal::oscillator_energy(hbar * omega0, 1.0 / beta);
}

double free_particle_kinetic(double temperature, double kB) {
    if (!(temperature > 0.0) || !(kB > 0.0)) throw std::invalid_argument("free_particle_kinetic: T and kB must be positive");
    return 0.5 * kB * temperature;
}

ThermoReport thermo_report(const SystemSpec& sys) {
    sys.validate();
    if (sys.omega0 == 0.0) {
        const double per_length = std::sqrt(sys.mass / (2.0 * std::numbers::pi * sys.beta() * sys.hbar * sys.hbar));
        return {per_length, free_particle_kinetic(sys.temperature, sys.kB), Regime::FreeParticle};
    }
    return {partition_weak(sys.beta(), sys.omega0, sys.hbar), mean_energy_weak(sys.beta(), sys.omega0, sys.hbar),
            Regime::Oscillator};
}

} // namespace qle::thermo
