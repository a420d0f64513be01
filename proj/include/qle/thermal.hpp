// Numerically stable coth weights shared by every module

#pragma once

#include <cmath>

namespace qle::thermal {

// x·coth(x), finite through x = 0.
inline double x_coth_x(double x) noexcept {
    const double ax = std::abs(x);
    if (ax < 1e-4) {
        const double x2 = x * x;
        return 1.0 + x2 / 3.0 - x2 * x2 / 45.0;
    }
    if (ax > 20.0) return ax;  // coth = 1 to double precision
    return x / std::tanh(x);
}

// ħω·coth(ħω / 2k_BT). Tends to 2k_BT as ħω → 0.
inline double hw_coth(double hbar_omega, double kT) noexcept {
    return 2.0 * kT * x_coth_x(hbar_omega / (2.0 * kT));
}

// (ħω/2)·coth(ħω / 2k_BT): the mean energy of one oscillator of frequency ω.
inline double oscillator_energy(double hbar_omega, double kT) noexcept {
    return 0.5 * hw_coth(hbar_omega, kT);
}

} // namespace qle::thermal
