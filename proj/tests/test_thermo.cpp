#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qle/fdt.hpp"
#include "qle/thermo.hpp"

using namespace qle;

namespace {

double fd_energy(double beta, double w0, double hbar) {
    const double h = 1e-6 * beta;
    return -(thermo::log_partition_weak(beta + h, w0, hbar) - thermo::log_partition_weak(beta - h, w0, hbar)) / (2 * h);
}

} // namespace

TEST_CASE("partition function reference points") {
    CHECK(thermo::partition_weak(2.0 * std::asinh(0.5), 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    const double beta = 60.0;
    CHECK(thermo::partition_weak(beta, 1.0, 1.0) == doctest::Approx(std::exp(-beta / 2)).epsilon(1e-14));
    CHECK(thermo::partition_weak(1e-4, 1.0, 1.0) == doctest::Approx(1e4).epsilon(1e-8));
    CHECK(std::isfinite(thermo::log_partition_weak(1e4, 1.0, 1.0)));
    CHECK(thermo::log_partition_weak(1e4, 1.0, 1.0) == doctest::Approx(-5e3).epsilon(1e-15));
}

TEST_CASE("mean energy is minus the beta derivative of ln Z") {
    for (double beta : {0.01, 0.3, 1.0, 4.0, 30.0}) {
        for (double w0 : {0.5, 1.0, 2.0}) {
            CAPTURE(beta);
            CAPTURE(w0);
            const double e = thermo::mean_energy_weak(beta, w0, 1.0);
            CHECK(std::abs(fd_energy(beta, w0, 1.0) / e - 1.0) < 1e-8);
        }
    }
}

TEST_CASE("limits and monotonicity") {
    CHECK(thermo::mean_energy_weak(1e3, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(thermo::mean_energy_weak(1e-4, 1.0, 1.0) == doctest::Approx(1e4).epsilon(1e-8));
    double prev = 0.0;
    for (int i = 0; i <= 60; ++i) {
        const double t = std::pow(10.0, -2.0 + 4.0 * i / 60.0);
        const double e = thermo::mean_energy_weak(1.0 / t, 1.0, 1.0);
        CHECK(e >= prev);
        CHECK(e >= 0.5);
        prev = e;
    }
}

TEST_CASE("agrees with the weak-coupling correlations") {
    SystemSpec sys;
    sys.temperature = 0.7;
    sys.omega0 = 1.3;
    const auto w = fdt::weak_limit_correlation(0.0, sys);
    const double e = thermo::mean_energy_weak(sys.beta(), sys.omega0, sys.hbar);
    CHECK(e == doctest::Approx(sys.mass * w.velocity).epsilon(1e-15));
    CHECK(e == doctest::Approx(sys.mass * sys.omega0 * sys.omega0 * w.position).epsilon(1e-15));
}

TEST_CASE("free particle") {
    CHECK(thermo::free_particle_kinetic(2.0) == 1.0);
    CHECK(thermo::free_particle_kinetic(2.0, 3.0) == 3.0);
    SystemSpec a;
    a.omega0 = 0.0;
    a.temperature = 1.7;
    SystemSpec b = a;
    b.hbar = 1e-3;
    const auto ra = thermo::thermo_report(a);
    const auto rb = thermo::thermo_report(b);
    CHECK(ra.regime == thermo::Regime::FreeParticle);
    CHECK(ra.energy == rb.energy);
    CHECK(ra.energy == 0.85);
    CHECK(ra.partition > 0.0);
    CHECK_THROWS_WITH_AS(thermo::partition_weak(1.0, 0.0, 1.0),
                         "thermo: omega0 = 0 is the free particle; use free_particle_kinetic", std::invalid_argument);
}

TEST_CASE("oscillator report") {
    SystemSpec sys;
    const auto r = thermo::thermo_report(sys);
    CHECK(r.regime == thermo::Regime::Oscillator);
    CHECK(r.partition == doctest::Approx(1.0 / (2.0 * std::sinh(0.5))).epsilon(1e-14));
    CHECK(r.energy >= 0.5 * sys.hbar * sys.omega0);
}
