#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "qle/response.hpp"

using namespace qle;
using response::complex;

TEST_CASE("strict ohmic friction is constant") {
    SystemSpec sys;
    sys.mass = 1.4;
    const BathSpec b = BathSpec::strict_ohmic(0.3);
    for (double w : {-5.0, 0.0, 0.7, 100.0}) {
        CHECK(response::mu_fourier(b, sys, w) == complex{sys.mass * 0.3, 0.0});
    }
}

TEST_CASE("cutoff friction against the closed-form transform") {
    SystemSpec sys;
    const double cutoff = 3.0;
    const BathSpec b = BathSpec::cutoff_ohmic_with_gamma(0.5, cutoff, sys.mass);
    const double k = b.sinc_prefactor();
    for (double w : {0.0, 0.3, 1.0, 2.0, 2.9, 2.999, 3.5, 6.0, 30.0}) {
        CAPTURE(w);
        const complex got = response::mu_fourier(b, sys, w);
        const complex want = oracle::sinc_transform(k, cutoff, w);
        CHECK(std::abs(got - want) < 1e-6 * k);
    }
    SUBCASE("real part at zero is m gamma") {
        CHECK(response::mu_fourier(b, sys, 0.0).real() == doctest::Approx(sys.mass * b.gamma()).epsilon(1e-2));
    }
    SUBCASE("decays above the cutoff") {
        const double far = std::abs(response::mu_fourier(b, sys, 10.0 * cutoff));
        CHECK(far < std::abs(response::mu_fourier(b, sys, 2.0 * cutoff)));
        // Only the reactive part survives and falls off as KΩ/ω.
        CHECK(far == doctest::Approx(k * cutoff / (10.0 * cutoff)).epsilon(1e-2));
    }
    SUBCASE("reality of the kernel") {
        const complex a = response::mu_fourier(b, sys, 1.3);
        CHECK(response::mu_fourier(b, sys, -1.3) == std::conj(a));
    }
    CHECK_THROWS_AS(response::mu_fourier(BathSpec::discrete(ModeSet({Mode{}}), 0.1), sys, 1.0), std::invalid_argument);
}

TEST_CASE("strict ohmic susceptibility") {
    SystemSpec sys;
    sys.mass = 2.0;
    sys.omega0 = 1.5;
    const double gamma = 0.2;
    const BathSpec b = BathSpec::strict_ohmic(gamma);

    CHECK(response::susceptibility(sys, b, 0.0) == complex{1.0 / (sys.mass * sys.omega0 * sys.omega0), 0.0});
    const complex res = response::susceptibility(sys, b, sys.omega0);
    CHECK(res.real() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(res.imag() == doctest::Approx(1.0 / (sys.mass * sys.omega0 * gamma)).epsilon(1e-14));

    for (double w : {0.1, 1.0, 1.49, 3.0, 40.0}) {
        CAPTURE(w);
        const complex a = response::susceptibility(sys, b, w);
        CHECK(a.imag() == doctest::Approx(oracle::im_alpha_strict(sys.mass, sys.omega0, gamma, w)).epsilon(1e-13));
        CHECK(response::susceptibility(sys, b, -w) == std::conj(a));
        CHECK(response::susceptibility_strict(sys, gamma, w) == a);
    }
    CHECK_THROWS_WITH_AS(response::susceptibility_strict(sys, 0.0, sys.omega0), "undamped resonance", std::domain_error);
    CHECK_NOTHROW(response::susceptibility_strict(sys, 0.0, 0.5 * sys.omega0));
}

TEST_CASE("passivity on a log grid") {
    SystemSpec sys;
    const response::Susceptibility strict(sys, BathSpec::strict_ohmic(0.05));
    const response::Susceptibility cut(sys, BathSpec::cutoff_ohmic_with_gamma(0.05, 50.0, sys.mass));
    for (int i = 0; i <= 120; ++i) {
        const double w = sys.omega0 * std::pow(10.0, -3.0 + 6.0 * i / 120.0);
        CAPTURE(w);
        CHECK(strict(w).imag() >= 0.0);
        CHECK(cut(w).imag() >= 0.0);
        CHECK(strict.im_over_omega(w) >= 0.0);
    }
}

TEST_CASE("kramers-kronig at zero frequency") {
    SystemSpec sys;
    sys.omega0 = 1.2;
    const double gamma = 0.3;
    auto kernel = [&](double w) { return oracle::im_alpha_strict(sys.mass, sys.omega0, gamma, w) / w; };
    const double lo = sys.omega0 - 20 * gamma, hi = sys.omega0 + 20 * gamma;
    const double dispersive =
        2.0 / std::numbers::pi *
        (oracle::integrate(kernel, {1e-300, 0.5 * lo, sys.omega0, hi}) + oracle::integrate(kernel, hi, INFINITY));
    const double re0 = response::susceptibility(sys, BathSpec::strict_ohmic(gamma), 0.0).real();
    CHECK(dispersive == doctest::Approx(re0).epsilon(1e-6));
}

TEST_CASE("cached susceptibility tracks direct evaluation") {
    SystemSpec sys;
    const BathSpec b = BathSpec::cutoff_ohmic_with_gamma(0.2, 3.0, sys.mass);
    const response::Susceptibility chi(sys, b);
    CHECK(chi.band_edge() == 3.0);
    CHECK(chi.cache_size() > 256);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pick(0.0, 2.99);
    for (int i = 0; i < 200; ++i) {
        const double w = pick(rng);
        CAPTURE(w);
        const complex direct = response::susceptibility(sys, b, w);
        CHECK(std::abs(chi(w) - direct) <= 1e-3 * std::abs(direct));
    }
    const double above = 4.0;
    CHECK(chi(above) == response::susceptibility(sys, b, above));

    const response::Susceptibility strict(sys, BathSpec::strict_ohmic(0.1));
    CHECK(std::isinf(strict.band_edge()));
    CHECK(strict.cache_size() == 0);
    CHECK_THROWS_AS(response::Susceptibility(sys, BathSpec::discrete(ModeSet({Mode{}}), 0.1)), std::invalid_argument);
}

TEST_CASE("im over omega is finite at zero") {
    SystemSpec sys;
    const response::Susceptibility chi(sys, BathSpec::strict_ohmic(0.4));
    CHECK(chi.im_over_omega(0.0) == doctest::Approx(0.4 / (sys.omega0 * sys.omega0 * sys.omega0 * sys.omega0)));
}
