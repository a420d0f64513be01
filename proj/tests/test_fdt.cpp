#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "qle/fdt.hpp"

using namespace qle;

namespace {

const double kEwc = oracle::weak_energy(1.0, 1.0, 1.0);

fdt::QuadratureConfig with_cutoff(double omega_max) {
    fdt::QuadratureConfig c;
    c.omega_max = omega_max;
    return c;
}

} // namespace

TEST_CASE("dimensionless densities at reference points") {
    CHECK(fdt::pk_density(1.0, 1.0) == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-15));
    CHECK(fdt::pp_density(1.0, 1.0) == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-15));
    CHECK(fdt::pk_density(0.0, 0.3) == 0.0);
    CHECK(fdt::pp_density(0.0, 0.5) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-15));
    CHECK_THROWS_AS(fdt::pk_density(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(fdt::pp_density(1.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(fdt::pp_density(-0.1, 1.0), std::domain_error);
}

TEST_CASE("densities are nonnegative") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> lam(0.0, 50.0);
    std::uniform_real_distribution<double> lg(-4.0, 1.0);
    for (int i = 0; i < 20000; ++i) {
        const double l = lam(rng);
        const double g = std::pow(10.0, lg(rng));
        CHECK(fdt::pk_density(l, g) >= 0.0);
        CHECK(fdt::pp_density(l, g) >= 0.0);
    }
}

TEST_CASE("normalization over a damping sweep") {
    for (int i = 0; i <= 16; ++i) {
        const double g = std::pow(10.0, -3.0 + 4.0 * i / 16.0);
        CAPTURE(g);
        CHECK(fdt::density_moment(fdt::Density::Kinetic, 0, g).value == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(fdt::density_moment(fdt::Density::Potential, 0, g).value == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("independent quadrature agrees") {
        for (double g : {1.0, 0.5, 0.125, 0.0125}) {
            auto pk = [g](double l) { return fdt::pk_density(l, g); };
            const double edges_hi = 1.0 + 20.0 * g;
            const double ref = oracle::integrate(pk, {0.0, std::max(0.0, 1.0 - 20 * g), 1.0, edges_hi}) +
                               oracle::integrate(pk, edges_hi, INFINITY);
            CHECK(ref == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("moments approach the delta limit") {
    const double lmax = 10.0;
    double dev3 = 0.0, dev4 = 0.0;
    for (int order : {1, 2}) {
        for (auto which : {fdt::Density::Kinetic, fdt::Density::Potential}) {
            const double limit = which == fdt::Density::Kinetic ? lmax : INFINITY;
            const double m3 = fdt::density_moment(which, order, 1e-3, limit).value;
            const double m4 = fdt::density_moment(which, order, 1e-4, limit).value;
            CHECK(std::abs(m3 - 1.0) < 0.01);
            // The second moment of the potential density is 1 at every coupling.
            if (which == fdt::Density::Potential && order == 2) {
                CHECK(std::abs(m3 - 1.0) < 1e-12);
                CHECK(std::abs(m4 - 1.0) < 1e-12);
                CHECK(std::abs(fdt::density_moment(which, order, 0.5).value - 1.0) < 1e-12);
                continue;
            }
            CHECK(std::abs(m4 - 1.0) < std::abs(m3 - 1.0));
            dev3 = std::max(dev3, std::abs(m3 - 1.0));
            dev4 = std::max(dev4, std::abs(m4 - 1.0));
        }
    }
    CHECK(dev4 < 0.2 * dev3);
}

TEST_CASE("dimensional densities rescale exactly") {
    SystemSpec sys;
    sys.omega0 = 2.0;
    sys.mass = 0.7;
    const double gamma = 0.3;
    const response::Susceptibility chi(sys, BathSpec::strict_ohmic(gamma));
    const double ratio = gamma / sys.omega0;
    for (int i = 1; i <= 100; ++i) {
        const double l = 0.05 * i;
        CAPTURE(l);
        CHECK(sys.omega0 * fdt::pk_dimensional(sys.omega0 * l, chi) == doctest::Approx(fdt::pk_density(l, ratio)).epsilon(1e-14));
        CHECK(sys.omega0 * fdt::pp_dimensional(sys.omega0 * l, chi) == doctest::Approx(fdt::pp_density(l, ratio)).epsilon(1e-14));
        CHECK(fdt::pk_dimensional(sys.omega0 * l, chi) / fdt::pp_dimensional(sys.omega0 * l, chi) ==
              doctest::Approx(l * l).epsilon(1e-13));
    }
    auto pk = [&chi](double w) { return fdt::pk_dimensional(w, chi); };
    const double norm = oracle::integrate(pk, {0.0, 0.5, 2.0, 3.5, 8.0}) + oracle::integrate(pk, 8.0, INFINITY);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("weak-coupling closed forms") {
    SystemSpec sys;
    sys.omega0 = 1.3;
    sys.mass = 0.8;
    const auto w = fdt::weak_limit_correlation(0.0, sys);
    const double coth = 1.0 / std::tanh(sys.hbar * sys.omega0 / (2 * sys.kT()));
    CHECK(w.position == doctest::Approx(sys.hbar / (2 * sys.mass * sys.omega0) * coth).epsilon(1e-15));
    CHECK(w.velocity == doctest::Approx(sys.hbar * sys.omega0 / (2 * sys.mass) * coth).epsilon(1e-15));

    SystemSpec cold = sys;
    cold.temperature = 1e-3 * sys.hbar * sys.omega0;
    CHECK(fdt::weak_limit_correlation(0.0, cold).velocity ==
          doctest::Approx(sys.hbar * sys.omega0 / (2 * sys.mass)).epsilon(1e-6));

    const auto q = fdt::weak_limit_correlation(std::numbers::pi / (2 * sys.omega0), sys);
    CHECK(std::abs(q.position) < 1e-15);
    CHECK(std::abs(q.velocity) < 1e-15);
}

TEST_CASE("position correlation in weak coupling") {
    SystemSpec sys;
    const response::Susceptibility chi(sys, BathSpec::strict_ohmic(1e-4));
    const double c0 = fdt::position_correlation(0.0, chi).value;
    CHECK(c0 == doctest::Approx(kEwc).epsilon(1e-3));

    const std::array<double, 3> gammas{0.02, 0.01, 0.005};
    const auto extrapolated = fdt::weak_coupling_energies(sys, gammas, with_cutoff(1e3));
    CHECK(extrapolated.potential == doctest::Approx(kEwc).epsilon(1e-6));
    CHECK(extrapolated.kinetic == doctest::Approx(kEwc).epsilon(1e-6));

    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double tau = 0.1 * i;
        worst = std::max(worst, std::abs(fdt::position_correlation(tau, chi).value / c0 - std::cos(tau)));
    }
    CHECK(worst < 0.02);
}

TEST_CASE("correlations are even in tau") {
    SystemSpec sys;
    const response::Susceptibility chi(sys, BathSpec::strict_ohmic(0.3));
    for (double tau : {0.4, 2.5, 7.0}) {
        CHECK(fdt::position_correlation(-tau, chi).value == fdt::position_correlation(tau, chi).value);
        CHECK(fdt::velocity_correlation(-tau, chi, with_cutoff(1e3)).value ==
              fdt::velocity_correlation(tau, chi, with_cutoff(1e3)).value);
    }
}

TEST_CASE("classical limit") {
    SystemSpec sys;
    const BathSpec b = BathSpec::strict_ohmic(0.1);

    SystemSpec cl = sys;
    cl.hbar = 1e-6;
    const auto e = fdt::mean_energies(cl, b, with_cutoff(1e3));
    CHECK(e.potential == doctest::Approx(cl.kT()).epsilon(5e-3));
    CHECK(e.kinetic == doctest::Approx(cl.kT()).epsilon(5e-3));

    SUBCASE("error shrinks as hbar squared") {
        fdt::QuadratureConfig tight;
        tight.rel_tol = 1e-12;
        std::vector<double> err;
        for (double h : {0.3, 0.1, 0.03}) {
            SystemSpec s = sys;
            s.hbar = h;
            const response::Susceptibility chi(s, b);
            err.push_back(fdt::position_correlation(0.0, chi, tight).value * s.mass * s.omega0 * s.omega0 - s.kT());
        }
        CHECK(err[0] / err[1] == doctest::Approx(9.0).epsilon(0.05));
        CHECK(err[1] / err[2] == doctest::Approx(100.0 / 9.0).epsilon(0.05));
        for (int k = 3; k <= 6; ++k) {
            SystemSpec s = sys;
            s.hbar = std::pow(10.0, -k);
            const double ep = fdt::position_correlation(0.0, s, b, tight).value;
            CHECK(std::abs(ep - s.kT()) <= std::max(err[2] * std::pow(s.hbar / 0.03, 2) * 2.0, 1e-9));
        }
    }
}

TEST_CASE("velocity channel") {
    SystemSpec sys;
    const BathSpec weak = BathSpec::strict_ohmic(1e-4);
    const auto e = fdt::mean_energies(sys, weak, with_cutoff(1e3));
    CHECK(e.kinetic == doctest::Approx(kEwc).epsilon(5e-3));
    CHECK(std::abs(e.kinetic / e.potential - 1.0) < 1e-3);
    CHECK(e.omega_max == 1e3);

    const auto doubled = fdt::mean_energies(sys, weak, with_cutoff(2e3));
    CHECK(std::abs(doubled.kinetic / e.kinetic - 1.0) < 1e-3);

    const auto strong = fdt::mean_energies(sys, BathSpec::strict_ohmic(1.0), with_cutoff(1e3));
    CHECK(strong.kinetic - strong.potential > 0.0);

    CHECK_THROWS_WITH_AS(fdt::velocity_correlation(0.0, sys, weak), "UV-divergent; set omega_max", std::invalid_argument);
    CHECK_THROWS_WITH_AS(fdt::velocity_correlation(1.0, sys, weak), "UV-divergent; set omega_max", std::invalid_argument);
}

TEST_CASE("cutoff bath needs no explicit omega_max") {
    SystemSpec sys;
    const auto e = fdt::mean_energies(sys, BathSpec::cutoff_ohmic_with_gamma(0.5, 3.0, sys.mass));
    CHECK(e.omega_max == 3.0);
    CHECK(e.potential > 0.0);
    CHECK(e.kinetic > 0.0);
}

TEST_CASE("energies approach the weak value along the figure sweep") {
    SystemSpec sys;
    double prev = INFINITY;
    double prev_ratio = INFINITY;
    for (double g : {1.0, 0.5, 0.125, 0.0125}) {
        const auto e = fdt::mean_energies(sys, BathSpec::strict_ohmic(g), with_cutoff(1e3));
        const double gap = std::abs(e.potential - kEwc);
        CHECK(gap < prev);
        const double ratio = std::abs(e.kinetic / e.potential - 1.0);
        CHECK(ratio < prev_ratio);
        prev = gap;
        prev_ratio = ratio;
    }
}

TEST_CASE("halving the tolerance stays inside the error bound") {
    SystemSpec sys;
    const response::Susceptibility chi(sys, BathSpec::strict_ohmic(0.125));
    fdt::QuadratureConfig loose;
    fdt::QuadratureConfig tight;
    tight.rel_tol = 0.5 * loose.rel_tol;
    for (double tau : {0.0, 3.0}) {
        const auto a = fdt::position_correlation(tau, chi, loose);
        const auto b = fdt::position_correlation(tau, chi, tight);
        CHECK(std::abs(a.value - b.value) <= a.error);
    }
}

TEST_CASE("noise correlation of a cutoff bath") {
    SystemSpec sys;
    const BathSpec b = BathSpec::cutoff_ohmic_with_gamma(0.5, 10.0, sys.mass);
    auto integrand = [&](double w, double tau) {
        return sys.mass * b.gamma() / std::numbers::pi * sys.hbar * w / std::tanh(sys.hbar * w / (2 * sys.kT())) *
               std::cos(w * tau);
    };
    for (double tau : {0.0, 0.1, 1.0, 5.0}) {
        CAPTURE(tau);
        const double ref = oracle::integrate([&](double w) { return integrand(w, tau); }, {1e-300, 2.5, 5.0, 7.5, 10.0}, 1e-13);
        CHECK(fdt::noise_correlation(tau, sys, b).value == doctest::Approx(ref).epsilon(1e-7).scale(1.0));
    }
    CHECK_THROWS_AS(fdt::noise_correlation(0.0, sys, BathSpec::strict_ohmic(0.1)), std::invalid_argument);
}

TEST_CASE("extrapolation is exact for polynomials") {
    const std::array<double, 3> x{0.3, 0.2, 0.1};
    std::array<double, 3> y{};
    for (std::size_t i = 0; i < 3; ++i) y[i] = 2.0 - x[i] + 4.0 * x[i] * x[i];
    CHECK(fdt::extrapolate_to_zero(x, y) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("preconditions") {
    SystemSpec free;
    free.omega0 = 0.0;
    CHECK_THROWS_AS(fdt::position_correlation(0.0, free, BathSpec::strict_ohmic(0.1)), std::invalid_argument);
    SystemSpec sys;
    fdt::QuadratureConfig bad;
    bad.omega_max = 0.5;
    CHECK_THROWS_AS(fdt::position_correlation(0.0, sys, BathSpec::strict_ohmic(0.1), bad), std::invalid_argument);
    CHECK_THROWS_AS(fdt::position_correlation(0.0, sys, BathSpec::strict_ohmic(1e-14)), std::runtime_error);
}
