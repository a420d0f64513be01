#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "qle/bath.hpp"

using namespace qle;

namespace {

double sup_kernel_error(const BathSpec& continuum, std::size_t n) {
    const BathSpec finite = BathSpec::discrete(bath::discretize_bath(continuum, n), continuum.gamma());
    const double cutoff = continuum.cutoff();
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double t = 10.0 / cutoff * i / 1000.0;
        worst = std::max(worst, std::abs(bath::friction_kernel(finite, t) - bath::friction_kernel(continuum, t)));
    }
    return worst;
}

} // namespace

TEST_CASE("ohmic density of states") {
    const double cutoff = 2.5;
    CHECK(bath::ohmic_dos(cutoff / 2, cutoff) == doctest::Approx(0.75 / cutoff).epsilon(1e-15));
    CHECK(bath::ohmic_dos(2 * cutoff, cutoff) == 0.0);
    CHECK(bath::ohmic_dos(cutoff, cutoff) == 0.0);
    const double norm = oracle::integrate([cutoff](double w) { return bath::ohmic_dos(w, cutoff); }, 0.0, cutoff);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(bath::ohmic_dos(-1.0, cutoff), std::domain_error);
    CHECK_THROWS_AS(bath::ohmic_dos(1.0, 0.0), std::domain_error);
}

TEST_CASE("friction kernel") {
    const double ct = 0.7, mt = 1.3, cutoff = 4.0, m = 2.0;
    const BathSpec b = BathSpec::cutoff_ohmic(ct, mt, cutoff, m);

    SUBCASE("origin uses the sinc limit") {
        CHECK(bath::friction_kernel(b, 0.0) == doctest::Approx(3 * ct * ct / (mt * cutoff * cutoff)).epsilon(1e-15));
        CHECK(bath::friction_kernel(b, 1e-12) == doctest::Approx(bath::friction_kernel(b, 0.0)).epsilon(1e-15));
    }
    SUBCASE("causal") {
        for (double t : {-1e-12, -0.5, -100.0}) CHECK(bath::friction_kernel(b, t) == 0.0);
    }
    SUBCASE("area on the half line is m gamma") {
        const double horizon = 200.0 / cutoff;
        const double area = oracle::integrate([&b](double t) { return bath::friction_kernel(b, t); }, 0.0, horizon, 1e-10);
        CHECK(area == doctest::Approx(m * b.gamma()).epsilon(5e-3));
    }
    SUBCASE("single discrete mode") {
        const Mode mode{1.5, 0.8, 0.3};
        const BathSpec d = BathSpec::discrete(ModeSet({mode}), 0.1);
        const double t = 0.9;
        CHECK(bath::friction_kernel(d, t) ==
              doctest::Approx(mode.coupling * mode.coupling / (mode.mass * mode.omega * mode.omega) * std::cos(mode.omega * t)));
    }
    CHECK_THROWS_WITH_AS(bath::friction_kernel(BathSpec::strict_ohmic(0.1), 1.0),
                         "kernel is distributional; use gamma directly", std::invalid_argument);
}

TEST_CASE("gamma from microscopic parameters") {
    CHECK(bath::gamma_from_micro(1, 1, 1, 1) == doctest::Approx(1.5 * std::numbers::pi).epsilon(1e-15));
    const double base = bath::gamma_from_micro(0.4, 1.1, 1.0, 1.0);
    for (double cutoff : {2.0, 10.0, 100.0}) {
        CHECK(bath::gamma_from_micro(0.4 * std::pow(cutoff, 1.5), 1.1, cutoff, 1.0) == doctest::Approx(base).epsilon(1e-13));
    }
    CHECK(bath::gamma_from_micro(0.4, 1.1, 1.0, 2.0) == doctest::Approx(0.5 * base).epsilon(1e-15));
    CHECK(BathSpec::cutoff_ohmic(0.4, 1.1, 3.0, 1.7).gamma() == doctest::Approx(bath::gamma_from_micro(0.4, 1.1, 3.0, 1.7)));
    CHECK_THROWS_AS(bath::gamma_from_micro(0.0, 1, 1, 1), std::domain_error);
}

TEST_CASE("spectral density") {
    SystemSpec sys;
    sys.mass = 1.7;
    sys.omega0 = 1.3;
    CHECK(bath::spectral_density(BathSpec::strict_ohmic(0.2), sys, sys.omega0) ==
          doctest::Approx(sys.mass * 0.2 * sys.omega0).epsilon(1e-15));

    const BathSpec b = BathSpec::cutoff_ohmic(0.6, 0.9, 5.0, sys.mass);
    for (int i = 1; i < 100; ++i) {
        const double w = 5.0 * i / 100.0;
        CHECK(bath::spectral_density(b, sys, w) / (sys.mass * b.gamma() * w) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(bath::spectral_density(b, sys, 6.0) == 0.0);
    CHECK(bath::spectral_density(b, sys, 0.0) == 0.0);
    CHECK(bath::spectral_density(BathSpec::strict_ohmic(0.2), sys, 0.0) == 0.0);
    const BathSpec d = BathSpec::discrete(ModeSet({Mode{}}), 0.1);
    CHECK_THROWS_WITH_AS(bath::spectral_density(d, sys, 1.0), "spectral density is a delta comb; not pointwise",
                         std::invalid_argument);
}

TEST_CASE("discretized bath") {
    const BathSpec b = BathSpec::cutoff_ohmic(0.5, 1.2, 3.0, 1.0);
    SUBCASE("single mode sits at the median quantile") {
        const ModeSet one = bath::discretize_bath(b, 1);
        REQUIRE(one.size() == 1);
        CHECK(one[0].omega == doctest::Approx(3.0 * std::cbrt(0.5)).epsilon(1e-15));
    }
    SUBCASE("equal masses and couplings") {
        const std::size_t n = 64;
        const ModeSet ms = bath::discretize_bath(b, n);
        for (const Mode& m : ms.modes()) {
            CHECK(m.mass == 1.2);
            CHECK(m.coupling == doctest::Approx(0.5 / std::sqrt(double(n))).epsilon(1e-15));
            CHECK(m.omega > 0.0);
            CHECK(m.omega < 3.0);
        }
    }
    SUBCASE("kernel converges to the sinc form") {
        const double e2 = sup_kernel_error(b, 100);
        const double e3 = sup_kernel_error(b, 1000);
        const double e4 = sup_kernel_error(b, 10000);
        CHECK(e3 < e2);
        CHECK(e4 < e3);
        CHECK(e4 < 0.05 * bath::friction_kernel(b, 0.0));
    }
    CHECK_THROWS_AS(bath::discretize_bath(b, 0), std::invalid_argument);
}

TEST_CASE("construction invariants") {
    CHECK_THROWS_AS(BathSpec::strict_ohmic(0.0), std::invalid_argument);
    CHECK_THROWS_AS(BathSpec::cutoff_ohmic(1.0, 1.0, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ModeSet({}), std::invalid_argument);
    CHECK_THROWS_AS(ModeSet({Mode{0.0, 1.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(BathSpec::strict_ohmic(0.1).cutoff(), std::logic_error);
    const BathSpec b = BathSpec::cutoff_ohmic_with_gamma(0.3, 4.0, 2.0);
    CHECK(b.gamma() == doctest::Approx(bath::gamma_from_micro(b.mode_coupling(), b.mode_mass(), 4.0, 2.0)).epsilon(1e-14));

    SystemSpec bad;
    bad.temperature = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    SystemSpec free;
    free.omega0 = 0.0;
    CHECK_NOTHROW(free.validate());
}
