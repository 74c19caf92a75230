#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "pauliheun/geometry.hpp"

using namespace pauliheun;

TEST_CASE("s_kappa across curvature signs") {
    CHECK(s_kappa(0.0, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s_kappa(1.0, M_PI_2) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s_kappa(-1.0, 1.0) == doctest::Approx(1.1752011936438014).epsilon(1e-14));
}

TEST_CASE("c_kappa and t_kappa") {
    CHECK(c_kappa(0.0, 5.0) == doctest::Approx(1.0));
    CHECK(t_kappa(0.0, 5.0) == doctest::Approx(5.0));
    CHECK(c_kappa(1.0, M_PI / 3.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(t_kappa(1.0, M_PI / 3.0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    // kappa = -4, r = 0.5: C = cosh(1), T = tanh(1)/2
    CHECK(c_kappa(-4.0, 0.5) == doctest::Approx(1.5430806348152437).epsilon(1e-14));
    CHECK(t_kappa(-4.0, 0.5) == doctest::Approx(0.38079707797788246).epsilon(1e-14));
}

TEST_CASE("domain guards") {
    CHECK_THROWS_AS(s_kappa(1.0, -0.1), std::domain_error);
    CHECK_THROWS_AS(s_kappa(1.0, M_PI + 0.1), std::domain_error);
    CHECK_THROWS_AS(s_kappa(4.0, M_PI / 2.0), std::domain_error);  // chart is pi/2 here
    CHECK_THROWS_AS(t_kappa(1.0, M_PI_2), std::domain_error);      // equator pole
    CHECK_NOTHROW(t_kappa(1.0, M_PI_2 - 1e-6));
}

TEST_CASE("coulomb energy") {
    const PhysParams flat = PhysParams::make(0.0, 1.0, 1.0);
    CHECK(coulomb_energy(flat, 2.0) == doctest::Approx(-0.5).epsilon(1e-14));

    const PhysParams sph = PhysParams::make(1.0, 1.0, 1.0);
    CHECK(std::abs(coulomb_energy(sph, M_PI_2)) < 1e-15);          // zero at the equator
    CHECK(coulomb_energy(sph, 3.0 * M_PI / 4.0) ==
          doctest::Approx(1.0).epsilon(1e-14));                    // repulsive past the equator
    CHECK_THROWS_AS(coulomb_energy(sph, 0.0), std::domain_error);  // Coulomb pole

    // Sign structure on the sphere.
    CHECK(coulomb_energy(sph, 1.0) < 0.0);
    CHECK(coulomb_energy(sph, 2.0) > 0.0);
    // Hyperbolic and flat: attractive everywhere.
    const PhysParams hyp = PhysParams::make(-1.0, 1.0, 1.0);
    for (double r : {0.5, 2.0, 10.0}) CHECK(coulomb_energy(hyp, r) < 0.0);
}

TEST_CASE("effective potential worked values") {
    const PhysParams flat = PhysParams::make(0.0, 1.0, 1.0);
    CHECK(effective_potential(flat, Channel::make(1, +1), 1.0) ==
          doctest::Approx(0.0).epsilon(1e-14));
    CHECK(effective_potential(flat, Channel::make(1, -1), 1.0) ==
          doctest::Approx(-2.0).epsilon(1e-14));
    const PhysParams sph = PhysParams::make(1.0, 1.0, 1.0);
    CHECK(effective_potential(sph, Channel::make(1, +1), M_PI_2) ==
          doctest::Approx(1.0).epsilon(1e-13));
    CHECK_THROWS_AS(effective_potential(sph, Channel::make(1, +1), M_PI), std::domain_error);
}

TEST_CASE("pythagorean identity and derivatives") {
    const double kappas[] = {0.0, 1e-12, -1e-12, 3e-9, 1e-6, -1e-6, 0.04, -0.04, 1.0, -1.0, 4.0};
    for (double kappa : kappas) {
        const double limit = kappa > 0.0 ? chart_limit(kappa) : 6.0;
        for (int i = 1; i <= 25; ++i) {
            const double r = limit * i / 27.0;
            const double s = s_kappa(kappa, r), c = c_kappa(kappa, r);
            CHECK(std::abs(c * c + kappa * s * s - 1.0) <= 1e-12 * std::max(1.0, c * c));

            const double h = 1e-5 * std::max(1.0, r);
            if (r > 2.0 * h && r + 2.0 * h < limit) {
                const double ds = (s_kappa(kappa, r + h) - s_kappa(kappa, r - h)) / (2.0 * h);
                const double dc = (c_kappa(kappa, r + h) - c_kappa(kappa, r - h)) / (2.0 * h);
                CHECK(std::abs(ds - c) <= 1e-8 * std::max(1.0, std::abs(c)));
                CHECK(std::abs(dc + kappa * s) <= 1e-8 * std::max(1.0, std::abs(kappa * s)));
            }
        }
    }
}

TEST_CASE("flat-limit continuity bound") {
    for (double kappa : {1e-10, -1e-10, 1e-4, -1e-4, 0.01, -0.01}) {
        for (double r : {0.1, 1.0, 3.0, 8.0, 30.0}) {
            if (std::abs(kappa) * r * r >= 0.1) continue;
            CHECK(std::abs(s_kappa(kappa, r) - r) <= std::abs(kappa) * r * r * r);
        }
    }
}

TEST_CASE("parity flip equals nu -> -nu in the centrifugal numerator") {
    const PhysParams p = PhysParams::make(0.3, 1.2, 0.8);
    for (int two_j : {1, 3, 5}) {
        const Channel minus = Channel::make(two_j, -1);
        const double nu = minus.nu();
        for (int i = 1; i <= 20; ++i) {
            const double r = 0.1 + 0.25 * i;
            const double s = s_kappa(p.kappa, r), c = c_kappa(p.kappa, r);
            const double flipped = (-nu) * (-nu + c) / (s * s) - 2.0 * p.mass * p.e2 * c / s;
            CHECK(effective_potential(p, minus, r) ==
                  doctest::Approx(flipped).epsilon(1e-12));
        }
    }
}

TEST_CASE("parameter bookkeeping") {
    const PhysParams p = PhysParams::make(0.5, 2.0, 0.25);
    CHECK(p.a_b == doctest::Approx(1.0 / (2.0 * 0.25)).epsilon(1e-15));
    CHECK(p.ry == doctest::Approx(0.5 * 2.0 * 0.25 * 0.25).epsilon(1e-15));
    CHECK(PhysParams::from_kappa_ab2(0.01).kappa_ab2() == doctest::Approx(0.01));
    CHECK_THROWS_AS(PhysParams::make(0.0, -1.0, 1.0), std::domain_error);

    CHECK_THROWS_AS(Channel::make(2, +1), std::domain_error);  // 2j must be odd
    CHECK_THROWS_AS(Channel::make(1, 0), std::domain_error);
    const Channel ch = Channel::make(3, +1);
    CHECK(ch.nu() == doctest::Approx(2.0));
    CHECK(ch.nu_bar() == 4);
    CHECK(ch.l_eff() == 2);
    CHECK(Channel::make(3, -1).l_eff() == 1);
}
