#include "pauliheun/geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pauliheun {

namespace {

// Below this value of |kappa| r^2 the trig/hyperbolic forms lose digits
// to cancellation against the removable singularity at kappa = 0; a
// short Taylor series in u = kappa r^2 covers both curvature signs.
constexpr double kTaylorCut = 1e-8;

void check_chart(double kappa, double r, const char* who) {
    if (r < 0.0)
        throw std::domain_error(std::string(who) + ": r must be non-negative");
    if (kappa > 0.0 && r >= chart_limit(kappa))
        throw std::domain_error(std::string(who) +
                                ": r outside the spherical chart [0, pi/sqrt(kappa))");
}

}  // namespace

PhysParams PhysParams::make(double kappa, double mass, double e2) {
    if (!(mass > 0.0) || !(e2 > 0.0))
        throw std::domain_error("PhysParams: mass and e2 must be positive");
    PhysParams p;
    p.kappa = kappa;
    p.mass = mass;
    p.e2 = e2;
    p.a_b = 1.0 / (mass * e2);
    p.ry = 0.5 * mass * e2 * e2;
    return p;
}

PhysParams PhysParams::from_kappa_ab2(double kappa_ab2) {
    return make(kappa_ab2, 1.0, 1.0);
}

Channel Channel::make(int two_j, int parity) {
    if (two_j < 1 || two_j % 2 == 0)
        throw std::domain_error("Channel: 2j must be a positive odd integer");
    if (parity != 1 && parity != -1)
        throw std::domain_error("Channel: parity must be +1 or -1");
    return Channel{two_j, parity};
}

double chart_limit(double kappa) {
    if (kappa > 0.0) return M_PI / std::sqrt(kappa);
    return std::numeric_limits<double>::infinity();
}

double s_kappa(double kappa, double r) {
    check_chart(kappa, r, "s_kappa");
    const double u = kappa * r * r;
    if (std::abs(u) < kTaylorCut) {
        // r (1 - u/6 + u^2/120 - u^3/5040), u = kappa r^2, valid either sign
        return r * (1.0 + u * (-1.0 / 6.0 + u * (1.0 / 120.0 + u * (-1.0 / 5040.0))));
    }
    if (kappa > 0.0) {
        const double sq = std::sqrt(kappa);
        return std::sin(sq * r) / sq;
    }
    const double sq = std::sqrt(-kappa);
    return std::sinh(sq * r) / sq;
}

double c_kappa(double kappa, double r) {
    check_chart(kappa, r, "c_kappa");
    const double u = kappa * r * r;
    if (std::abs(u) < kTaylorCut) {
        return 1.0 + u * (-0.5 + u * (1.0 / 24.0 + u * (-1.0 / 720.0)));
    }
    if (kappa > 0.0) return std::cos(std::sqrt(kappa) * r);
    return std::cosh(std::sqrt(-kappa) * r);
}

double t_kappa(double kappa, double r) {
    check_chart(kappa, r, "t_kappa");
    if (kappa > 0.0) {
        // T_k diverges where C_k = 0, i.e. sqrt(kappa) r an odd multiple of pi/2.
        const double x = std::sqrt(kappa) * r;
        const double dist = std::abs(std::remainder(x - M_PI_2, M_PI));
        if (dist < 1e-12)
            throw std::domain_error("t_kappa: pole at the equator r = pi/(2 sqrt(kappa))");
    }
    return s_kappa(kappa, r) / c_kappa(kappa, r);
}

double coulomb_energy(const PhysParams& p, double r) {
    check_chart(p.kappa, r, "coulomb_energy");
    if (r == 0.0)
        throw std::domain_error("coulomb_energy: pole at r = 0");
    // -e^2 C/S stays finite through the equator where 1/T vanishes.
    return -p.e2 * c_kappa(p.kappa, r) / s_kappa(p.kappa, r);
}

double effective_potential(const PhysParams& p, const Channel& ch, double r) {
    check_chart(p.kappa, r, "effective_potential");
    if (r == 0.0)
        throw std::domain_error("effective_potential: pole at r = 0");
    const double s = s_kappa(p.kappa, r);
    const double c = c_kappa(p.kappa, r);
    const double nu = ch.nu();
    return nu * (nu + ch.parity * c) / (s * s) - 2.0 * p.mass * p.e2 * c / s;
}

}  // namespace pauliheun
