#ifndef PAULIHEUN_TEST_UTIL_HPP
#define PAULIHEUN_TEST_UTIL_HPP

#include <cmath>
#include <complex>
#include <random>

#include "pauliheun/polyalg.hpp"

namespace testutil {

inline pauliheun::Complex random_disk(std::mt19937& rng, double radius) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = radius * std::sqrt(u(rng));
    const double th = 2.0 * M_PI * u(rng);
    return {r * std::cos(th), r * std::sin(th)};
}

inline bool poly_close(const pauliheun::ComplexPoly& a, const pauliheun::ComplexPoly& b,
                       double tol) {
    const pauliheun::ComplexPoly d = a - b;
    const double scale = std::max({a.max_abs_coeff(), b.max_abs_coeff(), 1.0});
    return d.max_abs_coeff() <= tol * scale;
}

inline bool close(pauliheun::Complex a, pauliheun::Complex b, double tol, double scale = 1.0) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), scale});
}

}  // namespace testutil

#endif
