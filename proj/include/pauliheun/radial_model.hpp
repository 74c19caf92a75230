#ifndef PAULIHEUN_RADIAL_MODEL_HPP
#define PAULIHEUN_RADIAL_MODEL_HPP

// Dimensionless form of the radial problem on the chart z = exp(i sqrt(kappa) r):
//
//   f'' + (pi1/sigma) f' + (sigma1/sigma^2) f = 0,
//   sigma = z(1 - z^2), pi1 = 1 - z^2,
//   sigma1 = (lam - eps) - nu z + (2 eps - nu^2) z^2 - nu z^3 - (lam + eps) z^4,
//
// with eps = 2 m E / kappa, lam = 2 i m e^2 / sqrt(kappa), nu = 2j + 1.
// The parity -1 channel is the same family with nu -> -nu, which is how
// it is encoded here (nu_bar carries the sign).

#include <functional>

#include "pauliheun/geometry.hpp"
#include "pauliheun/polyalg.hpp"

namespace pauliheun {

struct Dimensionless {
    Complex eps_bar;  // 2 m eps / kappa
    Complex lam_bar;  // 2 i m e^2 / sqrt(kappa); imaginary for kappa>0, real>0 for kappa<0
    int nu_bar;       // parity * (2j + 1)

    // True when lam_bar indicates a hyperbolic chart (real positive).
    bool hyperbolic() const;
};

struct GeneralizedHeunODE {
    ComplexPoly sigma;   // z - z^3, fixed for this family
    ComplexPoly pi1;     // 1 - z^2
    ComplexPoly sigma1;  // degree <= 4
};

// Throws FlatSpaceError for kappa == 0 (route to the oracle instead).
Dimensionless make_dimensionless(const PhysParams& p, const Channel& ch, double eps);

GeneralizedHeunODE build_ode(const Dimensionless& d);

// Left side of the z-form equation for a candidate solution, with
// derivatives supplied or taken by central differences.  z must avoid
// the singular points 0, +1, -1.
Complex ode_residual(const GeneralizedHeunODE& ode, Complex f, Complex df, Complex d2f,
                     Complex z);
Complex ode_residual(const GeneralizedHeunODE& ode, const std::function<Complex(Complex)>& f,
                     Complex z);

}  // namespace pauliheun

#endif
