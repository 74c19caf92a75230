#include "pauliheun/radial_model.hpp"

#include <cmath>
#include <stdexcept>

#include "pauliheun/errors.hpp"

namespace pauliheun {

bool Dimensionless::hyperbolic() const {
    const double mag = std::abs(lam_bar);
    if (mag == 0.0) return false;
    return std::abs(lam_bar.imag()) <= 1e-12 * mag && lam_bar.real() > 0.0;
}

Dimensionless make_dimensionless(const PhysParams& p, const Channel& ch, double eps) {
    if (p.kappa == 0.0)
        throw FlatSpaceError("make_dimensionless: kappa = 0 has no z-chart; use the oracle");
    const Complex sqrt_kappa = std::sqrt(Complex{p.kappa, 0.0});  // principal branch
    Dimensionless d;
    d.eps_bar = Complex{2.0 * p.mass * eps / p.kappa, 0.0};
    d.lam_bar = Complex{0.0, 2.0 * p.mass * p.e2} / sqrt_kappa;
    d.nu_bar = ch.parity * ch.nu_bar();
    return d;
}

GeneralizedHeunODE build_ode(const Dimensionless& d) {
    const Complex eb = d.eps_bar, lb = d.lam_bar;
    const double nb = static_cast<double>(d.nu_bar);
    GeneralizedHeunODE ode;
    ode.sigma = ComplexPoly{0.0, 1.0, 0.0, -1.0};
    ode.pi1 = ComplexPoly{1.0, 0.0, -1.0};
    ode.sigma1 = ComplexPoly{lb - eb, -nb, 2.0 * eb - nb * nb, -nb, -(lb + eb)};
    return ode;
}

namespace {

void check_regular_point(Complex z) {
    if (std::abs(z) < 1e-12 || std::abs(z - 1.0) < 1e-12 || std::abs(z + 1.0) < 1e-12)
        throw std::domain_error("ode_residual: z is a singular point of the equation");
}

}  // namespace

Complex ode_residual(const GeneralizedHeunODE& ode, Complex f, Complex df, Complex d2f,
                     Complex z) {
    check_regular_point(z);
    const Complex s = ode.sigma(z);
    return d2f + ode.pi1(z) / s * df + ode.sigma1(z) / (s * s) * f;
}

Complex ode_residual(const GeneralizedHeunODE& ode, const std::function<Complex(Complex)>& f,
                     Complex z) {
    check_regular_point(z);
    // 5-point central differences along the real direction; fine for
    // holomorphic candidates.
    const double h = 1e-3 * std::max(1.0, std::abs(z));
    const Complex fm2 = f(z - 2.0 * h), fm1 = f(z - h), f0 = f(z), fp1 = f(z + h),
                  fp2 = f(z + 2.0 * h);
    const Complex df = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    const Complex d2f = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
    return ode_residual(ode, f0, df, d2f, z);
}

}  // namespace pauliheun
