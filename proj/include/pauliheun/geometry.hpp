#ifndef PAULIHEUN_GEOMETRY_HPP
#define PAULIHEUN_GEOMETRY_HPP

// Generalized trigonometric functions S_k, C_k, T_k interpolating
// sin/sinh, cos/cosh, tan/tanh across the curvature sign, plus the
// curved-space Coulomb potential and the effective radial potential
// of the two-component (Pauli) reduction.
//
// Natural units hbar = c = 1 throughout: kappa is 1/length^2, mass is
// 1/length, e2 is dimensionless, energies are 1/length.

namespace pauliheun {

struct PhysParams {
    double kappa;  // curvature; > 0 spherical, < 0 hyperbolic, 0 flat
    double mass;   // m > 0
    double e2;     // coupling e^2 > 0
    double a_b;    // Bohr radius 1/(m e^2)
    double ry;     // Rydberg m e^4 / 2

    static PhysParams make(double kappa, double mass, double e2);
    // CLI units: m = e2 = 1, so a_b = 1, ry = 1/2 and kappa = kappa*a_b^2.
    static PhysParams from_kappa_ab2(double kappa_ab2);

    double kappa_ab2() const { return kappa * a_b * a_b; }
};

// One (j, parity) channel; 2j is stored as an integer so half-integer
// bookkeeping stays exact.
struct Channel {
    int two_j;   // odd, >= 1
    int parity;  // +1 or -1

    static Channel make(int two_j, int parity);

    double nu() const { return 0.5 * (two_j + 1); }  // j + 1/2
    int nu_bar() const { return two_j + 1; }         // 2j + 1
    // Small-r centrifugal index: nu(nu + parity) = l(l+1).
    int l_eff() const { return parity > 0 ? (two_j + 1) / 2 : (two_j - 1) / 2; }
};

// S_k(r): sin(sqrt(k) r)/sqrt(k), sinh(sqrt(|k|) r)/sqrt(|k|), or r.
double s_kappa(double kappa, double r);
// C_k(r): cos(sqrt(k) r), cosh(sqrt(|k|) r), or 1.
double c_kappa(double kappa, double r);
// T_k = S_k / C_k; poles at the equator of the sphere.
double t_kappa(double kappa, double r);

// Chart length pi/sqrt(kappa) for kappa > 0, infinity otherwise.
double chart_limit(double kappa);

// e A_0 = -e^2 / T_k(r).
double coulomb_energy(const PhysParams& p, double r);

// W(r) = nu [nu + parity C_k(r)] / S_k^2(r) - 2 m e^2 / T_k(r), so the
// radial equation reads  -f'' + W f = 2 m eps f.
double effective_potential(const PhysParams& p, const Channel& ch, double r);

}  // namespace pauliheun

#endif
