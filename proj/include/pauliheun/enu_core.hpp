#ifndef PAULIHEUN_ENU_CORE_HPP
#define PAULIHEUN_ENU_CORE_HPP

// Extended Nikiforov-Uvarov engine for the generalized Heun equation of
// the curved-space Pauli-Coulomb problem.
//
// The gauge substitution f = exp(Phi) y with Phi' = pi/sigma turns
//
//   f'' + (pi1/sigma) f' + (sigma1/sigma^2) f = 0
//
// into  sigma y'' + tau y' + h y = 0  with tau = pi1 + 2 pi and h of
// degree at most one, provided
//
//   sigma3 = ((sigma' - pi1)/2)^2 - sigma1 + g sigma
//
// is the square of a quadratic a z^2 + b z + c.  Matching coefficients
// pins (a, b, c, g0, g1) up to discrete choices:
//
//   label 1: a+c =  nu, b =  1      label 3: a+c =  1, b =  nu
//   label 2: a+c = -nu, b = -1      label 4: a+c = -1, b = -nu
//
// plus the root of c^2 = eps - lam and the overall gauge sign.  Labels 3
// and 4 pass the regularity filter Re(B), Re(C) > 0 only for |nu| < 2,
// i.e. outside this problem's channels.  With
//
//   pi = -z^2 -+ (a z^2 + b z + c)
//
// the exponents in f = z^A (z-1)^B (z+1)^C y are A = -+c,
// B = (1 +- (a+b+c))/2, C = (1 +- (a+c-b))/2, and y satisfies the Heun
// equation with gamma = 2A+1, delta = 2B, epsilon = 2C, accessory
// parameter q = h(0) and alpha beta = -[h]_1.
//
// A degree-n polynomial y forces h_n = (n+1) h' + n(n+1)/2 tau''
// + n(n+1)(n-1)/6 sigma''' to vanish, which quantizes
// alpha beta = -n(n+2+2a) and yields eps = lam^2/N^2 + N^2/4 with
// N = 1 + n + |nu|.  That condition is necessary, not sufficient: the
// polynomial coefficients must additionally solve a tridiagonal system
// (see heun_poly.hpp), whose determinant is the obstruction this
// artifact measures.

#include <vector>

#include "pauliheun/geometry.hpp"
#include "pauliheun/polyalg.hpp"
#include "pauliheun/radial_model.hpp"

namespace pauliheun {

enum class SquareLabel { l1 = 1, l2 = 2, l3 = 3, l4 = 4 };
enum class RootSign { minus, plus };   // c = -sqrt(eps-lam) or +sqrt(eps-lam)
enum class GaugeSign { lower, upper }; // sign in pi = -z^2 -+ (a z^2 + b z + c)

struct SquareBranch {
    SquareLabel label;
    RootSign root;
    Complex a, b, c;
    Complex g0, g1;
};

struct BranchChoice {
    SquareLabel label;
    GaugeSign gauge;
    RootSign root;
};

struct EnuReduction {
    SquareBranch branch;
    GaugeSign gauge;
    Complex A, B, C;    // exponents of z, z-1, z+1
    ComplexPoly pi;     // degree 2
    ComplexPoly tau;    // pi1 + 2 pi
    ComplexPoly h;      // degree <= 1
};

struct HeunParams {
    Complex gamma, delta, epsH;
    Complex alpha, beta;
    Complex q;
};

// Solves the perfect-square system for a given label with c fixed by the
// root sign (or given explicitly); verifies all five coefficient
// relations and the square reconstruction of sigma3.
SquareBranch complete_square(const Dimensionless& d, SquareLabel label, RootSign root);
SquareBranch complete_square_with_c(const Dimensionless& d, SquareLabel label, Complex c);

// Reference branch order: nu > 0 pairs with (label 1, lower), nu < 0 with
// (label 2, lower); the alternate flag swaps to the mirrored
// (label 2/1, upper) reduction, which must reproduce the same spectrum.
BranchChoice default_branch_choice(int nu_bar_ode, bool alternate = false);

EnuReduction reduce(const Dimensionless& d);
EnuReduction reduce(const Dimensionless& d, const BranchChoice& choice);
EnuReduction reduce_with_c(const Dimensionless& d, SquareLabel label, GaugeSign gauge, Complex c);

HeunParams heun_params(const EnuReduction& red, const Dimensionless& d);

// h_n computed both directly and through the derivative recurrence; the
// two must agree (internal consistency trap).
ComplexPoly h_n_poly(const EnuReduction& red, int n);

struct QuantizedLevel {
    int n;                 // polynomial degree
    int big_n;             // N = 1 + n + |nu|
    Complex eps_bar;       // lam^2/N^2 + N^2/4
    Complex sqrt_em_lam;   // the root of eps-lam the quantization selects
    int root_sign;         // +1 if that root is the principal one, else -1
};

// Candidate level for degree n; verifies by back-substitution that h_n
// vanishes identically at the returned eps_bar.
QuantizedLevel quantize(Complex lam_bar, int nu_bar_ode, int n);

// Reduction at a quantized level with the branch forced onto the
// quantization-consistent root.  With enforce_admissibility the usual
// regularity filters apply (and may throw NoAdmissibleBranch).
EnuReduction quantized_reduction(Complex lam_bar, int nu_bar_ode, const QuantizedLevel& level,
                                 bool alternate = false, bool enforce_admissibility = true);

// eps(n_bar) = Ry [ -1/n_bar^2 + n_bar^2 kappa a_B^2 ]; well defined for
// kappa = 0 too (plain hydrogen).
double candidate_energy(const PhysParams& p, int n_principal);
// The spinless baseline: the same expression shifted by the geometric
// potential kappa/(2m).
double schrodinger_energy(const PhysParams& p, int n_principal);

enum class LineStatus { accepted, not_single_valued, no_admissible_branch };
const char* status_reason(LineStatus s);

struct SpectrumLine {
    int n;               // would-be polynomial degree
    int big_n;           // N = 2(j+1) + n
    bool single_valued;  // N even
    LineStatus status;
    double eps_over_ry;  // candidate energy in Rydberg units
    bool has_pipeline;   // quantized reduction went through
    Complex exponent_a;  // A at the quantized point (normalizability diagnostic)
    int root_sign;
    bool has_existence;  // obstruction determinant attached (see heun_poly)
    Complex determinant;
    bool polynomial_exists;
};

// One line per n in 1..n_max; rejected lines are kept and carry their
// reason.  Existence fields are left empty here, the obstruction module
// fills them.
std::vector<SpectrumLine> spectrum(const PhysParams& p, const Channel& ch, int n_max,
                                   bool alternate_branch = false);

// Formula limit of the candidate spectrum at kappa = 0 (plain hydrogen
// levels).  No reduction pipeline exists there, so lines carry only the
// evenness filter and the energy.
std::vector<SpectrumLine> spectrum_flat_limit(const PhysParams& p, const Channel& ch, int n_max);

}  // namespace pauliheun

#endif
