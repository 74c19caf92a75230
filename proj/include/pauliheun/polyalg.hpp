#ifndef PAULIHEUN_POLYALG_HPP
#define PAULIHEUN_POLYALG_HPP

// Dense univariate polynomials over the complex numbers and the small
// amount of tridiagonal linear algebra the reduction pipeline needs.

#include <complex>
#include <optional>
#include <vector>

namespace pauliheun {

using Complex = std::complex<double>;

class ComplexPoly {
  public:
    ComplexPoly() = default;  // zero polynomial
    explicit ComplexPoly(std::vector<Complex> coeffs);
    ComplexPoly(std::initializer_list<Complex> coeffs);

    static ComplexPoly constant(Complex c);
    static ComplexPoly monomial(int degree, Complex coeff = 1.0);

    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    // Coefficient of z^k; zero beyond the degree.
    Complex coeff(int k) const;
    const std::vector<Complex>& coeffs() const { return coeffs_; }
    double max_abs_coeff() const;

    Complex operator()(Complex z) const;  // Horner
    ComplexPoly derivative() const;

    ComplexPoly& operator+=(const ComplexPoly& rhs);
    ComplexPoly& operator-=(const ComplexPoly& rhs);
    friend ComplexPoly operator+(ComplexPoly lhs, const ComplexPoly& rhs);
    friend ComplexPoly operator-(ComplexPoly lhs, const ComplexPoly& rhs);
    friend ComplexPoly operator*(const ComplexPoly& lhs, const ComplexPoly& rhs);
    friend ComplexPoly operator*(Complex s, ComplexPoly p);
    friend ComplexPoly operator*(ComplexPoly p, Complex s) { return s * std::move(p); }
    ComplexPoly operator-() const;

  private:
    void trim();
    std::vector<Complex> coeffs_;  // index = degree, trailing zeros trimmed
};

// Decides whether p (degree 0, 2 or 4) is the square of a polynomial and
// returns that root with the leading coefficient's argument in
// (-pi/2, pi/2].  Works by coefficient matching, so no root finding is
// involved.  Odd-degree or degree > 4 input is a contract violation.
std::optional<ComplexPoly> perfect_square_root(const ComplexPoly& p);

// Tridiagonal matrix with rows
//   b_0 c_1
//   a_1 b_1 c_2
//       ...
struct Tridiag {
    std::vector<Complex> sub;   // a_1 .. a_n
    std::vector<Complex> diag;  // b_0 .. b_n
    std::vector<Complex> sup;   // c_1 .. c_n

    int dim() const { return static_cast<int>(diag.size()); }
    double max_abs() const;
    void validate() const;
};

// Determinant kept as mantissa * 2^exp2 so long recurrences cannot
// overflow; value() collapses it back to a double (possibly inf).
struct ScaledComplex {
    Complex mantissa{0.0, 0.0};
    long exp2 = 0;

    Complex value() const;
    double log10_abs() const;
};

// D_m = b_m D_{m-1} - a_m c_m D_{m-2}, D_{-1} = 1, D_0 = b_0.
Complex tridiag_det(const Tridiag& t);
ScaledComplex tridiag_det_scaled(const Tridiag& t);

// Null vector of a (near-)singular tridiagonal matrix, normalized so the
// largest-magnitude entry equals 1.  Returns nothing when the determinant
// is not small against the scale-aware threshold tol * max|entry|^dim;
// for this problem family that is the expected outcome.
std::optional<std::vector<Complex>> tridiag_null_vector(const Tridiag& t, double tol);

}  // namespace pauliheun

#endif
