#include "pauliheun/polyalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pauliheun {

ComplexPoly::ComplexPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
}

ComplexPoly::ComplexPoly(std::initializer_list<Complex> coeffs) : coeffs_(coeffs) {
    trim();
}

ComplexPoly ComplexPoly::constant(Complex c) {
    return ComplexPoly{std::vector<Complex>{c}};
}

ComplexPoly ComplexPoly::monomial(int degree, Complex coeff) {
    if (degree < 0) throw std::invalid_argument("monomial: negative degree");
    std::vector<Complex> c(degree + 1, Complex{0.0, 0.0});
    c[degree] = coeff;
    return ComplexPoly{std::move(c)};
}

void ComplexPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == Complex{0.0, 0.0}) coeffs_.pop_back();
}

Complex ComplexPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return {0.0, 0.0};
    return coeffs_[k];
}

double ComplexPoly::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Complex ComplexPoly::operator()(Complex z) const {
    Complex acc{0.0, 0.0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

ComplexPoly ComplexPoly::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Complex> d(coeffs_.size() - 1);
    for (size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
    return ComplexPoly{std::move(d)};
}

ComplexPoly& ComplexPoly::operator+=(const ComplexPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Complex{0.0, 0.0});
    for (size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
    trim();
    return *this;
}

ComplexPoly& ComplexPoly::operator-=(const ComplexPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Complex{0.0, 0.0});
    for (size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
    trim();
    return *this;
}

ComplexPoly operator+(ComplexPoly lhs, const ComplexPoly& rhs) {
    lhs += rhs;
    return lhs;
}

ComplexPoly operator-(ComplexPoly lhs, const ComplexPoly& rhs) {
    lhs -= rhs;
    return lhs;
}

ComplexPoly operator*(const ComplexPoly& lhs, const ComplexPoly& rhs) {
    if (lhs.is_zero() || rhs.is_zero()) return {};
    std::vector<Complex> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, Complex{0.0, 0.0});
    for (size_t i = 0; i < lhs.coeffs_.size(); ++i)
        for (size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
    return ComplexPoly{std::move(out)};
}

ComplexPoly operator*(Complex s, ComplexPoly p) {
    for (auto& c : p.coeffs_) c *= s;
    p.trim();
    return p;
}

ComplexPoly ComplexPoly::operator-() const {
    return Complex{-1.0, 0.0} * (*this);
}

namespace {

// Square root with the sign convention arg in (-pi/2, pi/2]; this is
// exactly the range of the principal branch.
Complex principal_sqrt(Complex v) {
    return std::sqrt(v);
}

bool square_matches(const ComplexPoly& s, const ComplexPoly& p) {
    const ComplexPoly diff = s * s - p;
    const double scale = std::max(p.max_abs_coeff(), 1e-300);
    return diff.max_abs_coeff() <= 1e-10 * scale;
}

}  // namespace

std::optional<ComplexPoly> perfect_square_root(const ComplexPoly& p) {
    const int deg = p.degree();
    if (deg < 0) return ComplexPoly{};  // 0 = 0^2
    if (deg > 4 || deg % 2 != 0)
        throw std::invalid_argument("perfect_square_root: degree must be 0, 2 or 4");

    if (deg == 0) return ComplexPoly{principal_sqrt(p.coeff(0))};

    if (deg == 2) {
        const Complex b = principal_sqrt(p.coeff(2));
        const Complex c = p.coeff(1) / (2.0 * b);
        ComplexPoly s{c, b};
        if (square_matches(s, p)) return s;
        return std::nullopt;
    }

    // deg == 4: s = a z^2 + b z + c from the leading coefficients, the
    // remaining ones are verification.  c is recovered through whichever
    // of 2bc = p1 or b^2 + 2ac = p2 is better conditioned.
    const Complex a = principal_sqrt(p.coeff(4));
    const Complex b = p.coeff(3) / (2.0 * a);
    Complex c;
    if (std::abs(b) >= std::abs(a))
        c = p.coeff(1) / (2.0 * b);
    else
        c = (p.coeff(2) - b * b) / (2.0 * a);
    ComplexPoly s{c, b, a};
    if (square_matches(s, p)) return s;
    return std::nullopt;
}

double Tridiag::max_abs() const {
    double m = 0.0;
    for (const auto& v : diag) m = std::max(m, std::abs(v));
    for (const auto& v : sub) m = std::max(m, std::abs(v));
    for (const auto& v : sup) m = std::max(m, std::abs(v));
    return m;
}

void Tridiag::validate() const {
    if (diag.empty()) throw std::invalid_argument("Tridiag: empty diagonal");
    if (sub.size() + 1 != diag.size() || sup.size() + 1 != diag.size())
        throw std::invalid_argument("Tridiag: off-diagonals must have length dim-1");
}

Complex ScaledComplex::value() const {
    return Complex{std::ldexp(mantissa.real(), static_cast<int>(std::clamp(exp2, -4000L, 4000L))),
                   std::ldexp(mantissa.imag(), static_cast<int>(std::clamp(exp2, -4000L, 4000L)))};
}

double ScaledComplex::log10_abs() const {
    if (mantissa == Complex{0.0, 0.0}) return -std::numeric_limits<double>::infinity();
    return std::log10(std::abs(mantissa)) + static_cast<double>(exp2) * std::log10(2.0);
}

ScaledComplex tridiag_det_scaled(const Tridiag& t) {
    t.validate();
    // Three-term determinant recurrence with periodic rescaling by powers
    // of two so the exploratory scans can go far beyond dim ~ 20.
    Complex dm2{1.0, 0.0};  // D_{-1}
    long ex2 = 0;
    Complex dm1 = t.diag[0];  // D_0
    long ex1 = 0;
    for (int m = 1; m < t.dim(); ++m) {
        // Align exponents before combining.
        const long shift = ex2 - ex1;
        Complex prev2 = dm2;
        if (shift != 0) {
            const int s = static_cast<int>(std::clamp(shift, -1000L, 1000L));
            prev2 = Complex{std::ldexp(dm2.real(), s), std::ldexp(dm2.imag(), s)};
        }
        Complex d = t.diag[m] * dm1 - t.sub[m - 1] * t.sup[m - 1] * prev2;
        dm2 = dm1;
        ex2 = ex1;
        dm1 = d;
        const double mag = std::max(std::abs(dm1.real()), std::abs(dm1.imag()));
        if (mag > 1e120 || (mag > 0.0 && mag < 1e-120)) {
            int e = 0;
            std::frexp(mag, &e);
            dm1 = Complex{std::ldexp(dm1.real(), -e), std::ldexp(dm1.imag(), -e)};
            ex1 += e;
        }
    }
    return ScaledComplex{dm1, ex1};
}

Complex tridiag_det(const Tridiag& t) {
    return tridiag_det_scaled(t).value();
}

namespace {

// One inverse-iteration solve against the tridiagonal matrix, LU with
// partial pivoting (upper bandwidth grows to 2).
std::vector<Complex> tridiag_solve_regularized(const Tridiag& t, std::vector<Complex> rhs,
                                               double pivot_floor) {
    const int n = t.dim();
    std::vector<Complex> d(t.diag), u1(n, Complex{0, 0}), u2(n, Complex{0, 0}),
        l(n, Complex{0, 0});
    for (int i = 0; i + 1 < n; ++i) {
        u1[i] = t.sup[i];
        l[i + 1] = t.sub[i];
    }
    for (int i = 0; i + 1 < n; ++i) {
        if (std::abs(l[i + 1]) > std::abs(d[i])) {
            std::swap(d[i], l[i + 1]);
            std::swap(u1[i], d[i + 1]);
            if (i + 2 < n) std::swap(u2[i], u1[i + 1]);
            std::swap(rhs[i], rhs[i + 1]);
        }
        Complex piv = d[i];
        if (std::abs(piv) < pivot_floor) piv = Complex{pivot_floor, 0.0};
        const Complex f = l[i + 1] / piv;
        d[i + 1] -= f * u1[i];
        if (i + 2 < n) u1[i + 1] -= f * u2[i];
        rhs[i + 1] -= f * rhs[i];
        d[i] = piv;
    }
    if (std::abs(d[n - 1]) < pivot_floor) d[n - 1] = Complex{pivot_floor, 0.0};
    std::vector<Complex> x(n);
    for (int i = n - 1; i >= 0; --i) {
        Complex acc = rhs[i];
        if (i + 1 < n) acc -= u1[i] * x[i + 1];
        if (i + 2 < n) acc -= u2[i] * x[i + 2];
        x[i] = acc / d[i];
    }
    return x;
}

double inf_norm(const std::vector<Complex>& v) {
    double m = 0.0;
    for (const auto& c : v) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace

std::optional<std::vector<Complex>> tridiag_null_vector(const Tridiag& t, double tol) {
    t.validate();
    const int n = t.dim();
    const double scale = t.max_abs();

    if (scale == 0.0) {
        std::vector<Complex> v(n, Complex{0, 0});
        v[0] = 1.0;
        return v;
    }

    // Scale-aware singularity gate: |det| against tol * max|entry|^dim.
    const ScaledComplex det = tridiag_det_scaled(t);
    const double log_gate = std::log10(tol) + n * std::log10(scale);
    if (det.log10_abs() > log_gate) return std::nullopt;

    // Inverse iteration from a fixed start vector.
    const double pivot_floor = scale * 1e-14 * n;
    std::vector<Complex> v(n, Complex{1.0, 0.0});
    for (auto& c : v) c /= std::sqrt(static_cast<double>(n));
    for (int iter = 0; iter < 6; ++iter) {
        v = tridiag_solve_regularized(t, v, pivot_floor);
        const double nrm = inf_norm(v);
        if (nrm == 0.0) break;
        for (auto& c : v) c /= nrm;
    }

    // Normalize so the largest-magnitude entry is exactly 1.
    int imax = 0;
    for (int i = 1; i < n; ++i)
        if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
    const Complex pivot = v[imax];
    if (pivot == Complex{0.0, 0.0}) return std::nullopt;
    for (auto& c : v) c /= pivot;

    // Residual check ||T v|| <= 1e-8 * ||t|| * ||v||.
    std::vector<Complex> r(n, Complex{0, 0});
    for (int i = 0; i < n; ++i) {
        Complex acc = t.diag[i] * v[i];
        if (i > 0) acc += t.sub[i - 1] * v[i - 1];
        if (i + 1 < n) acc += t.sup[i] * v[i + 1];
        r[i] = acc;
    }
    if (inf_norm(r) > 1e-8 * scale * inf_norm(v)) return std::nullopt;
    return v;
}

}  // namespace pauliheun
