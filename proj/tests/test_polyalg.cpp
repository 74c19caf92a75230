#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "pauliheun/polyalg.hpp"
#include "test_util.hpp"

using namespace pauliheun;
using testutil::poly_close;
using testutil::random_disk;

namespace {

// Independent determinant oracle: recursive cofactor expansion on the
// dense matrix.
Complex dense_det(const std::vector<std::vector<Complex>>& m) {
    const size_t n = m.size();
    if (n == 1) return m[0][0];
    Complex acc{0.0, 0.0};
    double sign = 1.0;
    for (size_t j = 0; j < n; ++j) {
        std::vector<std::vector<Complex>> minor(n - 1, std::vector<Complex>(n - 1));
        for (size_t r = 1; r < n; ++r) {
            size_t cc = 0;
            for (size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor[r - 1][cc++] = m[r][c];
            }
        }
        acc += sign * m[0][j] * dense_det(minor);
        sign = -sign;
    }
    return acc;
}

std::vector<std::vector<Complex>> to_dense(const Tridiag& t) {
    const int n = t.dim();
    std::vector<std::vector<Complex>> dense(n, std::vector<Complex>(n, Complex{0, 0}));
    for (int i = 0; i < n; ++i) {
        dense[i][i] = t.diag[i];
        if (i > 0) dense[i][i - 1] = t.sub[i - 1];
        if (i + 1 < n) dense[i][i + 1] = t.sup[i];
    }
    return dense;
}

}  // namespace

TEST_CASE("basic arithmetic") {
    const ComplexPoly p{0.0, -1.0, 0.0, 1.0};  // z^3 - z
    CHECK(poly_close(p.derivative(), ComplexPoly{-1.0, 0.0, 3.0}, 1e-15));

    const ComplexPoly zm1{-1.0, 1.0}, zp1{1.0, 1.0};
    CHECK(poly_close(zm1 * zp1, ComplexPoly{-1.0, 0.0, 1.0}, 1e-15));

    // z^4 + i z at z = i: i^4 + i*i = 0
    const ComplexPoly q{0.0, Complex{0.0, 1.0}, 0.0, 0.0, 1.0};
    CHECK(std::abs(q(Complex{0.0, 1.0})) < 1e-15);
}

TEST_CASE("degree bookkeeping") {
    CHECK(ComplexPoly{}.degree() == -1);
    CHECK(ComplexPoly{1.0, 0.0, 0.0}.degree() == 0);  // trailing zeros trimmed
    CHECK(ComplexPoly::monomial(3).degree() == 3);
    const ComplexPoly c = ComplexPoly::constant(2.0);
    CHECK(c.derivative().is_zero());
    CHECK(c.derivative().degree() == -1);
    // derivative drops the degree by exactly one for nonconstant input
    for (int d = 1; d <= 6; ++d) CHECK(ComplexPoly::monomial(d).derivative().degree() == d - 1);
}

TEST_CASE("ring axioms by randomized evaluation") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Complex> ca(4), cb(3), cc(5);
        for (auto& v : ca) v = random_disk(rng, 2.0);
        for (auto& v : cb) v = random_disk(rng, 2.0);
        for (auto& v : cc) v = random_disk(rng, 2.0);
        const ComplexPoly a{ca}, b{cb}, c{cc};
        for (int k = 0; k < 8; ++k) {
            const Complex z = random_disk(rng, 1.5);
            CHECK(testutil::close(((a * b) * c)(z), (a * (b * c))(z), 1e-10, 1.0));
            CHECK(testutil::close(((a + b) * c)(z), (a * c + b * c)(z), 1e-10, 1.0));
            CHECK(testutil::close((a * b)(z), (b * a)(z), 1e-12, 1.0));
        }
    }
}

TEST_CASE("perfect squares: worked examples") {
    // (z^2 + 1)^2
    const auto r1 = perfect_square_root(ComplexPoly{1.0, 0.0, 2.0, 0.0, 1.0});
    REQUIRE(r1.has_value());
    CHECK(poly_close(*r1, ComplexPoly{1.0, 0.0, 1.0}, 1e-12));

    // (4z^2 + z + 1)^2 = 16z^4 + 8z^3 + 9z^2 + 2z + 1
    const auto r2 = perfect_square_root(ComplexPoly{1.0, 2.0, 9.0, 8.0, 16.0});
    REQUIRE(r2.has_value());
    CHECK(poly_close(*r2, ComplexPoly{1.0, 1.0, 4.0}, 1e-12));

    // z^4 + 1 is not a square
    CHECK_FALSE(perfect_square_root(ComplexPoly{1.0, 0.0, 0.0, 0.0, 1.0}).has_value());

    CHECK_THROWS_AS(perfect_square_root(ComplexPoly{1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(perfect_square_root(ComplexPoly{0.0, 1.0, 0.0, 2.0}), std::invalid_argument);
}

TEST_CASE("perfect squares: random round trip with sign convention") {
    std::mt19937 rng(7);
    int done = 0;
    while (done < 1000) {
        std::vector<Complex> cs(3);
        for (auto& v : cs) v = random_disk(rng, 1.0);
        const ComplexPoly s{cs};
        if (s.is_zero()) continue;
        ++done;
        const auto root = perfect_square_root(s * s);
        REQUIRE(root.has_value());
        ComplexPoly expect = s;
        const Complex lead = s.coeff(s.degree());
        if (!(std::arg(lead) > -M_PI_2 && std::arg(lead) <= M_PI_2)) expect = -expect;
        CHECK(poly_close(*root, expect, 1e-8));
        // returned root's leading argument obeys the convention
        const Complex rl = root->coeff(root->degree());
        CHECK(std::arg(rl) > -M_PI_2 - 1e-12);
        CHECK(std::arg(rl) <= M_PI_2 + 1e-12);
    }
}

TEST_CASE("tridiagonal determinants: worked examples") {
    CHECK(tridiag_det(Tridiag{{}, {Complex{-7.0, 0.0}}, {}}) == Complex{-7.0, 0.0});

    const Tridiag t2{{11.0}, {-7.0, -9.0}, {5.0}};
    CHECK(std::abs(tridiag_det(t2) - Complex{8.0, 0.0}) < 1e-12);

    const Tridiag id3{{0.0, 0.0}, {1.0, 1.0, 1.0}, {0.0, 0.0}};
    CHECK(std::abs(tridiag_det(id3) - Complex{1.0, 0.0}) < 1e-15);

    Tridiag bad{{1.0}, {1.0}, {}};
    CHECK_THROWS_AS(tridiag_det(bad), std::invalid_argument);
}

TEST_CASE("tridiagonal determinant vs dense cofactor oracle") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> dims(1, 6);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = dims(rng);
        Tridiag t;
        t.diag.resize(n);
        t.sub.resize(n - 1);
        t.sup.resize(n - 1);
        for (auto& v : t.diag) v = random_disk(rng, 3.0);
        for (auto& v : t.sub) v = random_disk(rng, 3.0);
        for (auto& v : t.sup) v = random_disk(rng, 3.0);
        const Complex slow = dense_det(to_dense(t));
        CHECK(testutil::close(tridiag_det(t), slow, 1e-10, 1.0));
    }
}

TEST_CASE("scaled determinant stays representable") {
    // diagonal matrix with 31 entries of 1e20: |det| = 1e620, far past double range
    const int n = 31;
    Tridiag t;
    t.diag.assign(n, Complex{1e20, 0.0});
    t.sub.assign(n - 1, Complex{0.0, 0.0});
    t.sup.assign(n - 1, Complex{0.0, 0.0});
    const ScaledComplex det = tridiag_det_scaled(t);
    CHECK(det.log10_abs() == doctest::Approx(620.0).epsilon(1e-12));
}

TEST_CASE("null vectors") {
    // zero matrix: any unit vector works; convention picks the first slot
    const Tridiag z2{{0.0}, {0.0, 0.0}, {0.0}};
    const auto v0 = tridiag_null_vector(z2, 1e-10);
    REQUIRE(v0.has_value());
    CHECK(std::abs((*v0)[0] - Complex{1.0, 0.0}) < 1e-12);

    // [[1,-1],[1,-1]] has null vector (1,1)
    const Tridiag s2{{1.0}, {1.0, -1.0}, {-1.0}};
    const auto v1 = tridiag_null_vector(s2, 1e-10);
    REQUIRE(v1.has_value());
    CHECK(std::abs((*v1)[0] - (*v1)[1]) < 1e-10);
    double maxmag = 0.0;
    for (const auto& c : *v1) maxmag = std::max(maxmag, std::abs(c));
    CHECK(maxmag == doctest::Approx(1.0).epsilon(1e-12));

    // the nonzero obstruction instance has no null vector
    const Tridiag t2{{11.0}, {-7.0, -9.0}, {5.0}};
    CHECK_FALSE(tridiag_null_vector(t2, 1e-10).has_value());
}

TEST_CASE("null vector residual on a random singular system") {
    std::mt19937 rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        // build a 4x4 tridiagonal singular by construction: pick sub/sup
        // and three diagonal entries, then choose the last diagonal entry
        // so the determinant recurrence lands on zero.
        Tridiag t;
        t.diag.assign(4, Complex{0, 0});
        t.sub.assign(3, Complex{0, 0});
        t.sup.assign(3, Complex{0, 0});
        for (auto& v : t.sub) v = random_disk(rng, 2.0);
        for (auto& v : t.sup) v = random_disk(rng, 2.0);
        for (int i = 0; i < 3; ++i) t.diag[i] = random_disk(rng, 2.0) + Complex{2.5, 0.0};
        // D3 = d3 D2 - a3 c3 D1 = 0  =>  d3 = a3 c3 D1 / D2
        const Complex d0 = t.diag[0];
        const Complex d1 = t.diag[1] * d0 - t.sub[0] * t.sup[0];
        const Complex d2 = t.diag[2] * d1 - t.sub[1] * t.sup[1] * d0;
        if (std::abs(d2) < 0.3) continue;
        t.diag[3] = t.sub[2] * t.sup[2] * d1 / d2;
        const auto v = tridiag_null_vector(t, 1e-8);
        REQUIRE(v.has_value());
        // residual within the documented bound
        for (int i = 0; i < 4; ++i) {
            Complex acc = t.diag[i] * (*v)[i];
            if (i > 0) acc += t.sub[i - 1] * (*v)[i - 1];
            if (i < 3) acc += t.sup[i] * (*v)[i + 1];
            CHECK(std::abs(acc) <= 1e-8 * t.max_abs());
        }
    }
}
