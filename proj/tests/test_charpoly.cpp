#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ptwell/charpoly.hpp"

using namespace ptwell;

namespace {

ModelSpec q0(int N) { return {N, 0, {}}; }
ModelSpec q1(int N, int p, int q) { return {N, 1, {Rational(p, q)}}; }

double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
    REQUIRE(a.size() == b.size());
    const auto less = [](Complex x, Complex y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    };
    std::sort(a.begin(), a.end(), less);
    std::sort(b.begin(), b.end(), less);
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

} // namespace

TEST_CASE("characteristic polynomial of the N=4 well") {
    for (double xi : {0.0, 0.7, 1.4}) {
        const auto p = char_poly(q0(4).hamiltonian(xi));
        REQUIRE(p.degree() == 3);
        // -F^3 + (2 - xi^2) F, derived by expanding the 3x3 determinant
        CHECK(std::abs(p.coeff(0)) <= 1e-14);
        CHECK(std::abs(p.coeff(1) - (2.0 - xi * xi)) <= 1e-14);
        CHECK(std::abs(p.coeff(2)) <= 1e-14);
        CHECK(std::abs(p.coeff(3) - (-1.0)) <= 1e-14);
    }
}

TEST_CASE("printed degree-7 determinants for the two shifted wells") {
    for (double xi : {0.3, 0.9, 1.6}) {
        const double x2 = xi * xi, x4 = x2 * x2;
        const auto pa = certify_real(char_poly(q1(8, 5, 8).hamiltonian(xi)));
        const std::vector<double> ra = {0.0, -3 * x2 + 4, 0.0, 4 * x2 - 10,
                                        0.0, -(x2 - 6),   0.0, -1.0};
        const auto pb = certify_real(char_poly(q1(8, 3, 8).hamiltonian(xi)));
        const std::vector<double> rb = {0.0, 2 * x4 + x2 + 4, 0.0, -x4 + 4 * x2 - 10,
                                        0.0, -(2 * x2 - 6),   0.0, -1.0};
        for (int k = 0; k < 8; ++k) {
            CHECK(std::abs(pa[k] - ra[k]) <= 1e-10 * std::max(1.0, std::abs(ra[k])));
            CHECK(std::abs(pb[k] - rb[k]) <= 1e-10 * std::max(1.0, std::abs(rb[k])));
        }
    }
}

TEST_CASE("golden coefficients discriminate between the shifted wells") {
    // negative control: feeding the ell=5/8 matrix into the ell=3/8 reference
    // polynomial must be caught
    const double xi = 0.9, x2 = xi * xi, x4 = x2 * x2;
    const auto p58 = certify_real(char_poly(q1(8, 5, 8).hamiltonian(xi)));
    const std::vector<double> ref38 = {0.0, 2 * x4 + x2 + 4, 0.0, -x4 + 4 * x2 - 10,
                                       0.0, -(2 * x2 - 6),   0.0, -1.0};
    double worst = 0.0;
    for (int k = 0; k < 8; ++k)
        worst = std::max(worst, std::abs(p58[k] - ref38[k]) / std::max(1.0, std::abs(ref38[k])));
    CHECK(worst > 1e-3);
}

TEST_CASE("certify_real accepts PT models and rejects a constructed violation") {
    const auto p = char_poly(q1(8, 3, 8).hamiltonian(0.8));
    CHECK_NOTHROW(certify_real(p));
    const ComplexPolynomial bad({Complex(1.0, 0.0), Complex(0.0, 1.0)});  // 1 + iF
    CHECK_THROWS_AS(certify_real(bad), PtSymmetryBroken);
}

TEST_CASE("roots of the cubic well polynomial at xi = 1") {
    // -F(F^2 + xi^2 - 2) with xi = 1: zeros at 0, +-1
    const auto rs = poly_roots({0.0, 1.0, 0.0, -1.0});
    REQUIRE(rs.roots.size() == 3);
    CHECK(multiset_distance(rs.roots, {Complex(-1.0), Complex(0.0), Complex(1.0)}) <= 1e-12);
    CHECK(rs.real_count() == 3);
}

TEST_CASE("roots of the ell=5/8 determinant in the Hermitian limit") {
    const auto p = certify_real(char_poly(q1(8, 5, 8).hamiltonian(0.0)));
    const auto rs = poly_roots(p);
    const double s2 = std::sqrt(2.0);
    const std::vector<Complex> want = {
        Complex(-std::sqrt(2.0 + s2)), Complex(-s2), Complex(-std::sqrt(2.0 - s2)),
        Complex(0.0),
        Complex(std::sqrt(2.0 - s2)),  Complex(s2),  Complex(std::sqrt(2.0 + s2))};
    CHECK(multiset_distance(rs.roots, want) <= 1e-10);
}

TEST_CASE("degree-1 polynomial") {
    const auto rs = poly_roots({3.0, -2.0});
    REQUIRE(rs.roots.size() == 1);
    CHECK(std::abs(rs.roots[0] - Complex(1.5)) <= 1e-14);
}

TEST_CASE("root residuals stay below the polish tolerance") {
    for (double xi : {0.2, 0.9}) {
        const auto p = certify_real(char_poly(q0(12).hamiltonian(xi)));
        double scale = 0.0;
        for (double c : p) scale = std::max(scale, std::abs(c));
        const auto rs = poly_roots(p);
        for (double r : rs.residuals) CHECK(r <= 1e-10 * scale);
    }
}

TEST_CASE("exact zero root is deflated") {
    // F * (F^2 + 1): constant coefficient exactly zero
    const auto rs = poly_roots({0.0, 1.0, 0.0, 1.0});
    int zeros = 0;
    for (const auto& r : rs.roots)
        if (r == Complex(0.0)) ++zeros;
    CHECK(zeros == 1);
    CHECK(rs.real_count() == 1);
}

TEST_CASE("conjugate pairs are symmetrized") {
    // (F^2 + 4)(F - 1): roots 1, +-2i
    const auto rs = poly_roots({-4.0, 4.0, -1.0, 1.0});
    REQUIRE(rs.roots.size() == 3);
    Complex plus;
    int complex_count = 0;
    for (const auto& r : rs.roots)
        if (!rs.is_real(&r - rs.roots.data())) {
            ++complex_count;
            if (r.imag() > 0) plus = r;
        }
    CHECK(complex_count == 2);
    bool paired = false;
    for (const auto& r : rs.roots)
        if (r == std::conj(plus) && r != plus) paired = true;
    CHECK(paired);
}

TEST_CASE("non-convergence carries the best iterate") {
    // (F-1)^6 with a single iteration allowed
    CHECK_THROWS_AS(poly_roots({1.0, -6.0, 15.0, -20.0, 15.0, -6.0, 1.0}, 1),
                    NumericFailure);
    try {
        poly_roots({1.0, -6.0, 15.0, -20.0, 15.0, -6.0, 1.0}, 1);
    } catch (const NumericFailure& e) {
        CHECK(e.best.size() == 6);
    }
}

TEST_CASE("invalid polynomials are rejected") {
    CHECK_THROWS_AS(poly_roots({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(poly_roots({1.0, 2.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(ComplexPolynomial(std::vector<Complex>{}), std::invalid_argument);
}

TEST_CASE("Hermitian-limit roots match the Dirichlet chain closed form") {
    for (int N : {5, 8, 12}) {
        const auto rs = hamiltonian_roots(q0(N).hamiltonian(0.0));
        std::vector<Complex> want;
        for (int k = 1; k < N; ++k)
            want.emplace_back(-2.0 * std::cos(k * std::acos(-1.0) / N), 0.0);
        CHECK(multiset_distance(rs.roots, want) <= 1e-10);
    }
}

TEST_CASE("recurrence-backed roots agree with the coefficient route") {
    for (int N : {6, 11, 20}) {
        for (double xi : {0.15, 0.45}) {
            const auto H = q0(N).hamiltonian(xi);
            const auto a = hamiltonian_roots(H);
            const auto b = poly_roots(certify_real(char_poly(H)));
            CHECK(multiset_distance(a.roots, b.roots) <= 1e-9);
        }
    }
}

TEST_CASE("spectrum symmetries on sample models") {
    for (const auto& spec : {q0(9), q1(10, 1, 2), q1(14, 2, 5)}) {
        for (double xi : {0.4, 1.3}) {
            const auto rs = hamiltonian_roots(spec.hamiltonian(xi));
            for (const auto& f : rs.roots) {
                double dc = 1e9, df = 1e9;
                for (const auto& g : rs.roots) {
                    dc = std::min(dc, std::abs(std::conj(f) - g));
                    df = std::min(df, std::abs(f + g));
                }
                CHECK(dc <= 1e-9);
                CHECK(df <= 1e-9);
            }
        }
    }
}
