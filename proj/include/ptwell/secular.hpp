#pragma once

#include <span>
#include <vector>

#include "ptwell/cheby.hpp"

namespace ptwell::secular {

// Which lattice family a matching system describes: even N = 2n+4 has a
// central site (dimension 2n+3), odd N = 2n+3 has none (dimension 2n+2).
enum class Parity { even_lattice, odd_lattice };

int lattice_points(Parity parity, int n);  // the N realizing block size n

struct Mat2x2 {
    double m00 = 0, m01 = 0, m10 = 0, m11 = 0;
    double det() const { return m00 * m11 - m01 * m10; }
};

// The two real homogeneous conditions on the normalization (a, b), assembled
// from the closed-form Chebyshev eigenvector ansatz at the junction sites.
Mat2x2 matching_matrix_even(int n, double F, double xi);
Mat2x2 matching_matrix_odd(int n, double F, double xi);

// Determinants of the above; zeros in F are the (real) eigenvalues.
double matching_det_even(int n, double F, double xi);
double matching_det_odd(int n, double F, double xi);

// Unit null vector (a, b) of a (rank-deficient) matching matrix as c = a+ib,
// normalized a^2+b^2 = 1, a >= 0 (tie: b > 0).
Complex matching_normalization(const Mat2x2& m);

// Full eigenvector in the order of the tridiagonal problem:
// even lattice: (alpha_0..alpha_n, gamma, conj alpha_n..conj alpha_0),
// odd lattice:  (alpha_0..alpha_n, conj alpha_n..conj alpha_0),
// with alpha_k = c U_k((-F+i xi)/2).
std::vector<Complex> eigenvector(Parity parity, int n, Complex F, double xi, Complex c);

// Literal evaluation of the printed combined secular forms; kept as
// diagnostics only (the even form provably diverges from the matching
// determinant already at n = 0 under the standard Chebyshev convention).
Complex secular_printed_even(int n, double F, double xi);
Complex secular_printed_odd(int n, double F, double xi);

// Re-parametrization (-F + i xi)/2 = cos(alpha + i beta), branch beta <= 0,
// alpha in (0, pi).
struct TrigPoint {
    double alpha = 0;
    double beta = 0;
};

TrigPoint trig_map(double F, double xi);
std::pair<double, double> trig_forward(const TrigPoint& p);  // -> (F, xi)

// Re[ sin((n+1)phi) cos((n+1)conj phi) / sin phi ]; diagnostic evaluator of
// the printed trigonometric secular form.  Throws at sin phi = 0.
double trig_residual(int n, const TrigPoint& p);

enum class CheckStatus { holds, fails, not_applicable };

// F = 0 solves the even-lattice matching system identically at any coupling.
CheckStatus robust_level_check(int n, Parity parity, std::span<const double> xis);

// All real zeros of the matching determinant over F in [-2-|xi|, 2+|xi|]:
// sign-change scan on a 20(n+2)-point grid, bisection to 1e-12, plus
// tangential (double) zeros recovered by |det| minimization.
std::vector<double> matching_roots(Parity parity, int n, double xi);

} // namespace ptwell::secular
