#pragma once

#include <array>
#include <complex>

namespace ptwell {

using Complex = std::complex<double>;

namespace cheby {

// 2x2 real matrix, row-major: [m00 m01; m10 m11].
struct Mat2 {
    std::array<double, 4> m{0.0, 0.0, 0.0, 0.0};

    double& operator()(int r, int c) { return m[2 * r + c]; }
    double operator()(int r, int c) const { return m[2 * r + c]; }

    static Mat2 identity() { return Mat2{{1.0, 0.0, 0.0, 1.0}}; }

    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        return Mat2{{a.m[0] * b.m[0] + a.m[1] * b.m[2],
                     a.m[0] * b.m[1] + a.m[1] * b.m[3],
                     a.m[2] * b.m[0] + a.m[3] * b.m[2],
                     a.m[2] * b.m[1] + a.m[3] * b.m[3]}};
    }
    friend Mat2 operator*(double s, const Mat2& a) {
        return Mat2{{s * a.m[0], s * a.m[1], s * a.m[2], s * a.m[3]}};
    }
    friend Mat2 operator-(const Mat2& a, const Mat2& b) {
        return Mat2{{a.m[0] - b.m[0], a.m[1] - b.m[1], a.m[2] - b.m[2], a.m[3] - b.m[3]}};
    }

    // 2x2 real embedding of a complex scalar: re*I + im*J, J = [0 -1; 1 0].
    static Mat2 embed(Complex z) {
        return Mat2{{z.real(), -z.imag(), z.imag(), z.real()}};
    }
};

// Chebyshev polynomials of the second kind, U_0 = 1, U_1(z) = 2z,
// U_{k+1} = 2z U_k - U_{k-1}, for complex argument.
Complex cheb_u(int k, Complex z);

// First kind, T_0 = 1, T_1(z) = z, same recurrence.
Complex cheb_t(int k, Complex z);

// Second kind with a 2x2 real-matrix argument: U_0 = I, U_1(M) = 2M,
// U_{k+1} = 2 M U_k - U_{k-1}.
Mat2 cheb_u_mat(int k, const Mat2& arg);

} // namespace cheby
} // namespace ptwell
