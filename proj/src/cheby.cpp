#include "ptwell/cheby.hpp"

#include <cmath>
#include <stdexcept>

namespace ptwell::cheby {

namespace {

void require_nonneg(int k) {
    if (k < 0) throw std::domain_error("Chebyshev order must be nonnegative");
}

void require_finite(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::domain_error("Chebyshev argument must be finite");
}

// Plain forward recurrence.  Orders stay small here (k <= lattice size),
// where this is exact polynomial arithmetic; no trigonometric branch needed.
Complex recurrence(int k, Complex z, Complex q0, Complex q1) {
    if (k == 0) return q0;
    Complex prev = q0, cur = q1;
    for (int j = 1; j < k; ++j) {
        const Complex next = 2.0 * z * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

} // namespace

Complex cheb_u(int k, Complex z) {
    require_nonneg(k);
    require_finite(z);
    return recurrence(k, z, 1.0, 2.0 * z);
}

Complex cheb_t(int k, Complex z) {
    require_nonneg(k);
    require_finite(z);
    return recurrence(k, z, 1.0, z);
}

Mat2 cheb_u_mat(int k, const Mat2& arg) {
    require_nonneg(k);
    for (double v : arg.m)
        if (!std::isfinite(v)) throw std::domain_error("Chebyshev argument must be finite");
    Mat2 prev = Mat2::identity();
    if (k == 0) return prev;
    Mat2 cur = 2.0 * arg;
    for (int j = 1; j < k; ++j) {
        const Mat2 next = 2.0 * (arg * cur) - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

} // namespace ptwell::cheby
