#include "ptwell/dense.hpp"

#include <cmath>

namespace ptwell {

CMatrix CMatrix::identity(int dim) {
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = std::conj(at(j, i));
    return m;
}

double CMatrix::max_abs() const {
    double s = 0.0;
    for (const auto& v : a) s = std::max(s, std::abs(v));
    return s;
}

CMatrix operator*(const CMatrix& x, const CMatrix& y) {
    CMatrix m(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k) {
            const Complex xv = x.at(i, k);
            if (xv == Complex(0.0)) continue;
            for (int j = 0; j < x.n; ++j) m.at(i, j) += xv * y.at(k, j);
        }
    return m;
}

CMatrix operator-(const CMatrix& x, const CMatrix& y) {
    CMatrix m(x.n);
    for (size_t i = 0; i < m.a.size(); ++i) m.a[i] = x.a[i] - y.a[i];
    return m;
}

CMatrix dense(const ScaledHamiltonian& H) {
    const int m = H.dim();
    CMatrix A(m);
    for (int i = 0; i < m; ++i) {
        A.at(i, i) = H.diag[i];
        if (i + 1 < m) {
            A.at(i, i + 1) = -1.0;
            A.at(i + 1, i) = -1.0;
        }
    }
    return A;
}

bool positive_definite(const CMatrix& hermitian) {
    const int n = hermitian.n;
    CMatrix L(n);
    for (int j = 0; j < n; ++j) {
        Complex sum = hermitian.at(j, j);
        for (int k = 0; k < j; ++k) sum -= L.at(j, k) * std::conj(L.at(j, k));
        const double pivot = sum.real();
        if (!(pivot > 0.0) || std::abs(sum.imag()) > 1e-10 * std::max(1.0, pivot))
            return false;
        const double d = std::sqrt(pivot);
        L.at(j, j) = d;
        for (int i = j + 1; i < n; ++i) {
            Complex s = hermitian.at(i, j);
            for (int k = 0; k < j; ++k) s -= L.at(i, k) * std::conj(L.at(j, k));
            L.at(i, j) = s / d;
        }
    }
    return true;
}

} // namespace ptwell
