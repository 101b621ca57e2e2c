#pragma once

#include <vector>

#include "ptwell/model.hpp"

namespace ptwell {

// Minimal dense complex matrix, row-major; enough for the metric machinery.
struct CMatrix {
    int n = 0;
    std::vector<Complex> a;

    CMatrix() = default;
    explicit CMatrix(int dim) : n(dim), a(static_cast<size_t>(dim) * dim, Complex(0.0)) {}

    Complex& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    Complex at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    static CMatrix identity(int dim);

    CMatrix adjoint() const;
    double max_abs() const;

    friend CMatrix operator*(const CMatrix& x, const CMatrix& y);
    friend CMatrix operator-(const CMatrix& x, const CMatrix& y);
};

CMatrix dense(const ScaledHamiltonian& H);

// Attempted LL^H factorization; true iff the Hermitian matrix is positive
// definite (all pivots strictly positive).
bool positive_definite(const CMatrix& hermitian);

} // namespace ptwell
