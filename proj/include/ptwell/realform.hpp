#pragma once

#include <stdexcept>
#include <vector>

#include "ptwell/cheby.hpp"

namespace ptwell::realform {

// Thrown by verify_matrix_chebyshev when the claimed eigenpoint leaves the
// real system with no (numerical) null vector.
struct InconsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Real pentadiagonal embedding of the even-lattice problem: n+1 two-by-two
// blocks X = [-F -xi; xi -F] chained by -I blocks, bordered by the anomalous
// last row (.. -2 0 -F) and last column (.. -1 0 -F)^T.  Dimension 2n+3.
struct PentadiagonalSystem {
    int n = 0;
    double F = 0;
    double xi = 0;

    int dim() const { return 2 * n + 3; }
    double entry(int i, int j) const;
    std::vector<double> dense() const;  // row-major, for inspection
};

PentadiagonalSystem build_real_system(int n, double F, double xi);

// Determinant by banded LU with partial pivoting (bandwidth 2).
double real_system_determinant(int n, double F, double xi);

// A unit null vector of the system at an eigenpoint, by inverse iteration on
// the banded factorization; throws InconsistencyError when none exists.
std::vector<double> null_vector(const PentadiagonalSystem& sys);

// Builds c_k = U_k(X/2) c_0 from the null vector's leading block and returns
// the largest residual of the partitioned block recurrence, including the
// anomalous last row.
double verify_matrix_chebyshev(int n, double F, double xi);

// Real zeros of the determinant in F, for cross-route comparisons.
std::vector<double> determinant_roots(int n, double xi);

} // namespace ptwell::realform
