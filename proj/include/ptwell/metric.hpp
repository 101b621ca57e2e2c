#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "ptwell/dense.hpp"
#include "ptwell/model.hpp"

namespace ptwell {

// Two eigenvalues closer than the degeneracy threshold: at an exceptional
// point the biorthogonal basis (and hence the metric) does not exist.
struct DegeneracyError : std::runtime_error {
    DegeneracyError(const std::string& what, Complex a, Complex b)
        : std::runtime_error(what), pair{a, b} {}
    std::pair<Complex, Complex> pair;
};

// Right eigenvectors |n> as columns, normalized so the bilinear pairing
// v^T v = 1.  The matrix equals its plain transpose, so the left-conjugate
// states are |n>> = conj(|n>) and <<n| = |n>^T; no second eigenproblem.
struct BiorthogonalBasis {
    std::vector<Complex> eigenvalues;
    CMatrix right;  // column n = |n>

    int dim() const { return right.n; }
};

BiorthogonalBasis biorthogonalize(const ScaledHamiltonian& H,
                                  double degeneracy_tol = 1e-8);

// Theta = sum_n |n>> theta_n <<n|, symmetrized to exact Hermiticity; the
// pre-symmetrization defect is written to *defect when requested.
CMatrix build_metric(const BiorthogonalBasis& basis, std::span<const double> weights,
                     double* defect = nullptr);

// ||H^dag Theta - Theta H||_max / ||Theta||_max
double verify_quasi_hermiticity(const ScaledHamiltonian& H, const CMatrix& theta);

// ||H^dag - P H P||_max with P the anti-diagonal flip; exactly zero for
// every model in the family.
double verify_pseudo_hermiticity(const ScaledHamiltonian& H);

// max-norm defects of the biorthogonal resolution of unity and of the
// spectral reconstruction of H.
double completeness_defect(const BiorthogonalBasis& basis);
double reconstruction_defect(const BiorthogonalBasis& basis, const ScaledHamiltonian& H);

} // namespace ptwell
