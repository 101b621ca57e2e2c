#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "ptwell/model.hpp"

namespace ptwell {

// Thrown when the simultaneous root iteration fails to settle; carries the
// best iterate so callers can inspect what went wrong.
struct NumericFailure : std::runtime_error {
    NumericFailure(const std::string& what, std::vector<Complex> iterate)
        : std::runtime_error(what), best(std::move(iterate)) {}
    std::vector<Complex> best;
};

// Thrown by certify_real: a PT-symmetric model must yield a real
// characteristic polynomial, so a violation signals an assembly bug.
struct PtSymmetryBroken : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Polynomial in F with complex coefficients, ascending degree.
class ComplexPolynomial {
public:
    ComplexPolynomial() = default;
    explicit ComplexPolynomial(std::vector<Complex> coeffs);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Complex>& coeffs() const { return c_; }
    Complex coeff(int k) const { return c_[k]; }
    Complex leading() const { return c_.back(); }
    double scale() const;  // max |c_k|

    Complex eval(Complex z) const;

private:
    std::vector<Complex> c_;
};

// det(A - F I) via the leading-principal-minor recurrence
//   D_k = (d_k - F) D_{k-1} - D_{k-2},  D_0 = 1, D_{-1} = 0,
// carried out in polynomial coefficient arithmetic.
ComplexPolynomial char_poly(const ScaledHamiltonian& H);

// Drops imaginary parts once max|Im c_k| <= tol * max(1, scale); throws
// PtSymmetryBroken otherwise.
std::vector<double> certify_real(const ComplexPolynomial& p, double tol = 1e-12);

struct RootSet {
    std::vector<Complex> roots;      // sorted by (Re, Im)
    std::vector<double> residuals;   // |p(root)|
    double classify_tol = 1e-9;

    bool is_real(int i) const;
    std::vector<double> real_roots() const;
    int real_count() const;
};

// All complex roots of a real-coefficient polynomial: exact-zero deflation,
// Aberth-Ehrlich simultaneous iteration, Newton polish, conjugate-pair
// symmetrization.
RootSet poly_roots(const std::vector<double>& coeffs, int max_iter = 200);

// Horner helpers for real-coefficient polynomials.
Complex poly_eval(const std::vector<double>& coeffs, Complex z);
std::vector<double> poly_derivative(const std::vector<double>& coeffs);

namespace detail {

// One point evaluation: value, derivative, and a running bound on the
// floating-point error of the value (scaled consistently with p).
struct EvalPoint {
    Complex p;
    Complex dp;
    double err;
};

using Evaluator = std::function<EvalPoint(Complex)>;

// Aberth-Ehrlich over an arbitrary evaluator.  Seeds sit on a slightly
// rotated circle of the given radius.  A root is frozen once |p| drops to
// its evaluation-noise floor; otherwise iteration stops when the largest
// step falls below 1e-13 (1 + |z|).
std::vector<Complex> aberth(const Evaluator& f, int degree, double radius,
                            int max_iter);

EvalPoint eval_with_bound(const std::vector<double>& coeffs, Complex z);
Evaluator horner_evaluator(const std::vector<double>& coeffs);

// Stable point evaluation of det(A - F I) by the minor recurrence, with
// rescaling against overflow.  Same certified-real polynomial as char_poly,
// free of the monomial-basis conditioning loss at larger N.
Evaluator minor_recurrence_evaluator(const ScaledHamiltonian& H);

double seed_radius(const std::vector<double>& coeffs);

void symmetrize_conjugates(std::vector<Complex>& roots);

} // namespace detail

// Eigenvalues of H as roots of its certified-real characteristic polynomial,
// computed with the minor-recurrence evaluator and polished by Newton.
RootSet hamiltonian_roots(const ScaledHamiltonian& H);

} // namespace ptwell
