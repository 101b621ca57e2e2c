#include "ptwell/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ptwell/charpoly.hpp"

namespace ptwell {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// LU of (A - lambda I) for the tridiagonal A (offdiagonals -1), with partial
// pivoting; fill-in creates a second superdiagonal.
struct TriLU {
    std::vector<Complex> dl, d, du, du2;
    std::vector<int> piv;  // piv[i] != i means rows i, i+1 swapped
};

TriLU factor_shifted(const ScaledHamiltonian& H, Complex lambda) {
    const int n = H.dim();
    TriLU lu;
    lu.dl.assign(std::max(0, n - 1), Complex(-1.0));
    lu.du.assign(std::max(0, n - 1), Complex(-1.0));
    lu.du2.assign(std::max(0, n - 2), Complex(0.0));
    lu.d.resize(n);
    lu.piv.resize(std::max(0, n - 1));
    for (int i = 0; i < n; ++i) lu.d[i] = H.diag[i] - lambda;

    const double tiny = kEps * (2.0 + std::abs(lambda) + 2.0);
    for (int i = 0; i < n - 1; ++i) {
        if (std::abs(lu.d[i]) >= std::abs(lu.dl[i])) {
            lu.piv[i] = i;
            if (std::abs(lu.d[i]) < tiny) lu.d[i] = tiny;
            const Complex fact = lu.dl[i] / lu.d[i];
            lu.dl[i] = fact;
            lu.d[i + 1] -= fact * lu.du[i];
            if (i < n - 2) lu.du2[i] = 0.0;
        } else {
            lu.piv[i] = i + 1;
            const Complex fact = lu.d[i] / lu.dl[i];
            lu.d[i] = lu.dl[i];
            lu.dl[i] = fact;
            const Complex tmp = lu.du[i];
            lu.du[i] = lu.d[i + 1];
            lu.d[i + 1] = tmp - fact * lu.d[i + 1];
            if (i < n - 2) {
                lu.du2[i] = lu.du[i + 1];
                lu.du[i + 1] = -fact * lu.du[i + 1];
            }
        }
    }
    if (std::abs(lu.d[n - 1]) < tiny) lu.d[n - 1] = tiny;
    return lu;
}

void solve_in_place(const TriLU& lu, std::vector<Complex>& b) {
    const int n = static_cast<int>(lu.d.size());
    for (int i = 0; i < n - 1; ++i) {
        if (lu.piv[i] == i) {
            b[i + 1] -= lu.dl[i] * b[i];
        } else {
            std::swap(b[i], b[i + 1]);
            b[i + 1] -= lu.dl[i] * b[i];
        }
    }
    b[n - 1] /= lu.d[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - lu.du[n - 2] * b[n - 1]) / lu.d[n - 2];
    for (int i = n - 3; i >= 0; --i)
        b[i] = (b[i] - lu.du[i] * b[i + 1] - lu.du2[i] * b[i + 2]) / lu.d[i];
}

double norm2(const std::vector<Complex>& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

Complex bilinear(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    Complex s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];  // unconjugated
    return s;
}

std::vector<Complex> inverse_iteration(const ScaledHamiltonian& H, Complex lambda,
                                       const std::vector<std::vector<Complex>>& cluster) {
    const int n = H.dim();
    const double matscale = 2.0 + std::abs(lambda);
    const TriLU lu = factor_shifted(H, lambda);

    std::vector<Complex> best;
    double best_resid = std::numeric_limits<double>::infinity();
    for (unsigned seed = 0; seed < 4; ++seed) {
        std::mt19937 rng(0x9e3779b9u + seed);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        std::vector<Complex> v(n);
        for (auto& x : v) x = Complex(unif(rng), unif(rng));
        for (int it = 0; it < 2; ++it) {
            solve_in_place(lu, v);
            for (const auto& u : cluster) {
                const Complex proj = bilinear(u, v);  // u already has u^T u = 1
                for (int k = 0; k < n; ++k) v[k] -= proj * u[k];
            }
            const double nv = norm2(v);
            if (nv == 0.0) break;
            for (auto& x : v) x /= nv;
        }
        auto Av = H.apply(v);
        for (int k = 0; k < n; ++k) Av[k] -= lambda * v[k];
        const double resid = norm2(Av);
        if (resid < best_resid) {
            best_resid = resid;
            best = v;
        }
        if (best_resid <= 1e-11 * std::max(1.0, matscale)) break;
    }
    if (best_resid > 1e-11 * std::max(1.0, matscale))
        throw NumericFailure("inverse iteration residual " + std::to_string(best_resid) +
                                 " at eigenvalue " + std::to_string(lambda.real()),
                             best);
    return best;
}

} // namespace

BiorthogonalBasis biorthogonalize(const ScaledHamiltonian& H, double degeneracy_tol) {
    const RootSet rs = hamiltonian_roots(H);
    const int n = H.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(rs.roots[i] - rs.roots[j]) <= degeneracy_tol)
                throw DegeneracyError("eigenvalue gap below degeneracy threshold",
                                      rs.roots[i], rs.roots[j]);

    BiorthogonalBasis basis;
    basis.eigenvalues = rs.roots;
    basis.right = CMatrix(n);

    std::vector<std::vector<Complex>> done;
    for (int m = 0; m < n; ++m) {
        std::vector<std::vector<Complex>> cluster;
        for (int j = 0; j < n; ++j)
            if (j < m && std::abs(rs.roots[j] - rs.roots[m]) <= 10.0 * degeneracy_tol)
                cluster.push_back(done[j]);

        std::vector<Complex> v;
        try {
            v = inverse_iteration(H, rs.roots[m], cluster);
        } catch (const NumericFailure&) {
            // a defective cluster scatters the computed copies too far apart
            // for the plain gap test; diagnose it from the failure itself
            double gap = std::numeric_limits<double>::infinity();
            int other = m;
            for (int j = 0; j < n; ++j)
                if (j != m && std::abs(rs.roots[j] - rs.roots[m]) < gap) {
                    gap = std::abs(rs.roots[j] - rs.roots[m]);
                    other = j;
                }
            if (gap <= 1e-4)
                throw DegeneracyError("eigenvector did not converge next to a near-by"
                                      " eigenvalue (exceptional point)",
                                      rs.roots[m], rs.roots[other]);
            throw;
        }

        // normalize the bilinear pairing v^T v = 1
        const Complex pairing = bilinear(v, v);
        if (std::abs(pairing) < degeneracy_tol)
            throw DegeneracyError("self-orthogonal eigenvector (exceptional point)",
                                  rs.roots[m], rs.roots[m]);
        const Complex root = std::sqrt(pairing);
        for (auto& x : v) x /= root;

        // fix the leftover sign deterministically
        int arg = 0;
        for (int k = 1; k < n; ++k)
            if (std::abs(v[k]) > std::abs(v[arg])) arg = k;
        if (v[arg].real() < 0.0 || (v[arg].real() == 0.0 && v[arg].imag() < 0.0))
            for (auto& x : v) x = -x;

        for (int k = 0; k < n; ++k) basis.right.at(k, m) = v[k];
        done.push_back(std::move(v));
    }
    return basis;
}

CMatrix build_metric(const BiorthogonalBasis& basis, std::span<const double> weights,
                     double* defect) {
    const int n = basis.dim();
    if (static_cast<int>(weights.size()) != n)
        throw std::domain_error("build_metric: need one weight per eigenvector");
    for (double w : weights)
        if (!(w > 0.0)) throw std::domain_error("build_metric: weights must be positive");

    // Theta = sum_n theta_n conj(v_n) v_n^T
    CMatrix theta(n);
    for (int m = 0; m < n; ++m)
        for (int i = 0; i < n; ++i) {
            const Complex li = std::conj(basis.right.at(i, m)) * weights[m];
            for (int j = 0; j < n; ++j)
                theta.at(i, j) += li * basis.right.at(j, m);
        }

    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            const Complex sym = 0.5 * (theta.at(i, j) + std::conj(theta.at(j, i)));
            worst = std::max(worst,
                             std::max(std::abs(theta.at(i, j) - sym),
                                      std::abs(theta.at(j, i) - std::conj(sym))));
            theta.at(i, j) = sym;
            theta.at(j, i) = std::conj(sym);
        }
    if (defect) *defect = worst;
    return theta;
}

double verify_quasi_hermiticity(const ScaledHamiltonian& H, const CMatrix& theta) {
    const CMatrix A = dense(H);
    const CMatrix lhs = A.adjoint() * theta;
    const CMatrix rhs = theta * A;
    return (lhs - rhs).max_abs() / std::max(theta.max_abs(), kEps);
}

double verify_pseudo_hermiticity(const ScaledHamiltonian& H) {
    const CMatrix A = dense(H);
    const int n = A.n;
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            // (P A P)_{ij} = A_{n-1-i, n-1-j}
            const Complex flip = A.at(n - 1 - i, n - 1 - j);
            worst = std::max(worst, std::abs(std::conj(A.at(j, i)) - flip));
        }
    return worst;
}

double completeness_defect(const BiorthogonalBasis& basis) {
    // sum_n |n>> <n| = conj(V V^T) must be the identity
    const int n = basis.dim();
    CMatrix s(n);
    for (int m = 0; m < n; ++m)
        for (int i = 0; i < n; ++i) {
            const Complex li = std::conj(basis.right.at(i, m));
            for (int j = 0; j < n; ++j)
                s.at(i, j) += li * std::conj(basis.right.at(j, m));
        }
    return (s - CMatrix::identity(n)).max_abs();
}

double reconstruction_defect(const BiorthogonalBasis& basis, const ScaledHamiltonian& H) {
    const int n = basis.dim();
    CMatrix s(n);
    for (int m = 0; m < n; ++m)
        for (int i = 0; i < n; ++i) {
            const Complex li = basis.right.at(i, m) * basis.eigenvalues[m];
            for (int j = 0; j < n; ++j)
                s.at(i, j) += li * basis.right.at(j, m);
        }
    return (s - dense(H)).max_abs();
}

} // namespace ptwell
