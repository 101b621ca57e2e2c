// Independent oracle: compare the characteristic-polynomial/root route
// against a dense eigensolver from an unrelated code base.
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "ptwell/spectral.hpp"

using namespace ptwell;

namespace {

Eigen::MatrixXcd dense_eigen(const ScaledHamiltonian& H) {
    const int m = H.dim();
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(m, m);
    for (int k = 0; k < m; ++k) {
        A(k, k) = H.diag[k];
        if (k + 1 < m) {
            A(k, k + 1) = -1.0;
            A(k + 1, k) = -1.0;
        }
    }
    return A;
}

// worst nearest-partner distance under greedy closest-first pairing; a plain
// lexicographic sort is unstable for purely imaginary pairs whose real parts
// are opposite-signed noise
double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
    REQUIRE(a.size() == b.size());
    const size_t n = a.size();
    std::vector<bool> ua(n, false), ub(n, false);
    double worst = 0.0;
    for (size_t step = 0; step < n; ++step) {
        double best = std::numeric_limits<double>::infinity();
        size_t bi = 0, bj = 0;
        for (size_t i = 0; i < n; ++i) {
            if (ua[i]) continue;
            for (size_t j = 0; j < n; ++j) {
                if (ub[j]) continue;
                const double d = std::abs(a[i] - b[j]);
                if (d < best) { best = d; bi = i; bj = j; }
            }
        }
        ua[bi] = ub[bj] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace

TEST_CASE("root route agrees with a dense complex eigensolver") {
    const std::vector<ModelSpec> models = {
        {5, 0, {}},  {8, 0, {}},  {12, 0, {}},
        {6, 1, {Rational(1, 2)}}, {8, 1, {Rational(5, 8)}}, {8, 1, {Rational(3, 8)}},
        {10, 1, {Rational(1, 2)}}, {12, 1, {Rational(2, 3)}}};
    for (const auto& spec : models) {
        for (double xi : {0.0, 0.3, 0.8, 1.6}) {
            const auto H = spec.hamiltonian(xi);
            const auto mine = hamiltonian_roots(H).roots;
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(dense_eigen(H), false);
            std::vector<Complex> reference(es.eigenvalues().data(),
                                           es.eigenvalues().data() + H.dim());
            CHECK(multiset_distance(mine, reference) <= 1e-8);
        }
    }
}

TEST_CASE("Hermitian limit agrees with a selfadjoint eigensolver") {
    for (int N : {9, 16, 25}) {
        const ModelSpec spec{N, 0, {}};
        const auto H = spec.hamiltonian(0.0);
        Eigen::MatrixXd A = dense_eigen(H).real();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
        std::vector<Complex> reference;
        for (int i = 0; i < N - 1; ++i) reference.emplace_back(es.eigenvalues()[i], 0.0);
        const auto mine = hamiltonian_roots(H).roots;
        CHECK(multiset_distance(mine, reference) <= 1e-10);
    }
}
