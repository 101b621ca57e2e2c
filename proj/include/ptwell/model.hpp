#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ptwell/cheby.hpp"
#include "ptwell/rational.hpp"

namespace ptwell {

// Equidistant Dirichlet lattice on [-1, 1]: x_k = -1 + k h, h = 2/N, k = 0..N.
struct Lattice {
    int N = 2;

    explicit Lattice(int n);
    double h() const { return 2.0 / N; }
    double x(int k) const { return -1.0 + k * h(); }
    Rational x_exact(int k) const { return Rational(2 * k - N, N); }
};

// Piecewise-constant purely imaginary antisymmetric potential:
//   V(x) = +i Z_n  on (-l_n, -l_{n-1}),   V(x) = -i Z_n  on (l_{n-1}, l_n),
// with 0 = l_0 < l_1 < ... < l_{q+1} = 1.  A point sitting exactly on a
// discontinuity gets the average of the two adjacent region values; this
// keeps V(x) = conj(V(-x)) exact on every lattice.
class PotentialProfile {
public:
    PotentialProfile(std::vector<Rational> interior_breakpoints,
                     std::vector<double> strengths);

    // q = 0 well with a single strength.
    static PotentialProfile square_well(double Z);
    // q = 1 well that is neutral on (-l, l) and charged +-iZ outside.
    static PotentialProfile shifted_well(const Rational& ell, double Z);

    int q() const { return static_cast<int>(ell_.size()); }
    const std::vector<Rational>& breakpoints() const { return ell_; }
    const std::vector<double>& strengths() const { return strengths_; }

    Complex value_at(double x) const;
    Complex value_at(const Rational& x) const;

private:
    // strength of the region index (1-based n), 0 for "past the edge"
    double region_strength(int n) const;

    std::vector<Rational> ell_;      // interior breakpoints l_1..l_q
    std::vector<double> strengths_;  // Z_1..Z_{q+1}
};

// The rescaled eigenproblem (A - F I) psi = 0: complex-symmetric tridiagonal,
// diagonal d_k = h^2 V(x_k) (purely imaginary), off-diagonal entries -1.
// F = E h^2 - 2, xi = Z h^2.
struct ScaledHamiltonian {
    int N = 2;
    std::vector<Complex> diag;  // interior sites k = 1..N-1

    int dim() const { return N - 1; }
    double h() const { return 2.0 / N; }

    // y = A x
    std::vector<Complex> apply(std::span<const Complex> x) const;
};

ScaledHamiltonian build_hamiltonian(int N, const PotentialProfile& profile);

// F = E h^2 - 2  <=>  E = (F + 2) N^2 / 4
struct EnergyPair {
    Complex F;  // scaled
    Complex E;  // physical
};

EnergyPair to_physical(Complex F, int N);
EnergyPair from_physical(Complex E, int N);
Complex to_physical_energy(Complex F, int N);
Complex to_scaled_energy(Complex E, int N);
double coupling_Z(double xi, int N);   // Z = xi N^2/4
double coupling_xi(double Z, int N);   // xi = 4 Z/N^2

// Single-coupling model family used by sweeps and the CLI: the q = 0 well,
// or the q >= 1 well charged only in the outermost region.
struct ModelSpec {
    int N = 4;
    int q = 0;
    std::vector<Rational> ell;  // interior breakpoints, size q

    PotentialProfile profile(double Z) const;
    ScaledHamiltonian hamiltonian(double xi) const;
};

} // namespace ptwell
