#include "ptwell/model.hpp"

#include <cmath>
#include <stdexcept>

namespace ptwell {

Lattice::Lattice(int n) : N(n) {
    if (n < 2) throw std::domain_error("Lattice: N must be >= 2");
}

PotentialProfile::PotentialProfile(std::vector<Rational> interior_breakpoints,
                                   std::vector<double> strengths)
    : ell_(std::move(interior_breakpoints)), strengths_(std::move(strengths)) {
    if (strengths_.size() != ell_.size() + 1)
        throw std::domain_error("PotentialProfile: need q+1 strengths for q breakpoints");
    const Rational zero(0, 1), one(1, 1);
    Rational prev = zero;
    for (const auto& l : ell_) {
        if (!(prev < l)) throw std::domain_error("PotentialProfile: breakpoints must increase");
        prev = l;
    }
    if (!(prev < one)) throw std::domain_error("PotentialProfile: breakpoints must lie inside (0,1)");
}

PotentialProfile PotentialProfile::square_well(double Z) {
    return PotentialProfile({}, {Z});
}

PotentialProfile PotentialProfile::shifted_well(const Rational& ell, double Z) {
    return PotentialProfile({ell}, {0.0, Z});
}

double PotentialProfile::region_strength(int n) const {
    if (n < 1 || n > q() + 1) return 0.0;
    return strengths_[n - 1];
}

Complex PotentialProfile::value_at(const Rational& x) const {
    const Rational zero(0, 1), one(1, 1);
    const Rational ax = x.abs();
    if (ax > one) throw std::domain_error("potential: x outside [-1, 1]");
    const double side = x < zero ? +1.0 : -1.0;  // +iZ on the left, -iZ on the right

    if (ax == zero || ax == one)  // center and Dirichlet endpoints carry no charge
        return Complex(0.0, 0.0);

    int region = q() + 1;  // region containing |x|: (l_{n-1}, l_n)
    for (int n = 1; n <= q(); ++n) {
        if (ax == ell_[n - 1])  // exactly on a discontinuity: average both sides
            return Complex(0.0, side * 0.5 * (region_strength(n) + region_strength(n + 1)));
        if (ax < ell_[n - 1]) { region = n; break; }
    }
    return Complex(0.0, side * region_strength(region));
}

Complex PotentialProfile::value_at(double x) const {
    if (!(x >= -1.0 && x <= 1.0)) throw std::domain_error("potential: x outside [-1, 1]");
    const double side = x < 0.0 ? +1.0 : -1.0;
    const double ax = std::abs(x);

    if (ax == 0.0 || ax == 1.0) return Complex(0.0, 0.0);

    int region = q() + 1;
    for (int n = 1; n <= q(); ++n) {
        const double l = ell_[n - 1].value();
        if (ax == l)
            return Complex(0.0, side * 0.5 * (region_strength(n) + region_strength(n + 1)));
        if (ax < l) { region = n; break; }
    }
    return Complex(0.0, side * region_strength(region));
}

ScaledHamiltonian build_hamiltonian(int N, const PotentialProfile& profile) {
    const Lattice lat(N);
    const double h2 = lat.h() * lat.h();
    ScaledHamiltonian H;
    H.N = N;
    H.diag.resize(N - 1);
    for (int k = 1; k < N; ++k)
        H.diag[k - 1] = h2 * profile.value_at(lat.x_exact(k));
    return H;
}

std::vector<Complex> ScaledHamiltonian::apply(std::span<const Complex> x) const {
    const int m = dim();
    if (static_cast<int>(x.size()) != m)
        throw std::invalid_argument("ScaledHamiltonian::apply: size mismatch");
    std::vector<Complex> y(m);
    for (int k = 0; k < m; ++k) {
        Complex v = diag[k] * x[k];
        if (k > 0) v -= x[k - 1];
        if (k + 1 < m) v -= x[k + 1];
        y[k] = v;
    }
    return y;
}

Complex to_physical_energy(Complex F, int N) {
    return (F + 2.0) * (static_cast<double>(N) * N / 4.0);
}

EnergyPair to_physical(Complex F, int N) { return {F, to_physical_energy(F, N)}; }

EnergyPair from_physical(Complex E, int N) { return {to_scaled_energy(E, N), E}; }

Complex to_scaled_energy(Complex E, int N) {
    return E * (4.0 / (static_cast<double>(N) * N)) - 2.0;
}

double coupling_Z(double xi, int N) { return xi * N * N / 4.0; }
double coupling_xi(double Z, int N) { return Z * 4.0 / (static_cast<double>(N) * N); }

PotentialProfile ModelSpec::profile(double Z) const {
    if (q == 0) return PotentialProfile::square_well(Z);
    std::vector<double> strengths(q + 1, 0.0);
    strengths.back() = Z;  // charged only outside the last breakpoint
    return PotentialProfile(ell, strengths);
}

ScaledHamiltonian ModelSpec::hamiltonian(double xi) const {
    if (static_cast<int>(ell.size()) != q)
        throw std::domain_error("ModelSpec: need q breakpoints");
    return build_hamiltonian(N, profile(coupling_Z(xi, N)));
}

} // namespace ptwell
