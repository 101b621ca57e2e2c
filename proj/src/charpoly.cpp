#include "ptwell/charpoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace ptwell {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool lex_less(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

} // namespace

ComplexPolynomial::ComplexPolynomial(std::vector<Complex> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("ComplexPolynomial: empty coefficient list");
    if (c_.size() > 1 && std::abs(c_.back()) == 0.0)
        throw std::invalid_argument("ComplexPolynomial: zero leading coefficient");
}

double ComplexPolynomial::scale() const {
    double s = 0.0;
    for (const auto& c : c_) s = std::max(s, std::abs(c));
    return s;
}

Complex ComplexPolynomial::eval(Complex z) const {
    Complex p = 0.0;
    for (int k = degree(); k >= 0; --k) p = p * z + c_[k];
    return p;
}

namespace {

// Generic minor recurrence D_k = (d_k - F) D_{k-1} - D_{k-2} in complex
// coefficient arithmetic.
ComplexPolynomial char_poly_complex(const ScaledHamiltonian& H) {
    std::vector<Complex> prev;         // D_{-1} = 0
    std::vector<Complex> cur = {1.0};  // D_0 = 1
    for (int k = 0; k < H.dim(); ++k) {
        std::vector<Complex> next(cur.size() + 1, Complex(0.0));
        for (size_t j = 0; j < cur.size(); ++j) {
            next[j] += H.diag[k] * cur[j];
            next[j + 1] -= cur[j];
        }
        for (size_t j = 0; j < prev.size(); ++j) next[j] -= prev[j];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return ComplexPolynomial(std::move(cur));
}

} // namespace

ComplexPolynomial char_poly(const ScaledHamiltonian& H) {
    const int m = H.dim();
    if (m < 1) throw std::domain_error("char_poly: dimension must be >= 1");
    for (const Complex& d : H.diag)
        if (d.real() != 0.0) return char_poly_complex(H);

    // Purely imaginary diagonal (the whole model family): conjugating by
    // diag(i^k) and pulling out i gives the real matrix B with diagonal
    // Im d_k and off-diagonals -1/+1, so det(A - F) = i^m det(B + iF) and
    // the coefficients come from real arithmetic:
    //   q_k = (Im d_k - t) q_{k-1} + q_{k-2},   c_j = i^(m-j) q_j.
    // Coefficients with m - j odd vanish identically (the spectrum is closed
    // under F -> -F for every antisymmetric imaginary diagonal); dropping
    // their rounding residue keeps the polynomial exactly real.
    std::vector<double> prev;
    std::vector<double> cur = {1.0};
    for (int k = 0; k < m; ++k) {
        const double g = H.diag[k].imag();
        std::vector<double> next(cur.size() + 1, 0.0);
        for (size_t j = 0; j < cur.size(); ++j) {
            next[j] += g * cur[j];
            next[j + 1] -= cur[j];
        }
        for (size_t j = 0; j < prev.size(); ++j) next[j] += prev[j];
        prev = std::move(cur);
        cur = std::move(next);
    }
    std::vector<Complex> coeffs(m + 1);
    for (int j = 0; j <= m; ++j) {
        if ((m - j) % 2 != 0) {
            coeffs[j] = 0.0;
        } else {
            const double sign = ((m - j) / 2) % 2 == 0 ? 1.0 : -1.0;
            coeffs[j] = sign * cur[j];
        }
    }
    return ComplexPolynomial(std::move(coeffs));
}

std::vector<double> certify_real(const ComplexPolynomial& p, double tol) {
    double worst = 0.0;
    for (const auto& c : p.coeffs()) worst = std::max(worst, std::abs(c.imag()));
    const double bound = tol * std::max(1.0, p.scale());
    if (worst > bound)
        throw PtSymmetryBroken("characteristic polynomial has imaginary defect " +
                               std::to_string(worst) + " > " + std::to_string(bound));
    std::vector<double> out(p.coeffs().size());
    for (size_t k = 0; k < out.size(); ++k) out[k] = p.coeff(static_cast<int>(k)).real();
    return out;
}

bool RootSet::is_real(int i) const {
    const Complex r = roots[i];
    return std::abs(r.imag()) <= classify_tol * std::max(1.0, std::abs(r));
}

std::vector<double> RootSet::real_roots() const {
    std::vector<double> out;
    for (size_t i = 0; i < roots.size(); ++i)
        if (is_real(static_cast<int>(i))) out.push_back(roots[i].real());
    return out;
}

int RootSet::real_count() const {
    int c = 0;
    for (size_t i = 0; i < roots.size(); ++i)
        if (is_real(static_cast<int>(i))) ++c;
    return c;
}

Complex poly_eval(const std::vector<double>& coeffs, Complex z) {
    Complex p = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) p = p * z + *it;
    return p;
}

std::vector<double> poly_derivative(const std::vector<double>& coeffs) {
    if (coeffs.size() <= 1) return {0.0};
    std::vector<double> d(coeffs.size() - 1);
    for (size_t k = 1; k < coeffs.size(); ++k) d[k - 1] = coeffs[k] * static_cast<double>(k);
    return d;
}

namespace detail {

EvalPoint eval_with_bound(const std::vector<double>& coeffs, Complex z) {
    // Horner with running error accumulation and the derivative alongside.
    Complex p = 0.0, dp = 0.0;
    double b = 0.0;
    const double az = std::abs(z);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
        b = b * az + std::abs(p);
    }
    return {p, dp, 2.0 * kEps * b + kEps};
}

Evaluator horner_evaluator(const std::vector<double>& coeffs) {
    return [coeffs](Complex z) { return eval_with_bound(coeffs, z); };
}

Evaluator minor_recurrence_evaluator(const ScaledHamiltonian& H) {
    // The noise floor tracks the largest intermediate magnitude instead of a
    // worst-case propagation bound: the latter compounds with a larger base
    // than the recurrence itself and over-freezes long chains.
    std::vector<Complex> diag = H.diag;
    const double slack = 4.0 * std::sqrt(static_cast<double>(H.dim()) + 1.0);
    return [diag, slack](Complex F) {
        Complex dm1 = 1.0, dm2 = 0.0;  // D_0, D_{-1}
        Complex pm1 = 0.0, pm2 = 0.0;  // d/dF of the same
        double peak = 1.0;
        for (const Complex& d : diag) {
            const Complex a = d - F;
            const Complex cur = a * dm1 - dm2;
            const Complex pcur = a * pm1 - dm1 - pm2;
            peak = std::max(peak, std::abs(a) * std::abs(dm1) + std::abs(dm2));
            dm2 = dm1; dm1 = cur;
            pm2 = pm1; pm1 = pcur;
            if (std::abs(dm1) > 1e250 || peak > 1e250) {
                constexpr double s = 1e-250;
                dm1 *= s; dm2 *= s; pm1 *= s; pm2 *= s; peak *= s;
            }
        }
        return EvalPoint{dm1, pm1, slack * kEps * peak + kEps};
    };
}

double seed_radius(const std::vector<double>& coeffs) {
    const int deg = static_cast<int>(coeffs.size()) - 1;
    const double lead = std::abs(coeffs[deg]);
    double cauchy = 0.0;
    for (int k = 0; k < deg; ++k) cauchy = std::max(cauchy, std::abs(coeffs[k]) / lead);
    cauchy += 1.0;
    // Fujiwara bound; the Cauchy bound alone blows up for the high-degree
    // Dirichlet-chain polynomials and would overflow Horner at the seeds.
    double fujiwara = 0.0;
    for (int k = 0; k < deg; ++k) {
        const double ratio = std::abs(coeffs[k]) / lead * (k == 0 ? 0.5 : 1.0);
        if (ratio > 0.0)
            fujiwara = std::max(fujiwara, std::pow(ratio, 1.0 / (deg - k)));
    }
    fujiwara *= 2.0;
    const double r = std::min(cauchy, fujiwara);
    return r > 0.0 ? r : 1.0;
}

std::vector<Complex> aberth(const Evaluator& f, int degree, double radius, int max_iter) {
    if (degree < 1) return {};
    std::vector<Complex> z(degree);
    for (int j = 0; j < degree; ++j) {
        // slight rotation so seeds avoid the real axis and the F -> -F symmetry
        const double angle = 2.0 * std::numbers::pi * j / degree + 0.4;
        z[j] = radius * Complex(std::cos(angle), std::sin(angle));
    }
    std::vector<bool> frozen(degree, false);

    for (int iter = 0; iter < max_iter; ++iter) {
        double max_step = 0.0;
        bool all_frozen = true;
        for (int i = 0; i < degree; ++i) {
            if (frozen[i]) continue;
            const EvalPoint e = f(z[i]);
            if (std::abs(e.p) <= 4.0 * e.err) { frozen[i] = true; continue; }
            all_frozen = false;
            if (e.dp == Complex(0.0)) { z[i] += 1e-6 * (1.0 + std::abs(z[i])); continue; }
            const Complex newton = e.p / e.dp;
            Complex repulsion = 0.0;
            for (int j = 0; j < degree; ++j)
                if (j != i) repulsion += 1.0 / (z[i] - z[j]);
            const Complex denom = 1.0 - newton * repulsion;
            const Complex step = denom == Complex(0.0) ? newton : newton / denom;
            z[i] -= step;
            max_step = std::max(max_step, std::abs(step));
        }
        if (all_frozen) return z;
        if (max_step < 1e-13) return z;
        bool small = true;
        for (int i = 0; i < degree && small; ++i)
            small = frozen[i] || max_step < 1e-13 * (1.0 + std::abs(z[i]));
        if (small) return z;
    }
    // final acceptance check before declaring failure
    double worst = 0.0;
    for (int i = 0; i < degree; ++i) {
        const EvalPoint e = f(z[i]);
        worst = std::max(worst, std::abs(e.p) / (4.0 * e.err + kEps));
    }
    if (worst <= 16.0) return z;
    throw NumericFailure("Aberth iteration did not converge in " +
                         std::to_string(max_iter) + " iterations", z);
}

void symmetrize_conjugates(std::vector<Complex>& roots) {
    // Greedy pairing minimizing |r_i - conj(r_j)| (self-pairing zeroes a
    // spurious imaginary part); matched pairs are averaged.
    const int n = static_cast<int>(roots.size());
    std::vector<bool> used(n, false);
    while (true) {
        double best = std::numeric_limits<double>::infinity();
        int bi = -1, bj = -1;
        for (int i = 0; i < n; ++i) {
            if (used[i]) continue;
            for (int j = i; j < n; ++j) {
                if (used[j]) continue;
                const double d = std::abs(roots[i] - std::conj(roots[j]));
                if (d < best) { best = d; bi = i; bj = j; }
            }
        }
        if (bi < 0) break;
        used[bi] = used[bj] = true;
        if (bi == bj) {
            roots[bi] = Complex(roots[bi].real(), 0.0);
        } else {
            const Complex avg = 0.5 * (roots[bi] + std::conj(roots[bj]));
            roots[bi] = avg;
            roots[bj] = std::conj(avg);
        }
    }
    std::sort(roots.begin(), roots.end(), lex_less);
}

namespace {

void newton_polish(const Evaluator& f, std::vector<Complex>& roots) {
    for (auto& r : roots) {
        for (int it = 0; it < 3; ++it) {
            const EvalPoint e = f(r);
            if (std::abs(e.p) <= 2.0 * e.err || e.dp == Complex(0.0)) break;
            const Complex step = e.p / e.dp;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
            r -= step;
        }
    }
}

} // namespace

} // namespace detail

RootSet poly_roots(const std::vector<double>& coeffs, int max_iter) {
    if (coeffs.size() < 2 || coeffs.back() == 0.0)
        throw std::invalid_argument("poly_roots: degree must be >= 1 with nonzero leading coefficient");

    double scale = 0.0;
    for (double c : coeffs) scale = std::max(scale, std::abs(c));

    // deflate exact zero roots first
    std::vector<double> work = coeffs;
    int zeros = 0;
    while (work.size() > 1 && std::abs(work.front()) < 1e-13 * scale) {
        work.erase(work.begin());
        ++zeros;
    }

    RootSet out;
    if (work.size() > 1) {
        const auto f = detail::horner_evaluator(work);
        out.roots = detail::aberth(f, static_cast<int>(work.size()) - 1,
                                   detail::seed_radius(work), max_iter);
        detail::newton_polish(f, out.roots);
    }
    out.roots.insert(out.roots.end(), zeros, Complex(0.0));
    detail::symmetrize_conjugates(out.roots);

    out.residuals.resize(out.roots.size());
    for (size_t i = 0; i < out.roots.size(); ++i)
        out.residuals[i] = std::abs(poly_eval(coeffs, out.roots[i]));
    return out;
}

RootSet hamiltonian_roots(const ScaledHamiltonian& H) {
    const auto p = certify_real(char_poly(H));
    const auto f = detail::minor_recurrence_evaluator(H);
    RootSet out;
    out.roots = detail::aberth(f, H.dim(), detail::seed_radius(p), 200);
    for (auto& r : out.roots) {
        for (int it = 0; it < 4; ++it) {
            const detail::EvalPoint e = f(r);
            if (std::abs(e.p) <= 2.0 * e.err || e.dp == Complex(0.0)) break;
            r -= e.p / e.dp;
        }
    }
    detail::symmetrize_conjugates(out.roots);
    out.residuals.resize(out.roots.size());
    for (size_t i = 0; i < out.roots.size(); ++i) {
        const auto e = f(out.roots[i]);
        out.residuals[i] = std::abs(e.p);
    }
    return out;
}

} // namespace ptwell
