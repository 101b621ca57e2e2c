#include "ptwell/secular.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace ptwell::secular {

using cheby::cheb_t;
using cheby::cheb_u;

namespace {

Complex junction_z(double F, double xi) { return Complex(-F, xi) / 2.0; }

} // namespace

int lattice_points(Parity parity, int n) {
    if (n < 0) throw std::domain_error("matching block size must be >= 0");
    return parity == Parity::even_lattice ? 2 * n + 4 : 2 * n + 3;
}

Mat2x2 matching_matrix_even(int n, double F, double xi) {
    const Complex z = junction_z(F, xi);
    const Complex un1 = cheb_u(n + 1, z);  // P + iQ
    const Complex un = cheb_u(n, z);       // R + iS
    // (i)  Im(c U_{n+1}(z)) = 0            (gamma is real)
    // (ii) F Re(c U_{n+1}(z)) + 2 Re(c U_n(z)) = 0
    Mat2x2 m;
    m.m00 = un1.imag();
    m.m01 = un1.real();
    m.m10 = F * un1.real() + 2.0 * un.real();
    m.m11 = -F * un1.imag() - 2.0 * un.imag();
    return m;
}

Mat2x2 matching_matrix_odd(int n, double F, double xi) {
    const Complex z = junction_z(F, xi);
    const Complex un1 = cheb_u(n + 1, z);
    const Complex un = cheb_u(n, z);
    // c U_{n+1}(z) = conj(c) U_n(conj z), split into real and imaginary parts
    Mat2x2 m;
    m.m00 = un1.real() - un.real();
    m.m01 = un.imag() - un1.imag();
    m.m10 = un1.imag() + un.imag();
    m.m11 = un1.real() + un.real();
    return m;
}

double matching_det_even(int n, double F, double xi) {
    return matching_matrix_even(n, F, xi).det();
}

double matching_det_odd(int n, double F, double xi) {
    return matching_matrix_odd(n, F, xi).det();
}

Complex matching_normalization(const Mat2x2& m) {
    // null vector of the dominant row
    const double r0 = std::hypot(m.m00, m.m01);
    const double r1 = std::hypot(m.m10, m.m11);
    double a, b;
    if (r0 == 0.0 && r1 == 0.0) {
        a = 1.0;
        b = 0.0;
    } else if (r0 >= r1) {
        a = -m.m01 / r0;
        b = m.m00 / r0;
    } else {
        a = -m.m11 / r1;
        b = m.m10 / r1;
    }
    if (a < 0.0 || (a == 0.0 && b < 0.0)) { a = -a; b = -b; }
    return Complex(a, b);
}

std::vector<Complex> eigenvector(Parity parity, int n, Complex F, double xi, Complex c) {
    const Complex z = (-F + Complex(0.0, xi)) / 2.0;
    std::vector<Complex> alpha(n + 1);
    for (int k = 0; k <= n; ++k) alpha[k] = c * cheb_u(k, z);

    std::vector<Complex> v;
    if (parity == Parity::even_lattice) {
        v.reserve(2 * n + 3);
        v.insert(v.end(), alpha.begin(), alpha.end());
        const Complex gamma = c * cheb_u(n + 1, z);  // real once (i) holds
        v.push_back(Complex(gamma.real(), 0.0));
    } else {
        v.reserve(2 * n + 2);
        v.insert(v.end(), alpha.begin(), alpha.end());
    }
    for (int k = n; k >= 0; --k) v.push_back(std::conj(alpha[k]));
    return v;
}

Complex secular_printed_even(int n, double F, double xi) {
    const Complex z = junction_z(F, xi);
    const Complex w = std::conj(z);  // (-F - i xi)/2
    return cheb_t(n + 1, z) * cheb_u(n + 1, w) + cheb_t(n + 1, w) * cheb_u(n + 1, z);
}

Complex secular_printed_odd(int n, double F, double xi) {
    const Complex z = junction_z(F, xi);
    const Complex w = std::conj(z);
    return cheb_u(n, z) * cheb_u(n, w) - cheb_u(n + 1, z) * cheb_u(n + 1, w);
}

TrigPoint trig_map(double F, double xi) {
    if (!std::isfinite(F) || !std::isfinite(xi))
        throw std::domain_error("trig_map: arguments must be finite");
    // sinh^2 beta solves 4 s^2 + (4 - F^2 - xi^2) s - xi^2 = 0
    const double u = F * F + xi * xi - 4.0;
    const double disc = std::sqrt(u * u + 16.0 * xi * xi);
    const double s2 = std::max(0.0, (u + disc) / 8.0);
    const double sroot = std::sqrt(s2);
    const double sinhb = -sroot;  // branch beta <= 0
    const double coshb = std::sqrt(1.0 + s2);
    double cosa = -F / (2.0 * coshb);
    cosa = std::clamp(cosa, -1.0, 1.0);
    double sina;
    if (sroot > 0.0)
        sina = -xi / (2.0 * sinhb);
    else
        sina = std::sqrt(std::max(0.0, 1.0 - cosa * cosa));
    TrigPoint p;
    p.alpha = std::atan2(sina, cosa);   // alpha in [0, pi]
    p.beta = std::asinh(sinhb);
    return p;
}

std::pair<double, double> trig_forward(const TrigPoint& p) {
    return {-2.0 * std::cos(p.alpha) * std::cosh(p.beta),
            -2.0 * std::sin(p.alpha) * std::sinh(p.beta)};
}

double trig_residual(int n, const TrigPoint& p) {
    const Complex phi(p.alpha, p.beta);
    const Complex s = std::sin(phi);
    if (std::abs(s) < 1e-14)
        throw std::domain_error("trig_residual: sin(phi) vanishes");
    const Complex num = std::sin((n + 1.0) * phi) * std::cos((n + 1.0) * std::conj(phi));
    return (num / s).real();
}

CheckStatus robust_level_check(int n, Parity parity, std::span<const double> xis) {
    if (parity == Parity::odd_lattice) return CheckStatus::not_applicable;
    for (double xi : xis) {
        const double d = matching_det_even(n, 0.0, xi);
        // determinant scale at F = 0 for a fair relative test
        const Complex u1 = cheb_u(n + 1, Complex(0.0, xi / 2.0));
        const Complex u0 = cheb_u(n, Complex(0.0, xi / 2.0));
        const double scale = std::max(1.0, 2.0 * std::abs(u1) * std::abs(u0));
        if (std::abs(d) > 1e-10 * scale) return CheckStatus::fails;
    }
    return CheckStatus::holds;
}

namespace {

double bisect_zero(double lo, double hi, double flo,
                   const std::function<double(double)>& f) {
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// golden-section minimization of |f| for tangential zeros
double minimize_abs(double lo, double hi, const std::function<double(double)>& f) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = std::abs(f(x1)), f2 = std::abs(f(x2));
    for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - g * (b - a); f1 = std::abs(f(x1));
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + g * (b - a); f2 = std::abs(f(x2));
        }
    }
    return f1 < f2 ? x1 : x2;
}

} // namespace

std::vector<double> matching_roots(Parity parity, int n, double xi) {
    const auto det = [&](double F) {
        return parity == Parity::even_lattice ? matching_det_even(n, F, xi)
                                              : matching_det_odd(n, F, xi);
    };
    const double lim = 2.0 + std::abs(xi);
    const int points = 20 * (n + 2);
    std::vector<double> grid(points + 1), val(points + 1);
    double scale = 0.0;
    for (int i = 0; i <= points; ++i) {
        grid[i] = -lim + 2.0 * lim * i / points;
        val[i] = det(grid[i]);
        if (val[i] == 0.0) {  // nudge off an exact hit; bisection recovers it
            grid[i] += 1e-9 * lim;
            val[i] = det(grid[i]);
        }
        scale = std::max(scale, std::abs(val[i]));
    }

    // Cells worth a closer look: a sign change, a dip of |det| without one,
    // or an anomalously small endpoint value.  Root clusters near a critical
    // coupling can hide two or three roots inside a single cell, so flagged
    // cells are re-scanned on a fine subgrid rather than bisected once.
    std::vector<std::pair<double, int>> found;  // (value, multiplicity)
    const auto fine_scan = [&](double lo, double hi) {
        constexpr int sub = 64;
        double prev_x = lo, prev_v = det(lo);
        for (int s = 1; s <= sub; ++s) {
            double x = lo + (hi - lo) * s / sub;
            double v = det(x);
            if (v == 0.0) {
                x += (hi - lo) * 1e-9;
                v = det(x);
            }
            if ((prev_v < 0.0) != (v < 0.0))
                found.emplace_back(bisect_zero(prev_x, x, prev_v, det), 1);
            prev_x = x;
            prev_v = v;
        }
    };

    const double tiny = 1e-7 * std::max(1.0, scale);
    for (int i = 0; i < points; ++i) {
        const bool change = (val[i] < 0.0) != (val[i + 1] < 0.0);
        const bool small_end = std::abs(val[i]) <= tiny || std::abs(val[i + 1]) <= tiny;
        const bool dip = i > 0 && (val[i - 1] < 0.0) == (val[i] < 0.0) &&
                         std::abs(val[i]) < std::abs(val[i - 1]) &&
                         std::abs(val[i]) < std::abs(val[i + 1]) &&
                         std::abs(val[i]) < 1e-4 * scale;
        if (change || small_end) {
            fine_scan(grid[i], grid[i + 1]);
        } else if (dip) {
            const double fmin = minimize_abs(grid[i - 1], grid[i + 1], det);
            const double dmin = det(fmin);
            if (std::abs(dmin) <= 1e-9 * std::max(1.0, scale)) {
                found.emplace_back(fmin, 2);  // tangential (double) zero
            } else if ((dmin < 0.0) != (val[i - 1] < 0.0)) {
                fine_scan(grid[i - 1], grid[i + 1]);
            }
        }
    }
    std::sort(found.begin(), found.end());
    // adjacent scan windows may rediscover a simple root; bisection places
    // the copies within its own tolerance
    std::vector<double> roots;
    for (const auto& [f, mult] : found) {
        if (mult == 1 && !roots.empty() &&
            std::abs(roots.back() - f) <= 5e-12 * (1.0 + std::abs(f)))
            continue;
        roots.insert(roots.end(), mult, f);
    }
    return roots;
}

} // namespace ptwell::secular
