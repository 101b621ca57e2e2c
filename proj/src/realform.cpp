#include "ptwell/realform.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace ptwell::realform {

namespace {

constexpr int kl = 2, ku = 2;        // band widths of the raw system
constexpr int kuf = kl + ku;         // upper width after partial pivoting
constexpr double kEps = std::numeric_limits<double>::epsilon();

// LAPACK-style band storage: entry (i, j) at ab[kuf + i - j][j].
struct BandLU {
    int n = 0;
    std::vector<std::vector<double>> ab;  // (2kl+ku+1) x n
    std::vector<int> piv;                 // row offset chosen at column j
    double det_sign = 1.0;

    double& at(int i, int j) { return ab[kuf + i - j][j]; }
    double at(int i, int j) const { return ab[kuf + i - j][j]; }
};

BandLU factor(const PentadiagonalSystem& sys) {
    const int n = sys.dim();
    BandLU lu;
    lu.n = n;
    lu.ab.assign(2 * kl + ku + 1, std::vector<double>(n, 0.0));
    lu.piv.assign(n, 0);
    for (int j = 0; j < n; ++j)
        for (int i = std::max(0, j - ku); i <= std::min(n - 1, j + kl); ++i)
            lu.at(i, j) = sys.entry(i, j);

    for (int j = 0; j < n; ++j) {
        const int km = std::min(kl, n - 1 - j);
        int jp = 0;
        for (int p = 1; p <= km; ++p)
            if (std::abs(lu.at(j + p, j)) > std::abs(lu.at(j + jp, j))) jp = p;
        lu.piv[j] = jp;
        if (jp != 0) {
            lu.det_sign = -lu.det_sign;
            const int ju = std::min(n - 1, j + kuf);
            for (int c = j; c <= ju; ++c) std::swap(lu.at(j, c), lu.at(j + jp, c));
        }
        double pivot = lu.at(j, j);
        if (pivot == 0.0) {
            pivot = kEps;  // keep the solve usable on (numerically) singular systems
            lu.at(j, j) = pivot;
        }
        const int ju = std::min(n - 1, j + kuf);
        for (int p = 1; p <= km; ++p) {
            const double m = lu.at(j + p, j) / pivot;
            lu.at(j + p, j) = m;
            for (int c = j + 1; c <= ju; ++c) lu.at(j + p, c) -= m * lu.at(j, c);
        }
    }
    return lu;
}

double determinant(const BandLU& lu) {
    double det = lu.det_sign;
    for (int j = 0; j < lu.n; ++j) det *= lu.at(j, j);
    return det;
}

void solve_in_place(const BandLU& lu, std::vector<double>& b) {
    const int n = lu.n;
    for (int j = 0; j < n; ++j) {
        if (lu.piv[j] != 0) std::swap(b[j], b[j + lu.piv[j]]);
        const int km = std::min(kl, n - 1 - j);
        for (int p = 1; p <= km; ++p) b[j + p] -= lu.at(j + p, j) * b[j];
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        const int ju = std::min(n - 1, i + kuf);
        for (int c = i + 1; c <= ju; ++c) s -= lu.at(i, c) * b[c];
        b[i] = s / lu.at(i, i);
    }
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

std::vector<double> apply_system(const PentadiagonalSystem& sys, const std::vector<double>& v) {
    const int n = sys.dim();
    std::vector<double> y(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = std::max(0, i - ku); j <= std::min(n - 1, i + kl); ++j)
            y[i] += sys.entry(i, j) * v[j];
    return y;
}

} // namespace

double PentadiagonalSystem::entry(int i, int j) const {
    const int d = dim();
    if (i < 0 || j < 0 || i >= d || j >= d) return 0.0;
    const int last = d - 1;
    if (i == last) {
        if (j == last) return -F;
        if (j == last - 2) return -2.0;  // anomalous doubled entry, as printed
        return 0.0;
    }
    if (j == last) return i == last - 2 ? -1.0 : 0.0;
    const int bi = i / 2, ri = i % 2;
    const int bj = j / 2, rj = j % 2;
    if (bi == bj) {
        if (ri == rj) return -F;
        return ri == 0 ? -xi : xi;
    }
    if (std::abs(bi - bj) == 1 && ri == rj) return -1.0;
    return 0.0;
}

std::vector<double> PentadiagonalSystem::dense() const {
    const int d = dim();
    std::vector<double> out(static_cast<size_t>(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out[static_cast<size_t>(i) * d + j] = entry(i, j);
    return out;
}

PentadiagonalSystem build_real_system(int n, double F, double xi) {
    if (n < 0) throw std::domain_error("build_real_system: n must be >= 0");
    return PentadiagonalSystem{n, F, xi};
}

double real_system_determinant(int n, double F, double xi) {
    return determinant(factor(build_real_system(n, F, xi)));
}

std::vector<double> null_vector(const PentadiagonalSystem& sys) {
    const int n = sys.dim();
    const BandLU lu = factor(sys);
    const double scale = 2.0 + std::abs(sys.F) + std::abs(sys.xi);

    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = 1.0 + 0.25 * std::sin(1.0 + i);
    double resid = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 3; ++it) {
        solve_in_place(lu, v);
        const double nv = norm2(v);
        if (nv == 0.0) break;
        for (auto& x : v) x /= nv;
        resid = norm2(apply_system(sys, v));
        if (resid <= 1e-10 * scale) break;
    }
    if (resid > 1e-7 * scale)
        throw InconsistencyError("no null vector at (F, xi) = (" + std::to_string(sys.F) +
                                 ", " + std::to_string(sys.xi) + "): residual " +
                                 std::to_string(resid));
    return v;
}

double verify_matrix_chebyshev(int n, double F, double xi) {
    const PentadiagonalSystem sys = build_real_system(n, F, xi);
    const auto v = null_vector(sys);

    const cheby::Mat2 X{{-F, -xi, xi, -F}};
    const cheby::Mat2 half = 0.5 * X;
    std::array<double, 2> c0{v[0], v[1]};
    const double gamma = v[sys.dim() - 1];

    // c_k = U_k(X/2) c_0, k = 0..n+1
    std::vector<std::array<double, 2>> c(n + 2);
    for (int k = 0; k <= n + 1; ++k) {
        const cheby::Mat2 u = cheby::cheb_u_mat(k, half);
        c[k] = {u(0, 0) * c0[0] + u(0, 1) * c0[1], u(1, 0) * c0[0] + u(1, 1) * c0[1]};
    }

    const auto mul = [&](const std::array<double, 2>& w) {
        return std::array<double, 2>{X(0, 0) * w[0] + X(0, 1) * w[1],
                                     X(1, 0) * w[0] + X(1, 1) * w[1]};
    };

    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        const auto xc = mul(c[k]);
        for (int r = 0; r < 2; ++r) {
            double res = xc[r] - c[k + 1][r];
            if (k > 0) res -= c[k - 1][r];
            worst = std::max(worst, std::abs(res));
        }
    }
    {
        // block row n closes on the anomalous column: c_{n+1} = gamma (1, 0)
        const auto xc = mul(c[n]);
        double res0 = xc[0] - gamma;
        double res1 = xc[1];
        if (n > 0) { res0 -= c[n - 1][0]; res1 -= c[n - 1][1]; }
        worst = std::max(worst, std::max(std::abs(res0), std::abs(res1)));
    }
    // anomalous last row: -2 (c_n)_x - F gamma = 0
    worst = std::max(worst, std::abs(-2.0 * c[n][0] - sys.F * gamma));
    return worst;
}

std::vector<double> determinant_roots(int n, double xi) {
    const double lim = 2.0 + std::abs(xi);
    const int points = 20 * (n + 2);
    const auto det = [&](double F) { return real_system_determinant(n, F, xi); };

    std::vector<double> grid(points + 1), val(points + 1);
    double scale = 0.0;
    for (int i = 0; i <= points; ++i) {
        grid[i] = -lim + 2.0 * lim * i / points;
        val[i] = det(grid[i]);
        if (val[i] == 0.0) {
            grid[i] += 1e-9 * lim;
            val[i] = det(grid[i]);
        }
        scale = std::max(scale, std::abs(val[i]));
    }

    std::vector<double> roots;
    const auto bisect = [&](double lo, double hi, double flo) {
        for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = det(mid);
            if ((flo < 0.0) == (fm < 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        roots.push_back(0.5 * (lo + hi));
    };
    // fine subgrid inside flagged cells: near a critical coupling several
    // zeros can share one cell
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
            if ((prev_v < 0.0) != (v < 0.0)) bisect(prev_x, x, prev_v);
            prev_x = x;
            prev_v = v;
        }
    };

    const double tiny = 1e-7 * std::max(1.0, scale);
    for (int i = 0; i < points; ++i) {
        if ((val[i] < 0.0) != (val[i + 1] < 0.0) || std::abs(val[i]) <= tiny ||
            std::abs(val[i + 1]) <= tiny)
            fine_scan(grid[i], grid[i + 1]);
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> unique;
    for (double r : roots)
        if (unique.empty() || std::abs(unique.back() - r) > 5e-12 * (1.0 + std::abs(r)))
            unique.push_back(r);
    return unique;
}

} // namespace ptwell::realform
