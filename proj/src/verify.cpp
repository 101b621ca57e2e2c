#include "ptwell/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ptwell/metric.hpp"
#include "ptwell/realform.hpp"
#include "ptwell/secular.hpp"
#include "ptwell/spectral.hpp"

namespace ptwell::verify {

namespace {

using secular::Parity;

std::string num(double v) {
    std::ostringstream s;
    s.precision(12);
    s << v;
    return s.str();
}

ModelSpec q0(int N) { return {N, 0, {}}; }
ModelSpec q1(int N, int p, int q) { return {N, 1, {Rational(p, q)}}; }

// worst deviation between two sorted multisets of equal size
double multiset_distance(std::vector<double> a, std::vector<double> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

std::vector<double> sorted_reals(const Spectrum& s) {
    std::vector<double> out;
    for (size_t i = 0; i < s.F.size(); ++i)
        if (s.real_flag[i]) out.push_back(s.F[i].real());
    std::sort(out.begin(), out.end());
    return out;
}

// closed forms of the four exactly solvable q = 0 wells
std::vector<double> closed_form_q0(int N, double xi) {
    switch (N) {
        case 3: {
            const double r = std::sqrt(1.0 - xi * xi);
            return {-r, r};
        }
        case 4: {
            const double r = std::sqrt(2.0 - xi * xi);
            return {-r, 0.0, r};
        }
        case 5: {
            const double s = std::sqrt(5.0 - 16.0 * xi * xi);
            const double a = 0.5 * std::sqrt(6.0 - 4.0 * xi * xi + 2.0 * s);
            const double b = 0.5 * std::sqrt(6.0 - 4.0 * xi * xi - 2.0 * s);
            return {-a, -b, b, a};
        }
        case 6: {
            const double s = std::sqrt(1.0 - 4.0 * xi * xi);
            const double a = std::sqrt(2.0 - xi * xi + s);
            const double b = std::sqrt(2.0 - xi * xi - s);
            return {-a, -b, 0.0, b, a};
        }
        default:
            throw std::domain_error("no closed form recorded");
    }
}

double closed_form_xi_crit(int N) {
    switch (N) {
        case 3: return 1.0;
        case 4: return std::numbers::sqrt2;
        case 5: return std::sqrt(5.0) / 4.0;
        case 6: return 0.5;
        default: throw std::domain_error("no closed form recorded");
    }
}

void check_closed_form_spectra(std::vector<Check>& out) {
    for (int N : {3, 4, 5, 6}) {
        double worst = 0.0;
        const double xc = closed_form_xi_crit(N);
        for (int i = 0; i <= 16; ++i) {
            const double xi = xc * i / 16.0 * 0.999;  // stay on the real side
            worst = std::max(worst, multiset_distance(sorted_reals(spectrum(q0(N), xi)),
                                                      closed_form_q0(N, xi)));
        }
        out.push_back({"closed-form spectrum, N=" + std::to_string(N) + " q=0",
                       worst <= 1e-9, "max deviation " + num(worst)});
    }
}

void check_critical_tables(std::vector<Check>& out) {
    const std::vector<std::pair<int, double>> evens = {
        {4, 5.657}, {6, 4.500}, {8, 4.463}, {10, 4.461}, {12, 4.463}};
    const std::vector<std::pair<int, double>> odds = {
        {3, 2.250}, {5, 3.494}, {7, 3.946}, {9, 4.148}};

    double worst = 0.0;
    for (const auto& [N, zq] : evens) {
        const auto rep = critical_coupling(q0(N), default_xi_max(q0(N)));
        worst = std::max(worst, rep ? std::abs(rep->z_crit - zq) : 1e9);
    }
    out.push_back({"critical couplings, even N in {4,6,8,10,12}", worst <= 2e-3,
                   "max |Z_crit - reference| " + num(worst)});

    worst = 0.0;
    std::vector<double> odd_seq;
    for (const auto& [N, zq] : odds) {
        const auto rep = critical_coupling(q0(N), default_xi_max(q0(N)));
        const double z = rep ? rep->z_crit : 1e9;
        odd_seq.push_back(z);
        worst = std::max(worst, std::abs(z - zq));
    }
    out.push_back({"critical couplings, odd N in {3,5,7,9}", worst <= 2e-3,
                   "max |Z_crit - reference| " + num(worst)});
    bool increasing = true;
    for (size_t i = 1; i < odd_seq.size(); ++i)
        increasing = increasing && odd_seq[i] > odd_seq[i - 1];
    out.push_back({"odd-N critical sequence strictly increasing", increasing, ""});

    bool window = true;
    std::ostringstream det;
    for (int N : {20, 40}) {
        const auto rep = critical_coupling(q0(N), default_xi_max(q0(N)));
        const double z = rep ? rep->z_crit : 0.0;
        det << "Z_crit(" << N << ")=" << num(z) << ' ';
        window = window && z >= 4.40 && z <= 4.55;
    }
    out.push_back({"large-N critical couplings inside [4.40, 4.55]", window, det.str()});
}

void check_printed_determinants(std::vector<Check>& out) {
    // coefficient vectors (ascending in F) of the two printed degree-7 forms
    const auto coeffs_a = [](double xi) {
        return std::vector<double>{0.0, -3 * xi * xi + 4, 0.0, 4 * xi * xi - 10,
                                   0.0, -(xi * xi - 6), 0.0, -1.0};
    };
    const auto coeffs_b = [](double xi) {
        const double x2 = xi * xi, x4 = x2 * x2;
        return std::vector<double>{0.0, 2 * x4 + x2 + 4, 0.0, -x4 + 4 * x2 - 10,
                                   0.0, -(2 * x2 - 6), 0.0, -1.0};
    };

    // deterministic pseudo-random xi probes
    double worst_a = 0.0, worst_b = 0.0;
    unsigned state = 12345u;
    const auto next_xi = [&state]() {
        state = state * 1664525u + 1013904223u;
        return 2.0 * (state >> 8) / double(1u << 24);
    };
    for (int probe = 0; probe < 20; ++probe) {
        const double xi = next_xi();
        const auto pa = certify_real(char_poly(q1(8, 5, 8).hamiltonian(xi)));
        const auto pb = certify_real(char_poly(q1(8, 3, 8).hamiltonian(xi)));
        const auto ra = coeffs_a(xi);
        const auto rb = coeffs_b(xi);
        for (int k = 0; k < 8; ++k) {
            const double sa = std::max(1.0, std::abs(ra[k]));
            const double sb = std::max(1.0, std::abs(rb[k]));
            worst_a = std::max(worst_a, std::abs(pa[k] - ra[k]) / sa);
            worst_b = std::max(worst_b, std::abs(pb[k] - rb[k]) / sb);
        }
    }
    out.push_back({"printed determinant, N=8 ell=5/8 (20 probes)", worst_a <= 1e-10,
                   "max rel coeff deviation " + num(worst_a)});
    out.push_back({"printed determinant, N=8 ell=3/8 (20 probes)", worst_b <= 1e-10,
                   "max rel coeff deviation " + num(worst_b)});
}

void check_exceptional_points(std::vector<Check>& out) {
    {
        const auto eps = exceptional_points(q1(6, 1, 2), 0.0, 2.0, 1e-9);
        const bool ok = eps.size() == 1 &&
                        std::abs(eps[0].xi_crit() - std::sqrt(1.5)) <= 1e-6 &&
                        eps[0].F_star.size() == 1 && std::abs(eps[0].F_star[0]) <= 1e-4;
        out.push_back({"exceptional point, N=6 ell=1/2 (xi*=sqrt(3/2), F*=0)", ok,
                       eps.empty() ? "no event found"
                                   : "xi*=" + num(eps[0].xi_crit())});
    }
    {
        const auto eps = exceptional_points(q1(8, 1, 2), 0.0, 2.0, 1e-9);
        bool ok = eps.size() == 1 && std::abs(eps[0].xi_crit() - 0.845479352) <= 1e-6 &&
                  eps[0].F_star.size() == 2;
        if (ok)
            for (const auto& f : eps[0].F_star)
                ok = ok && std::abs(std::abs(f.real()) - 1.0516722) <= 1e-5;
        out.push_back({"exceptional point, N=8 ell=1/2 (xi*=0.845479352, F*=+-1.0516722)",
                       ok, eps.empty() ? "no event found" : "xi*=" + num(eps[0].xi_crit())});
    }
    {
        const auto rep = imaginary_axis_crossing(q1(8, 1, 2), 1.0, 5.0, 1e-9);
        bool ok = rep.has_value() && std::abs(rep->xi_crit() - 3.2222152) <= 1e-5 &&
                  rep->F_star.size() == 2 &&
                  std::abs(std::abs(rep->F_star[0].imag()) - 2.1466382) <= 1e-5;
        out.push_back({"imaginary-axis crossing, N=8 ell=1/2 (xi=3.2222152, F=+-2.1466382i)",
                       ok, rep ? "xi=" + num(rep->xi_crit()) : "no crossing found"});
    }
    {
        const auto eps = exceptional_points(q1(8, 5, 8), 0.0, 2.0, 1e-9);
        const bool ok = eps.size() == 1 && std::abs(eps[0].xi_crit() - 1.15470) <= 1e-4 &&
                        eps[0].F_star.size() == 1;
        out.push_back({"exceptional point, N=8 ell=5/8 (xi*=1.15470, one merger)", ok,
                       eps.empty() ? "no event found" : "xi*=" + num(eps[0].xi_crit())});
    }
    {
        const auto eps = exceptional_points(q1(8, 3, 8), 0.0, 2.0, 1e-9);
        bool ok = eps.size() == 1 && std::abs(eps[0].xi_crit() - 0.5875692) <= 1e-5 &&
                  eps[0].F_star.size() == 2;
        if (ok)
            for (const auto& f : eps[0].F_star)
                ok = ok && std::abs(std::abs(f.real()) - 1.1407164) <= 1e-5;
        out.push_back({"exceptional point, N=8 ell=3/8 (xi*=0.5875692, two mergers)", ok,
                       eps.empty() ? "no event found" : "xi*=" + num(eps[0].xi_crit())});
    }
}

std::vector<Complex> positive_half_y(const Spectrum& s) {
    std::vector<Complex> y;
    for (const auto& f : s.F)
        if (f.real() > 1e-9 || (std::abs(f.real()) <= 1e-9 && f.imag() > 1e-9))
            y.push_back(f * f);
    std::sort(y.begin(), y.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    return y;
}

void check_quadruplet(std::vector<Check>& out) {
    // The published quadruplet's middle pair sits within ~5e-10 in xi of its
    // exceptional point, closer than the published coupling's own last digit;
    // the artifact reports its measured classification at both couplings and
    // pins the quadruplet against values recomputed in quad precision.
    const std::vector<double> published = {0.5173571919, 1.810807242, 1.810964520,
                                           3.356678112};
    const std::vector<Complex> recomputed_sub = {
        {0.517357191451668, 0.0},
        {1.810885875620256, -7.240402567506595e-5},
        {1.810885875620256, +7.240402567506595e-5},
        {3.356678123626683, 0.0}};
    {
        const Spectrum s = spectrum(q1(10, 1, 2), 0.50209209);
        const auto y = positive_half_y(s);
        bool ok = y.size() == 4;
        double worst_outer = 0.0, worst_pin = 0.0, worst_mid = 0.0;
        if (ok) {
            worst_outer = std::max(std::abs(y[0] - published[0]),
                                   std::abs(y[3] - published[3]));
            for (int i = 0; i < 4; ++i)
                worst_pin = std::max(worst_pin, std::abs(y[i] - recomputed_sub[i]));
            worst_mid = std::max(std::abs(y[1] - published[1]),
                                 std::abs(y[2] - published[2]));
        }
        ok = ok && worst_outer <= 1e-6 && worst_pin <= 1e-7 && worst_mid <= 2e-4;
        std::ostringstream det;
        det << "outer dev " << num(worst_outer) << ", quad-precision dev "
            << num(worst_pin) << ", published-middle dev " << num(worst_mid)
            << " (middle pair measured complex; see acceptance criterion 5)";
        out.push_back({"N=10 ell=1/2 quadruplet at xi=0.50209209", ok, det.str()});
    }
    {
        const Spectrum s = spectrum(q1(10, 1, 2), 0.502092091);
        double im = 0.0;
        for (const auto& f : s.F) im = std::max(im, std::abs((f * f).imag()));
        // quad-precision value 8.453026307e-5 (published estimate: 5.27e-5)
        const bool ok = std::abs(im - 8.453026307e-5) <= 1e-7;
        out.push_back({"N=10 ell=1/2 complex pair at xi=0.502092091", ok,
                       "measured |Im y| = " + num(im) +
                           " vs quad-precision 8.453026307e-5"});
    }
}

void check_robust_level(std::vector<Check>& out) {
    bool ok = true;
    std::ostringstream det;
    for (int N : {4, 6, 8, 10}) {
        for (int i = 1; i <= 10; ++i) {
            const double xi = i * 1.0;
            const Spectrum s = spectrum(q0(N), xi);
            double best = 1e9;
            for (const auto& f : s.F) best = std::min(best, std::abs(f));
            if (best > 1e-9) {
                ok = false;
                det << "N=" << N << " xi=" << xi << " min|F|=" << num(best) << ' ';
            }
        }
        const double E = to_physical_energy(Complex(0.0), N).real();
        if (E != N * N / 2.0) ok = false;
    }
    out.push_back({"robust F=0 level, even N q=0, xi in [0,10]; E = N^2/2", ok, det.str()});
}

void check_route_equivalence(std::vector<Check>& out) {
    double worst_even = 0.0, worst_odd = 0.0, worst_real = 0.0;
    for (int n = 0; n <= 6; ++n) {
        for (int i = 0; i <= 6; ++i) {
            {
                const double xi = 0.05 + 2.0 * closed_form_xi_crit(4) * i / 6.0;
                const int N = secular::lattice_points(Parity::even_lattice, n);
                const auto mr = secular::matching_roots(Parity::even_lattice, n, xi);
                const auto cr = sorted_reals(spectrum(q0(N), xi));
                worst_even = std::max(worst_even, multiset_distance(mr, cr));
                const auto zeros = realform::determinant_roots(n, xi);
                for (double r : cr) {
                    double best = 1e9;
                    for (double z : zeros) best = std::min(best, std::abs(z - r));
                    worst_real = std::max(worst_real, best);
                }
            }
            {
                const double xi = 0.05 + 2.0 * i / 6.0;
                const int N = secular::lattice_points(Parity::odd_lattice, n);
                const auto mr = secular::matching_roots(Parity::odd_lattice, n, xi);
                const auto cr = sorted_reals(spectrum(q0(N), xi));
                worst_odd = std::max(worst_odd, multiset_distance(mr, cr));
            }
        }
    }
    out.push_back({"route equivalence even lattice (matching vs char poly)",
                   worst_even <= 1e-8, "max deviation " + num(worst_even)});
    out.push_back({"route equivalence odd lattice (matching vs char poly)",
                   worst_odd <= 1e-8, "max deviation " + num(worst_odd)});
    out.push_back({"real pentadiagonal determinant vanishes at the same points",
                   worst_real <= 1e-8, "max deviation " + num(worst_real)});
}

void check_symmetries(std::vector<Check>& out) {
    double worst_conj = 0.0, worst_flip = 0.0, worst_imag = 0.0;
    const std::vector<ModelSpec> models = {q0(5),        q0(8),        q0(13),
                                           q1(8, 5, 8),  q1(8, 3, 8),  q1(10, 1, 2),
                                           q1(12, 1, 2), q1(14, 3, 7), q0(24)};
    for (const auto& m : models) {
        for (double xi : {0.3, 0.9, 1.8}) {
            const Spectrum s = spectrum(m, xi);
            for (const auto& f : s.F) {
                double dc = 1e9, df = 1e9;
                for (const auto& g : s.F) {
                    dc = std::min(dc, std::abs(std::conj(f) - g));
                    df = std::min(df, std::abs(f + g));
                }
                worst_conj = std::max(worst_conj, dc);
                worst_flip = std::max(worst_flip, df);
            }
            const auto p = char_poly(m.hamiltonian(xi));
            double im = 0.0;
            for (const auto& c : p.coeffs()) im = std::max(im, std::abs(c.imag()));
            worst_imag = std::max(worst_imag, im / std::max(1.0, p.scale()));
        }
    }
    out.push_back({"spectra closed under conjugation (test matrix)", worst_conj <= 1e-9,
                   "max deviation " + num(worst_conj)});
    out.push_back({"spectra closed under F -> -F (test matrix)", worst_flip <= 1e-9,
                   "max deviation " + num(worst_flip)});
    out.push_back({"characteristic-polynomial imaginary defect <= 1e-12", worst_imag <= 1e-12,
                   "max relative defect " + num(worst_imag)});
}

void check_metric(std::vector<Check>& out) {
    const std::vector<std::pair<ModelSpec, double>> subcritical = {
        {q0(4), 0.5},      {q0(4), 1.2},      {q0(5), 0.4},     {q0(6), 0.3},
        {q0(7), 0.25},     {q0(8), 0.2},      {q1(6, 1, 2), 0.8},
        {q1(8, 5, 8), 0.9}, {q1(8, 3, 8), 0.4}, {q1(10, 1, 2), 0.3}};
    double worst_quasi = 0.0, worst_pseudo = 0.0;
    bool all_pd = true;
    for (const auto& [m, xi] : subcritical) {
        const auto H = m.hamiltonian(xi);
        const auto basis = biorthogonalize(H);
        const std::vector<double> ones(basis.dim(), 1.0);
        const auto theta = build_metric(basis, ones);
        worst_quasi = std::max(worst_quasi, verify_quasi_hermiticity(H, theta));
        worst_pseudo = std::max(worst_pseudo, verify_pseudo_hermiticity(H));
        all_pd = all_pd && positive_definite(theta);
    }
    out.push_back({"metric: quasi-Hermiticity residual <= 1e-10 (10 models)",
                   worst_quasi <= 1e-10, "max residual " + num(worst_quasi)});
    out.push_back({"metric: positive definite with unit weights (10 models)", all_pd, ""});
    out.push_back({"pseudo-Hermiticity defect exactly zero (10 models)",
                   worst_pseudo == 0.0, "max defect " + num(worst_pseudo)});

    // past the critical point there is no metric: the complex pair is
    // detected (the CLI refuses on it) and the constructed candidate fails
    // the quasi-Hermiticity condition
    bool refused = !spectrum(q0(4), 2.0).all_real();
    try {
        const auto H = q0(4).hamiltonian(2.0);
        const auto basis = biorthogonalize(H);
        const std::vector<double> ones(basis.dim(), 1.0);
        refused = refused && verify_quasi_hermiticity(H, build_metric(basis, ones)) > 1e-3;
    } catch (const DegeneracyError&) {
        // equally a refusal
    }
    out.push_back({"metric construction refused past xi_crit (N=4, xi=2)", refused, ""});
}

void check_continuum(std::vector<Check>& out) {
    const int Ns[] = {20, 40, 80};
    const auto rep = continuum_check(Ns, 3.0);
    bool ratios_ok = rep.ratios.size() == 2;
    std::ostringstream det;
    for (double r : rep.ratios) {
        ratios_ok = ratios_ok && std::abs(r - 0.25) <= 0.02;
        det << "ratio " << num(r) << ' ';
    }
    out.push_back({"continuum convergence: E1 error ratio 0.25 +- 0.02", ratios_ok, det.str()});
    out.push_back({"fully real spectra at Z=3.0 for N in {20,40,80}", rep.probe_all_real, ""});
}

void check_large_xi_asymptote(std::vector<Check>& out) {
    const Spectrum s = spectrum(q1(8, 5, 8), 50.0);
    const std::vector<double> target = {-std::sqrt(3.0), -1.0, 0.0, 1.0, std::sqrt(3.0)};
    const auto reals = sorted_reals(s);
    bool ok = reals.size() == target.size();
    double worst = 0.0;
    if (ok)
        for (size_t i = 0; i < target.size(); ++i)
            worst = std::max(worst, std::abs(reals[i] - target[i]));
    ok = ok && worst <= 0.05;
    out.push_back({"N=8 ell=5/8 large-coupling real quintet {0,+-1,+-sqrt3} at xi=50", ok,
                   "real count " + std::to_string(reals.size()) + ", max deviation " +
                       num(worst)});
}

void check_printed_form_divergence(std::vector<Check>& out) {
    // documented behavior: the printed combined even form does not vanish at
    // the matching-determinant zero (n=0, xi=1, F=1), the odd form does
    const double det_even = secular::matching_det_even(0, 1.0, 1.0);
    const Complex printed = secular::secular_printed_even(0, 1.0, 1.0);
    const Complex printed_odd = secular::secular_printed_odd(0, 0.6, 0.8);
    const bool ok = std::abs(det_even) <= 1e-12 && std::abs(printed) > 0.5 &&
                    std::abs(printed_odd) <= 1e-12;
    out.push_back({"printed secular forms: documented even-form divergence at n=0", ok,
                   "matching det " + num(det_even) + ", printed even form |" +
                       num(std::abs(printed)) + "|"});
}

void check_eigenvector_residuals(std::vector<Check>& out) {
    double worst = 0.0;
    for (int n = 0; n <= 4; ++n) {
        for (double xi : {0.2, 0.6}) {
            for (const auto parity : {Parity::even_lattice, Parity::odd_lattice}) {
                const int N = secular::lattice_points(parity, n);
                const auto roots = secular::matching_roots(parity, n, xi);
                const auto H = q0(N).hamiltonian(xi);
                for (double F : roots) {
                    const auto m = parity == Parity::even_lattice
                                       ? secular::matching_matrix_even(n, F, xi)
                                       : secular::matching_matrix_odd(n, F, xi);
                    const auto v = secular::eigenvector(parity, n, F, xi,
                                                        secular::matching_normalization(m));
                    auto r = H.apply(v);
                    double norm = 0.0, res = 0.0;
                    for (size_t k = 0; k < v.size(); ++k) {
                        r[k] -= F * v[k];
                        res = std::max(res, std::abs(r[k]));
                        norm = std::max(norm, std::abs(v[k]));
                    }
                    worst = std::max(worst, res / std::max(norm, 1e-300));
                }
            }
        }
    }
    out.push_back({"closed-form eigenvectors satisfy the full matrix equation",
                   worst <= 1e-10, "max residual " + num(worst)});
}

void check_matrix_chebyshev(std::vector<Check>& out) {
    double worst = 0.0;
    worst = std::max(worst, realform::verify_matrix_chebyshev(0, 1.0, 1.0));
    worst = std::max(worst, realform::verify_matrix_chebyshev(2, -2.0 * std::cos(std::numbers::pi / 8.0), 0.0));
    worst = std::max(worst, realform::verify_matrix_chebyshev(1, std::sqrt(3.0), 0.0));
    out.push_back({"matrix-argument Chebyshev closed form at sample eigenpoints",
                   worst <= 1e-10, "max residual " + num(worst)});
}

} // namespace

std::vector<Check> run_all() {
    std::vector<Check> checks;
    check_closed_form_spectra(checks);
    check_critical_tables(checks);
    check_printed_determinants(checks);
    check_exceptional_points(checks);
    check_quadruplet(checks);
    check_robust_level(checks);
    check_route_equivalence(checks);
    check_symmetries(checks);
    check_metric(checks);
    check_continuum(checks);
    check_large_xi_asymptote(checks);
    check_printed_form_divergence(checks);
    check_eigenvector_residuals(checks);
    check_matrix_chebyshev(checks);
    return checks;
}

} // namespace ptwell::verify
