#include "ptwell/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace ptwell {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_real_value(Complex f, double tol = 1e-9) {
    return std::abs(f.imag()) <= tol * std::max(1.0, std::abs(f));
}

std::vector<double> real_values(const Spectrum& s) {
    std::vector<double> out;
    for (size_t i = 0; i < s.F.size(); ++i)
        if (s.real_flag[i]) out.push_back(s.F[i].real());
    std::sort(out.begin(), out.end());
    return out;
}

// O(n^3) Hungarian algorithm over an explicit cost matrix.
std::vector<int> hungarian(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) { minv[j] = cur; way[j] = j0; }
                if (minv[j] < delta) { delta = minv[j]; j1 = j; }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) { u[p[j]] += delta; v[j] -= delta; }
                else minv[j] -= delta;
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> match(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j] > 0) match[p[j] - 1] = j - 1;
    return match;
}

double assignment_cost(const std::vector<Complex>& from, const std::vector<Complex>& to,
                       const std::vector<int>& perm) {
    double c = 0.0;
    for (size_t i = 0; i < from.size(); ++i) c += std::abs(from[i] - to[perm[i]]);
    return c;
}

// Reals present at `sub` but lost at `super`, found by optimal assignment
// with one dummy slot per lost value.
std::vector<double> lost_reals(const std::vector<double>& sub,
                               const std::vector<double>& super) {
    const int n = static_cast<int>(sub.size());
    const int h = static_cast<int>(super.size());
    if (n <= h) return {};
    std::vector<std::vector<double>> cost(n, std::vector<double>(n, 1.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < h; ++j) cost[i][j] = std::abs(sub[i] - super[j]);
    const auto match = hungarian(cost);
    std::vector<double> lost;
    for (int i = 0; i < n; ++i)
        if (match[i] >= h) lost.push_back(sub[i]);
    std::sort(lost.begin(), lost.end());
    return lost;
}

std::vector<Complex> pair_midpoints(const std::vector<double>& lost) {
    std::vector<Complex> mids;
    for (size_t i = 0; i + 1 < lost.size(); i += 2)
        mids.emplace_back(0.5 * (lost[i] + lost[i + 1]), 0.0);
    return mids;
}

} // namespace

int Spectrum::real_count() const {
    int c = 0;
    for (bool b : real_flag)
        if (b) ++c;
    return c;
}

Spectrum spectrum(const ModelSpec& model, double xi) {
    const ScaledHamiltonian H = model.hamiltonian(xi);
    const RootSet rs = hamiltonian_roots(H);
    Spectrum s;
    s.model = model;
    s.xi = xi;
    s.F = rs.roots;
    s.real_flag.resize(s.F.size());
    s.E.resize(s.F.size());
    for (size_t i = 0; i < s.F.size(); ++i) {
        s.real_flag[i] = rs.is_real(static_cast<int>(i));
        s.E[i] = to_physical_energy(s.F[i], model.N);
    }
    return s;
}

namespace detail {

std::vector<int> assign_tracks(const std::vector<Complex>& from,
                               const std::vector<Complex>& to) {
    const int n = static_cast<int>(from.size());
    // greedy nearest-neighbour, globally closest pair first (index order
    // would mis-assign through collisions, e.g. a merger at the origin)
    std::vector<int> greedy(n, -1);
    std::vector<bool> to_taken(n, false);
    for (int step = 0; step < n; ++step) {
        double best = kInf;
        int bi = -1, bj = -1;
        for (int i = 0; i < n; ++i) {
            if (greedy[i] >= 0) continue;
            for (int j = 0; j < n; ++j) {
                if (to_taken[j]) continue;
                const double d = std::abs(from[i] - to[j]);
                if (d < best) { best = d; bi = i; bj = j; }
            }
        }
        greedy[bi] = bj;
        to_taken[bj] = true;
    }
    // optimal assignment as the fallback yardstick
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cost[i][j] = std::abs(from[i] - to[j]);
    const auto optimal = hungarian(cost);
    const double gc = assignment_cost(from, to, greedy);
    const double oc = assignment_cost(from, to, optimal);
    return gc > 2.0 * oc ? optimal : greedy;
}

} // namespace detail

bool SweepTable::track_is_real(int t, int i, double tol) const {
    return is_real_value(tracks[t][i], tol);
}

namespace {

// Eigenvalues at xi_b arranged to continue the tracks holding `prev` values
// at xi_a; recurses through the midpoint when a track jumps too far.
std::vector<Complex> continue_tracks(const ModelSpec& model, const std::vector<Complex>& prev,
                                     double xi_a, double xi_b, int depth) {
    const Spectrum s = spectrum(model, xi_b);
    const auto perm = detail::assign_tracks(prev, s.F);
    std::vector<Complex> arranged(prev.size());
    double worst = 0.0;
    for (size_t t = 0; t < prev.size(); ++t) {
        arranged[t] = s.F[perm[t]];
        worst = std::max(worst, std::abs(arranged[t] - prev[t]));
    }
    const double dxi = xi_b - xi_a;
    const double bound = 4.0 * dxi + 2.0 * std::sqrt(dxi) + 1e-9;
    if (worst > bound && depth < 12) {
        const double mid = 0.5 * (xi_a + xi_b);
        const auto half = continue_tracks(model, prev, xi_a, mid, depth + 1);
        return continue_tracks(model, half, mid, xi_b, depth + 1);
    }
    return arranged;
}

} // namespace

SweepTable sweep(const ModelSpec& model, std::vector<double> xi_grid) {
    if (xi_grid.empty()) throw std::domain_error("sweep: empty grid");
    for (size_t i = 1; i < xi_grid.size(); ++i)
        if (!(xi_grid[i] > xi_grid[i - 1]))
            throw std::domain_error("sweep: grid must be strictly increasing");

    SweepTable table;
    table.model = model;
    table.xi = std::move(xi_grid);

    const Spectrum first = spectrum(model, table.xi.front());
    const int m = static_cast<int>(first.F.size());
    table.tracks.assign(m, std::vector<Complex>(table.xi.size()));
    std::vector<Complex> cur = first.F;
    for (int t = 0; t < m; ++t) table.tracks[t][0] = cur[t];

    for (size_t i = 1; i < table.xi.size(); ++i) {
        cur = continue_tracks(model, cur, table.xi[i - 1], table.xi[i], 0);
        for (int t = 0; t < m; ++t) table.tracks[t][i] = cur[t];
    }
    return table;
}

namespace {

// bisect a boolean predicate flip inside [lo, hi], pred(lo) == true
std::pair<double, double> bisect_pred(const std::function<bool(double)>& pred, double lo,
                                      double hi, double tol) {
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (pred(mid)) lo = mid; else hi = mid;
    }
    return {lo, hi};
}

} // namespace

std::optional<CriticalReport> critical_coupling(const ModelSpec& model, double xi_max,
                                                double tol) {
    if (!(tol > 0.0)) throw std::domain_error("critical_coupling: tol must be positive");
    const auto all_real = [&](double xi) { return spectrum(model, xi).all_real(); };
    if (!all_real(0.0))
        throw std::domain_error("critical_coupling: spectrum not fully real at xi = 0");

    // scan for the earliest failure first; reality windows need not be monotone
    const int points = 256;
    double lo = 0.0, hi = -1.0;
    for (int i = 1; i <= points; ++i) {
        const double xi = xi_max * i / points;
        if (!all_real(xi)) { hi = xi; lo = xi_max * (i - 1) / points; break; }
    }
    if (hi < 0.0) return std::nullopt;

    const auto [blo, bhi] = bisect_pred(all_real, lo, hi, tol);
    CriticalReport rep;
    rep.kind = CriticalKind::first_complexification;
    rep.xi_lo = blo;
    rep.xi_hi = bhi;
    rep.z_crit = coupling_Z(rep.xi_crit(), model.N);
    rep.F_star = pair_midpoints(lost_reals(real_values(spectrum(model, blo)),
                                           real_values(spectrum(model, bhi))));
    return rep;
}

std::vector<CriticalReport> exceptional_points(const ModelSpec& model, double xi_lo,
                                               double xi_hi, double tol) {
    if (!(xi_hi > xi_lo)) throw std::domain_error("exceptional_points: empty range");
    const int points = 256;
    std::vector<CriticalReport> events;
    double prev_xi = xi_lo;
    int prev_count = spectrum(model, xi_lo).real_count();
    for (int i = 1; i <= points; ++i) {
        const double xi = xi_lo + (xi_hi - xi_lo) * i / points;
        const int count = spectrum(model, xi).real_count();
        if (count != prev_count) {
            const int base = prev_count;
            const auto same_count = [&](double x) {
                return spectrum(model, x).real_count() == base;
            };
            const auto [blo, bhi] = bisect_pred(same_count, prev_xi, xi, tol);
            CriticalReport rep;
            rep.kind = CriticalKind::pair_merger;
            rep.xi_lo = blo;
            rep.xi_hi = bhi;
            rep.z_crit = coupling_Z(rep.xi_crit(), model.N);
            const Spectrum a = spectrum(model, blo);
            const Spectrum b = spectrum(model, bhi);
            const bool losing = b.real_count() < a.real_count();
            const auto& sub = losing ? a : b;    // side with more reals
            const auto& super = losing ? b : a;
            rep.F_star = pair_midpoints(lost_reals(real_values(sub), real_values(super)));
            events.push_back(std::move(rep));
        }
        prev_xi = xi;
        prev_count = count;
    }
    return events;
}

std::optional<CriticalReport> imaginary_axis_crossing(const ModelSpec& model, double xi_lo,
                                                      double xi_hi, double tol) {
    if (!(xi_hi > xi_lo)) throw std::domain_error("imaginary_axis_crossing: empty range");

    const auto landed = [&](double xi) {
        const Spectrum s = spectrum(model, xi);
        for (size_t i = 0; i < s.F.size(); ++i)
            if (!s.real_flag[i] &&
                std::abs(s.F[i].real()) <= 1e-9 * std::max(1.0, std::abs(s.F[i])))
                return true;
        return false;
    };

    // the landing may precede the requested range; search down to 0 if so
    double start = xi_lo;
    if (landed(xi_lo)) start = 0.0;

    const int points = 256;
    double prev = start;
    bool found = false;
    double cell_lo = 0, cell_hi = 0;
    bool saw_complex = false;
    for (int i = 1; i <= points; ++i) {
        const double xi = start + (xi_hi - start) * i / points;
        const Spectrum s = spectrum(model, xi);
        if (s.real_count() < static_cast<int>(s.F.size())) saw_complex = true;
        if (landed(xi)) {
            cell_lo = prev;
            cell_hi = xi;
            found = true;
            break;
        }
        prev = xi;
    }
    if (!found || !saw_complex) return std::nullopt;

    const auto not_landed = [&](double x) { return !landed(x); };
    const auto [blo, bhi] = bisect_pred(not_landed, cell_lo, cell_hi, tol);

    CriticalReport rep;
    rep.kind = CriticalKind::imaginary_axis_crossing;
    rep.xi_lo = blo;
    rep.xi_hi = bhi;
    rep.z_crit = coupling_Z(rep.xi_crit(), model.N);
    const Spectrum s = spectrum(model, bhi);
    double sum = 0.0;
    int cnt = 0;
    for (size_t i = 0; i < s.F.size(); ++i)
        if (!s.real_flag[i] &&
            std::abs(s.F[i].real()) <= 1e-9 * std::max(1.0, std::abs(s.F[i]))) {
            sum += std::abs(s.F[i].imag());
            ++cnt;
        }
    if (cnt > 0) {
        const double y = sum / cnt;
        rep.F_star = {Complex(0.0, y), Complex(0.0, -y)};
    }
    return rep;
}

double default_xi_max(const ModelSpec& model) {
    for (int i = 1; i <= 64; ++i) {
        const double xi = 8.0 * i / 64;
        if (!spectrum(model, xi).all_real()) return 4.0 * xi;
    }
    return 8.0;
}

std::vector<CriticalTableRow> critical_table(std::span<const int> Ns, double tol) {
    std::vector<CriticalTableRow> rows;
    for (int N : Ns) {
        if (N < 3) throw std::domain_error("critical_table: N must be >= 3");
        ModelSpec model{N, 0, {}};
        const auto rep = critical_coupling(model, default_xi_max(model), tol);
        CriticalTableRow row;
        row.N = N;
        row.even = N % 2 == 0;
        if (rep) {
            row.xi_crit = rep->xi_crit();
            row.z_crit = rep->z_crit;
            row.bracket_width = rep->bracket_width();
        } else {
            row.xi_crit = row.z_crit = std::numeric_limits<double>::quiet_NaN();
        }
        rows.push_back(row);
    }
    return rows;
}

ContinuumReport continuum_check(std::span<const int> Ns, double probe_Z) {
    ContinuumReport rep;
    rep.probe_Z = probe_Z;
    rep.probe_all_real = true;
    const double target = std::numbers::pi * std::numbers::pi / 4.0;
    for (int N : Ns) {
        ModelSpec model{N, 0, {}};
        const Spectrum sz = spectrum(model, 0.0);
        double e1 = kInf;
        for (const auto& e : sz.E) e1 = std::min(e1, e.real());
        rep.rows.push_back({N, e1, e1 - target});

        const Spectrum sp = spectrum(model, coupling_xi(probe_Z, N));
        if (!sp.all_real()) rep.probe_all_real = false;
    }
    for (size_t i = 0; i + 1 < rep.rows.size(); ++i)
        if (rep.rows[i + 1].N == 2 * rep.rows[i].N)
            rep.ratios.push_back(rep.rows[i + 1].error / rep.rows[i].error);
    return rep;
}

} // namespace ptwell
