#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ptwell/charpoly.hpp"
#include "ptwell/model.hpp"

namespace ptwell {

struct Spectrum {
    ModelSpec model;
    double xi = 0;
    std::vector<Complex> F;       // sorted by (Re, Im)
    std::vector<bool> real_flag;
    std::vector<Complex> E;       // physical energies

    int real_count() const;
    bool all_real() const { return real_count() == static_cast<int>(F.size()); }
};

Spectrum spectrum(const ModelSpec& model, double xi);

// Eigenvalue tracks over a strictly increasing xi grid.  tracks[t][i] is the
// eigenvalue of track t at grid point i; matching between neighbouring grid
// points is nearest-neighbour continuation with an optimal-assignment
// fallback, refined through midpoints when a track moves implausibly far.
struct SweepTable {
    ModelSpec model;
    std::vector<double> xi;
    std::vector<std::vector<Complex>> tracks;

    bool track_is_real(int t, int i, double tol = 1e-9) const;
};

SweepTable sweep(const ModelSpec& model, std::vector<double> xi_grid);

enum class CriticalKind { first_complexification, pair_merger, imaginary_axis_crossing };

struct CriticalReport {
    CriticalKind kind = CriticalKind::first_complexification;
    double xi_lo = 0;                // bracket: predicate flips across [lo, hi]
    double xi_hi = 0;
    double z_crit = 0;
    std::vector<Complex> F_star;     // merged-pair locations / crossing values

    double xi_crit() const { return 0.5 * (xi_lo + xi_hi); }
    double bracket_width() const { return xi_hi - xi_lo; }
};

// Smallest xi in [0, xi_max] where some eigenvalue complexifies, bracketed to
// tol.  Empty when the spectrum stays real on the whole range.
std::optional<CriticalReport> critical_coupling(const ModelSpec& model, double xi_max,
                                                double tol = 1e-9);

// Every xi in the range where the number of real eigenvalues changes; each
// report carries the merged-pair locations read from the subcritical edge.
std::vector<CriticalReport> exceptional_points(const ModelSpec& model, double xi_lo,
                                               double xi_hi, double tol = 1e-9);

// First xi at which a complex pair lands on the imaginary axis (F purely
// imaginary, F^2 real negative).  Searches below the range start when the
// range begins past the landing.  Empty when no complex pair ever appears.
std::optional<CriticalReport> imaginary_axis_crossing(const ModelSpec& model, double xi_lo,
                                                      double xi_hi, double tol = 1e-9);

// Default search ceiling: 4x a first-guess critical point from a coarse scan.
double default_xi_max(const ModelSpec& model);

struct CriticalTableRow {
    int N = 0;
    bool even = false;
    double xi_crit = 0;
    double z_crit = 0;
    double bracket_width = 0;
};

// critical_coupling per N for the q = 0 family.
std::vector<CriticalTableRow> critical_table(std::span<const int> Ns, double tol = 1e-9);

struct ContinuumRow {
    int N = 0;
    double E1 = 0;      // lowest physical energy at Z = 0
    double error = 0;   // E1 - pi^2/4
};

struct ContinuumReport {
    std::vector<ContinuumRow> rows;
    std::vector<double> ratios;       // error(2N)/error(N) for consecutive doublings
    bool probe_all_real = false;      // spectra fully real at the probe coupling
    double probe_Z = 0;
};

// Convergence of the ground level to the continuum value at Z = 0, plus a
// realness probe at a fixed sub-threshold coupling.
ContinuumReport continuum_check(std::span<const int> Ns, double probe_Z = 3.0);

namespace detail {

// Minimal-cost perfect matching between two equal-size point sets (O(n^3)
// Hungarian); returns the permutation applied to `to`.
std::vector<int> assign_tracks(const std::vector<Complex>& from,
                               const std::vector<Complex>& to);

} // namespace detail

} // namespace ptwell
