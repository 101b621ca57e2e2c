#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ptwell/spectral.hpp"

using namespace ptwell;

namespace {

ModelSpec q0(int N) { return {N, 0, {}}; }
ModelSpec q1(int N, int p, int q) { return {N, 1, {Rational(p, q)}}; }

std::vector<double> sorted_reals(const Spectrum& s) {
    std::vector<double> out;
    for (size_t i = 0; i < s.F.size(); ++i)
        if (s.real_flag[i]) out.push_back(s.F[i].real());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("spectrum: N=6 shifted well closed form") {
    for (double xi : {0.5, 1.0}) {
        const Spectrum s = spectrum(q1(6, 1, 2), xi);
        REQUIRE(s.F.size() == 5);
        const double root = std::sqrt(4.0 + std::pow(xi, 4));
        const double a = 0.5 * std::sqrt(8.0 - 2 * xi * xi + 2 * root);
        const double b = 0.5 * std::sqrt(8.0 - 2 * xi * xi - 2 * root);
        const std::vector<double> want = {-a, -b, 0.0, b, a};
        const auto got = sorted_reals(s);
        REQUIRE(got.size() == 5);
        for (int i = 0; i < 5; ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-9);
    }
}

TEST_CASE("spectrum: N=4 past the critical point is purely imaginary") {
    const Spectrum s = spectrum(q0(4), 2.0);
    REQUIRE(s.F.size() == 3);
    const double y = std::sqrt(2.0);  // +- i sqrt(xi^2 - 2), xi = 2
    for (const Complex want : {Complex(0.0, -y), Complex(0.0, 0.0), Complex(0.0, y)}) {
        double best = 1e9;
        for (const auto& f : s.F) best = std::min(best, std::abs(f - want));
        CHECK(best <= 1e-10);
    }
    CHECK(s.real_count() == 1);
}

TEST_CASE("spectrum: N=3 Hermitian limit") {
    const Spectrum s = spectrum(q0(3), 0.0);
    REQUIRE(s.F.size() == 2);
    CHECK(std::abs(s.F[0] - Complex(-1.0)) <= 1e-12);
    CHECK(std::abs(s.F[1] - Complex(1.0)) <= 1e-12);
}

TEST_CASE("spectrum: physical energies attached") {
    const Spectrum s = spectrum(q0(4), 1.0);
    for (size_t i = 0; i < s.F.size(); ++i)
        CHECK(std::abs(s.E[i] - to_physical_energy(s.F[i], 4)) == 0.0);
}

TEST_CASE("sweep: one merger for ell=5/8, five robust tracks") {
    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(2.0 * i / 100);
    const SweepTable t = sweep(q1(8, 5, 8), grid);
    REQUIRE(t.tracks.size() == 7);

    int always_real = 0, complexified = 0;
    for (int tr = 0; tr < 7; ++tr) {
        bool all = true;
        for (size_t i = 0; i < grid.size(); ++i) all = all && t.track_is_real(tr, i);
        if (all) ++always_real;
        if (t.track_is_real(tr, 0) && !t.track_is_real(tr, 100)) ++complexified;
    }
    CHECK(always_real == 5);
    CHECK(complexified == 2);
}

TEST_CASE("sweep: two simultaneous mergers for ell=3/8") {
    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(1.0 * i / 100);
    const SweepTable t = sweep(q1(8, 3, 8), grid);
    REQUIRE(t.tracks.size() == 7);
    // the count of real tracks only ever takes the values 7 and 3
    for (size_t i = 0; i < grid.size(); ++i) {
        int real_tracks = 0;
        for (int tr = 0; tr < 7; ++tr)
            if (t.track_is_real(tr, i)) ++real_tracks;
        CHECK((real_tracks == 7 || real_tracks == 3));
    }
}

TEST_CASE("sweep: constant robust level for the N=6 shifted well") {
    std::vector<double> grid;
    for (int i = 0; i <= 60; ++i) grid.push_back(3.0 * i / 60);
    const SweepTable t = sweep(q1(6, 1, 2), grid);
    bool found = false;
    for (const auto& track : t.tracks) {
        bool zero = true;
        for (const auto& f : track) zero = zero && std::abs(f) <= 1e-9;
        found = found || zero;
    }
    CHECK(found);
}

TEST_CASE("sweep: tracks continue through an exceptional point") {
    std::vector<double> grid = {0.0, 0.5, 1.0, 1.5, 2.0};  // crosses xi* ~ 1.1547
    const SweepTable t = sweep(q1(8, 5, 8), grid);
    const double bound = 4.0 * 0.5 + 2.0 * std::sqrt(0.5) + 1e-9;
    for (const auto& track : t.tracks)
        for (size_t i = 1; i < track.size(); ++i)
            CHECK(std::abs(track[i] - track[i - 1]) <= bound);
    // complex members appear as conjugate partners at the end point
    std::vector<Complex> last;
    for (const auto& track : t.tracks) last.push_back(track.back());
    for (const auto& f : last) {
        double best = 1e9;
        for (const auto& g : last) best = std::min(best, std::abs(std::conj(f) - g));
        CHECK(best <= 1e-9);
    }
}

TEST_CASE("sweep input validation") {
    CHECK_THROWS_AS(sweep(q0(4), {}), std::domain_error);
    CHECK_THROWS_AS(sweep(q0(4), {0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(sweep(q0(4), {1.0, 0.5}), std::domain_error);
}

TEST_CASE("critical coupling of the smallest wells") {
    {
        const auto rep = critical_coupling(q0(4), 3.0);
        REQUIRE(rep.has_value());
        CHECK(std::abs(rep->xi_crit() - std::sqrt(2.0)) <= 1e-8);
        CHECK(std::abs(rep->z_crit - 4.0 * std::sqrt(2.0)) <= 1e-7);
        CHECK(rep->bracket_width() <= 1e-9);
        // bracket endpoints verifiably straddle the flip
        CHECK(spectrum(q0(4), rep->xi_lo).all_real());
        CHECK(!spectrum(q0(4), rep->xi_hi).all_real());
    }
    {
        const auto rep = critical_coupling(q0(6), 2.0);
        REQUIRE(rep.has_value());
        CHECK(std::abs(rep->xi_crit() - 0.5) <= 1e-8);
        CHECK(std::abs(rep->z_crit - 4.5) <= 1e-7);
    }
    {
        const auto rep = critical_coupling(q0(3), 2.0);
        REQUIRE(rep.has_value());
        CHECK(std::abs(rep->xi_crit() - 1.0) <= 1e-8);
        CHECK(std::abs(rep->z_crit - 2.25) <= 1e-7);
    }
}

TEST_CASE("critical coupling: no transition on a short range") {
    CHECK(!critical_coupling(q1(6, 1, 2), 0.5).has_value());
}

TEST_CASE("critical coupling input validation") {
    CHECK_THROWS_AS(critical_coupling(q0(4), 2.0, 0.0), std::domain_error);
}

TEST_CASE("exceptional points: N=6 shifted well merges at the origin") {
    const auto events = exceptional_points(q1(6, 1, 2), 0.0, 2.0);
    REQUIRE(events.size() == 1);
    CHECK(std::abs(events[0].xi_crit() - std::sqrt(1.5)) <= 1e-7);
    REQUIRE(events[0].F_star.size() == 1);
    CHECK(std::abs(events[0].F_star[0]) <= 1e-4);
    CHECK(events[0].kind == CriticalKind::pair_merger);
}

TEST_CASE("exceptional points: N=8 ell=3/8 double merger") {
    const auto events = exceptional_points(q1(8, 3, 8), 0.0, 1.0);
    REQUIRE(events.size() == 1);
    CHECK(std::abs(events[0].xi_crit() - 0.5875691807) <= 1e-6);
    REQUIRE(events[0].F_star.size() == 2);
    CHECK(std::abs(std::abs(events[0].F_star[0].real()) - 1.140716421) <= 1e-5);
    CHECK(std::abs(std::abs(events[0].F_star[1].real()) - 1.140716421) <= 1e-5);
}

TEST_CASE("exceptional points: two separated events are both reported") {
    const auto events = exceptional_points(q1(12, 1, 2), 0.0, 2.0);
    REQUIRE(events.size() == 2);
    CHECK(events[0].xi_crit() < events[1].xi_crit());
    CHECK(events[0].F_star.size() == 2);  // symmetric pair loss first
    CHECK(events[1].F_star.size() == 1);  // then a merger at the origin
    CHECK(std::abs(events[1].F_star[0]) <= 1e-4);
}

TEST_CASE("imaginary-axis crossing: N=4 pair is born on the axis") {
    const auto rep = imaginary_axis_crossing(q0(4), 1.5, 3.0);
    REQUIRE(rep.has_value());
    CHECK(std::abs(rep->xi_crit() - std::sqrt(2.0)) <= 1e-6);
    REQUIRE(rep->F_star.size() == 2);
    CHECK(std::abs(rep->F_star[0].real()) <= 1e-9);
}

TEST_CASE("imaginary-axis crossing: not applicable without complex pairs") {
    CHECK(!imaginary_axis_crossing(q0(4), 0.2, 1.0).has_value());
}

TEST_CASE("critical table rows") {
    const int Ns[] = {3, 4, 6};
    const auto rows = critical_table(Ns);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].N == 3);
    CHECK(!rows[0].even);
    CHECK(rows[1].even);
    CHECK(std::abs(rows[0].z_crit - 2.25) <= 1e-6);
    CHECK(std::abs(rows[1].z_crit - 4.0 * std::sqrt(2.0)) <= 1e-6);
    CHECK(std::abs(rows[2].z_crit - 4.5) <= 1e-6);
    for (const auto& r : rows) CHECK(r.bracket_width <= 1e-9);
    const int bad[] = {2};
    CHECK_THROWS_AS(critical_table(bad), std::domain_error);
}

TEST_CASE("continuum check at moderate sizes") {
    const int Ns[] = {20, 40};
    const auto rep = continuum_check(Ns, 3.0);
    REQUIRE(rep.rows.size() == 2);
    // E_1 = (2 - 2 cos(pi/N)) N^2/4
    for (const auto& row : rep.rows) {
        const double want = (2.0 - 2.0 * std::cos(std::acos(-1.0) / row.N)) * row.N * row.N / 4.0;
        CHECK(std::abs(row.E1 - want) <= 1e-8);
    }
    REQUIRE(rep.ratios.size() == 1);
    CHECK(std::abs(rep.ratios[0] - 0.25) <= 0.02);
    CHECK(rep.probe_all_real);
}

TEST_CASE("track assignment stays within twice the optimal cost") {
    unsigned state = 99u;
    const auto next = [&state]() {
        state = state * 1664525u + 1013904223u;
        return 2.0 * ((state >> 8) / double(1u << 24)) - 1.0;
    };
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Complex> from(5), to(5);
        for (int i = 0; i < 5; ++i) {
            from[i] = Complex(next(), next());
            to[i] = Complex(next(), next());
        }
        const auto perm = detail::assign_tracks(from, to);
        // brute-force optimal over all permutations of 5
        std::vector<int> idx = {0, 1, 2, 3, 4};
        double best = 1e18;
        do {
            double c = 0.0;
            for (int i = 0; i < 5; ++i) c += std::abs(from[i] - to[idx[i]]);
            best = std::min(best, c);
        } while (std::next_permutation(idx.begin(), idx.end()));
        double got = 0.0;
        std::vector<bool> seen(5, false);
        for (int i = 0; i < 5; ++i) {
            got += std::abs(from[i] - to[perm[i]]);
            seen[perm[i]] = true;
        }
        for (bool s : seen) CHECK(s);  // a perfect matching
        CHECK(got <= 2.0 * best + 1e-12);
    }
}

TEST_CASE("track assignment preserves the robust level through a merger") {
    // just below the collision the fragile pair straddles the robust zero;
    // just above it sits on the imaginary axis
    const std::vector<Complex> from = {Complex(-0.218), Complex(0.0), Complex(0.218)};
    const std::vector<Complex> to = {Complex(0.0, -0.224), Complex(0.0), Complex(0.0, 0.224)};
    const auto perm = detail::assign_tracks(from, to);
    CHECK(perm[1] == 1);  // zero stays zero
}

TEST_CASE("default search ceiling scales with the first complexification") {
    const double m4 = default_xi_max(q0(4));
    CHECK(m4 >= std::sqrt(2.0));
    CHECK(m4 <= 8.0);
}
