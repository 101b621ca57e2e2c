#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ptwell/io.hpp"
#include "ptwell/metric.hpp"
#include "ptwell/spectral.hpp"
#include "ptwell/verify.hpp"

namespace {

using namespace ptwell;

// exit codes: 0 ok, 1 verification failure, 2 usage/model error,
// 3 numeric failure, 4 non-constructible request
constexpr int kOk = 0, kVerifyFail = 1, kUsage = 2, kNumeric = 3, kRefused = 4;

struct CommonOpts {
    int N = 0;
    int q = 0;
    std::string ell;
    std::optional<double> Z;
    std::optional<double> xi;
    std::string format = "csv";
    std::string out;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) parts.push_back(item);
    return parts;
}

ModelSpec make_model(const CommonOpts& o) {
    if (o.N < 2) throw std::domain_error("need --N >= 2");
    ModelSpec m;
    m.N = o.N;
    m.q = o.q;
    for (const auto& tok : split(o.ell, ','))
        m.ell.push_back(Rational::parse(tok));
    if (static_cast<int>(m.ell.size()) != m.q)
        throw std::domain_error("--ell must list exactly q breakpoints");
    return m;
}

double resolve_xi(const CommonOpts& o, const ModelSpec& m) {
    if (o.Z.has_value() == o.xi.has_value())
        throw std::domain_error("give exactly one of --Z or --xi");
    return o.xi ? *o.xi : coupling_xi(*o.Z, m.N);
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file " + path);
    f << text;
}

void add_model_flags(CLI::App* cmd, CommonOpts& o, bool coupling = true) {
    cmd->add_option("--N", o.N, "number of lattice subintervals");
    cmd->add_option("--q", o.q, "number of interior breakpoints");
    cmd->add_option("--ell", o.ell, "comma-separated breakpoints as rationals, e.g. 5/8");
    if (coupling) {
        cmd->add_option("--Z", o.Z, "physical coupling strength");
        cmd->add_option("--xi", o.xi, "scaled coupling xi = Z h^2");
    }
    cmd->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out, "output path (default: stdout)");
}

int run_spectrum(const CommonOpts& o) {
    const ModelSpec m = make_model(o);
    const double xi = resolve_xi(o, m);
    const Spectrum s = spectrum(m, xi);
    if (o.format == "json")
        emit(io::spectrum_json(s).dump(2) + "\n", o.out);
    else
        emit(io::spectrum_csv(s), o.out);
    return kOk;
}

int run_sweep(const CommonOpts& o, double from, double to, int steps) {
    const ModelSpec m = make_model(o);
    if (steps < 1) throw std::domain_error("need --steps >= 1");
    if (!(to > from)) throw std::domain_error("need --xi-to > --xi-from");
    std::vector<double> grid(steps + 1);
    for (int i = 0; i <= steps; ++i) grid[i] = from + (to - from) * i / steps;
    const SweepTable table = sweep(m, std::move(grid));
    emit(io::sweep_csv(table), o.out);
    return kOk;
}

int run_critical(const CommonOpts& o, const std::string& nlist, double tol) {
    if (!nlist.empty()) {
        std::vector<int> Ns;
        for (const auto& tok : split(nlist, ',')) Ns.push_back(std::stoi(tok));
        const auto rows = critical_table(Ns, tol);
        emit(io::critical_csv(rows), o.out);
        return kOk;
    }
    const ModelSpec m = make_model(o);
    const auto rep = critical_coupling(m, default_xi_max(m), tol);
    if (!rep) {
        emit("N,parity,xi_crit,Z_crit,bracket_width\n", o.out);
        std::cerr << "no transition found on the scanned range\n";
        return kOk;
    }
    CriticalTableRow row{m.N, m.N % 2 == 0, rep->xi_crit(), rep->z_crit,
                         rep->bracket_width()};
    emit(io::critical_csv({&row, 1}), o.out);
    return kOk;
}

int run_metric(const CommonOpts& o, const std::string& theta_list) {
    const ModelSpec m = make_model(o);
    const double xi = resolve_xi(o, m);
    const ScaledHamiltonian H = m.hamiltonian(xi);

    std::vector<double> weights;
    if (!theta_list.empty())
        for (const auto& tok : split(theta_list, ',')) weights.push_back(std::stod(tok));
    else
        weights.assign(H.dim(), 1.0);

    const Spectrum s = spectrum(m, xi);
    if (!s.all_real()) {
        std::cerr << "metric non-constructible: spectrum has complex pairs at xi = " << xi
                  << " (PT-symmetry broken)\n";
        return kRefused;
    }
    try {
        const auto basis = biorthogonalize(H);
        double defect = 0.0;
        const auto theta = build_metric(basis, weights, &defect);
        const bool pd = positive_definite(theta);
        const double quasi = verify_quasi_hermiticity(H, theta);
        const double pseudo = verify_pseudo_hermiticity(H);
        emit(io::metric_json(m, xi, weights, theta, quasi, pseudo, defect, pd).dump(2) + "\n",
             o.out);
        return kOk;
    } catch (const DegeneracyError& e) {
        std::cerr << "metric non-constructible: " << e.what() << "\n";
        return kRefused;
    }
}

int run_verify(bool as_json, const std::string& out) {
    const auto checks = verify::run_all();
    int failures = 0;
    if (as_json) {
        io::json arr = io::json::array();
        for (const auto& c : checks) {
            arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
            if (!c.pass) ++failures;
        }
        emit(io::json{{"checks", arr}, {"failures", failures}}.dump(2) + "\n", out);
    } else {
        std::ostringstream text;
        for (const auto& c : checks) {
            text << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
            if (!c.detail.empty()) text << "  -- " << c.detail;
            text << "\n";
            if (!c.pass) ++failures;
        }
        text << checks.size() - failures << "/" << checks.size() << " checks passed\n";
        emit(text.str(), out);
    }
    return failures == 0 ? kOk : kVerifyFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete PT-symmetric square-well spectra, critical couplings and metrics"};
    app.require_subcommand(1);

    CommonOpts o;
    double xi_from = 0.0, xi_to = 1.0, tol = 1e-9;
    int steps = 0;
    std::string nlist, theta_list;
    bool verify_json = false;

    auto* c_spectrum = app.add_subcommand("spectrum", "eigenvalues of one model");
    add_model_flags(c_spectrum, o);

    auto* c_sweep = app.add_subcommand("sweep", "eigenvalue tracks over a coupling grid");
    add_model_flags(c_sweep, o, false);
    c_sweep->add_option("--xi-from", xi_from, "grid start");
    c_sweep->add_option("--xi-to", xi_to, "grid end");
    c_sweep->add_option("--steps", steps, "number of grid steps");

    auto* c_critical = app.add_subcommand("critical", "critical couplings");
    add_model_flags(c_critical, o, false);
    c_critical->add_option("--N-list", nlist, "comma-separated N values (q=0 table)");
    c_critical->add_option("--tol", tol, "bracket tolerance in xi");

    auto* c_metric = app.add_subcommand("metric", "quasi-Hermiticity metric");
    add_model_flags(c_metric, o);
    c_metric->add_option("--theta", theta_list, "comma-separated positive weights");

    auto* c_verify = app.add_subcommand("verify", "run the reference-value suite");
    c_verify->add_flag("--json", verify_json, "machine-readable report");
    c_verify->add_option("--out", o.out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kUsage;
    }

    try {
        if (c_spectrum->parsed()) return run_spectrum(o);
        if (c_sweep->parsed()) return run_sweep(o, xi_from, xi_to, steps);
        if (c_critical->parsed()) return run_critical(o, nlist, tol);
        if (c_metric->parsed()) return run_metric(o, theta_list);
        if (c_verify->parsed()) return run_verify(verify_json, o.out);
    } catch (const NumericFailure& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kNumeric;
    } catch (const PtSymmetryBroken& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kNumeric;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
