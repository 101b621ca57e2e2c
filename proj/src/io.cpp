#include "ptwell/io.hpp"

#include <cstdio>
#include <sstream>

namespace ptwell::io {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json model_json(const ModelSpec& model, double Z) {
    json ell = json::array();
    for (const auto& l : model.ell) ell.push_back(l.str());
    const auto strengths = model.profile(Z).strengths();
    return json{{"N", model.N}, {"q", model.q}, {"ell", ell}, {"Z", strengths}};
}

ModelSpec model_from_json(const json& j) {
    ModelSpec m;
    m.N = j.at("N").get<int>();
    m.q = j.at("q").get<int>();
    for (const auto& s : j.at("ell")) m.ell.push_back(Rational::parse(s.get<std::string>()));
    if (static_cast<int>(m.ell.size()) != m.q)
        throw std::domain_error("model descriptor: ell size must equal q");
    return m;
}

json spectrum_json(const Spectrum& s) {
    json j = model_json(s.model, coupling_Z(s.xi, s.model.N));
    j["xi"] = s.xi;
    json eigs = json::array();
    for (const auto& f : s.F) eigs.push_back(json{{"re", f.real()}, {"im", f.imag()}});
    j["eigenvalues"] = eigs;
    return j;
}

std::string spectrum_csv(const Spectrum& s) {
    std::ostringstream out;
    out << "xi,Z,track,re_F,im_F,re_E,im_E,is_real\n";
    const double Z = coupling_Z(s.xi, s.model.N);
    for (size_t t = 0; t < s.F.size(); ++t)
        out << fmt(s.xi) << ',' << fmt(Z) << ',' << t << ',' << fmt(s.F[t].real()) << ','
            << fmt(s.F[t].imag()) << ',' << fmt(s.E[t].real()) << ',' << fmt(s.E[t].imag())
            << ',' << (s.real_flag[t] ? 1 : 0) << '\n';
    return out.str();
}

std::string sweep_csv(const SweepTable& table) {
    std::ostringstream out;
    out << "xi,Z,track,re_F,im_F,re_E,im_E,is_real\n";
    const int m = static_cast<int>(table.tracks.size());
    for (size_t i = 0; i < table.xi.size(); ++i) {
        const double xi = table.xi[i];
        const double Z = coupling_Z(xi, table.model.N);
        for (int t = 0; t < m; ++t) {
            const Complex F = table.tracks[t][i];
            const Complex E = to_physical_energy(F, table.model.N);
            out << fmt(xi) << ',' << fmt(Z) << ',' << t << ',' << fmt(F.real()) << ','
                << fmt(F.imag()) << ',' << fmt(E.real()) << ',' << fmt(E.imag()) << ','
                << (table.track_is_real(t, static_cast<int>(i)) ? 1 : 0) << '\n';
        }
    }
    return out.str();
}

std::string critical_csv(std::span<const CriticalTableRow> rows) {
    std::ostringstream out;
    out << "N,parity,xi_crit,Z_crit,bracket_width\n";
    for (const auto& r : rows)
        out << r.N << ',' << (r.even ? "even" : "odd") << ',' << fmt(r.xi_crit) << ','
            << fmt(r.z_crit) << ',' << fmt(r.bracket_width) << '\n';
    return out.str();
}

json metric_json(const ModelSpec& model, double xi, std::span<const double> weights,
                 const CMatrix& theta, double quasi_residual, double pseudo_defect,
                 double symmetrization_defect, bool positive) {
    json j = model_json(model, coupling_Z(xi, model.N));
    j["xi"] = xi;
    j["weights"] = std::vector<double>(weights.begin(), weights.end());
    json entries = json::array();
    for (const auto& v : theta.a) entries.push_back(json{{"re", v.real()}, {"im", v.imag()}});
    j["dim"] = theta.n;
    j["theta"] = entries;  // dense, row-major
    j["quasi_hermiticity_residual"] = quasi_residual;
    j["pseudo_hermiticity_defect"] = pseudo_defect;
    j["symmetrization_defect"] = symmetrization_defect;
    j["positive_definite"] = positive;
    return j;
}

} // namespace ptwell::io
