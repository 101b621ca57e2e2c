#pragma once

#include <string>

#include <json.hpp>

#include "ptwell/dense.hpp"
#include "ptwell/metric.hpp"
#include "ptwell/spectral.hpp"

namespace ptwell::io {

using nlohmann::json;

// %.17g: bit-stable round trip for doubles
std::string fmt(double v);

// Model descriptor: {"N":int, "q":int, "ell":["5/8",...], "Z":[floats]}
json model_json(const ModelSpec& model, double Z);
ModelSpec model_from_json(const json& j);

// descriptor fields + "xi" + "eigenvalues":[{"re","im"}] sorted by (Re, Im)
json spectrum_json(const Spectrum& s);
std::string spectrum_csv(const Spectrum& s);

// columns: xi,Z,track,re_F,im_F,re_E,im_E,is_real
std::string sweep_csv(const SweepTable& table);

// columns: N,parity,xi_crit,Z_crit,bracket_width
std::string critical_csv(std::span<const CriticalTableRow> rows);

json metric_json(const ModelSpec& model, double xi, std::span<const double> weights,
                 const CMatrix& theta, double quasi_residual, double pseudo_defect,
                 double symmetrization_defect, bool positive);

} // namespace ptwell::io
