#pragma once

#include <string>
#include <vector>

namespace ptwell::verify {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

// The full reference-value suite: closed-form spectra, critical-coupling
// tables, printed-determinant coefficients, exceptional points, metric and
// symmetry residuals, route-equivalence probes.  Deterministic.
std::vector<Check> run_all();

} // namespace ptwell::verify
