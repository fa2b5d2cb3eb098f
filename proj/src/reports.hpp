#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "integrator.hpp"
#include "polynomial.hpp"

namespace projcurv {

// Machine-readable JSON reports with a stable schema: every field listed for
// a command is always present, and re-running with the recorded seed and
// configuration reproduces the numeric fields bit-exactly in deterministic
// mode. schema_version 1.

enum class TotalMethod { automatic, curve_closed_form, hypersurface_radial, sphere_lift };

struct RunConfig {
  long samples = 100000;
  std::uint64_t seed = 0;
  int threads = 0;
  bool deterministic = true;
};

std::string total_report_json(const HomogeneousPolynomial& F, TotalMethod method,
                              const RunConfig& config);

std::string area_report_json(const HomogeneousPolynomial& F, const RunConfig& config);

std::string gauss_bonnet_report_json(const HomogeneousPolynomial& F,
                                     const RunConfig& config);

// point: explicit on-variety unit representative, or empty to sample one
// deterministically from the seed.
std::string spectrum_report_json(const HomogeneousPolynomial& F,
                                 const std::vector<std::complex<double>>& point,
                                 std::uint64_t seed);

// All degree/Betti bounds and interval data; when total_curvature is present
// the inequality checks are evaluated against it with margins.
std::string bounds_report_json(int degree, int complex_dim,
                               std::optional<double> total_curvature);

std::string classify_report_json(double total_curvature);

// Flatten a one-level JSON object to "key,value" CSV lines (nested values are
// emitted as compact JSON strings).
std::string report_to_csv(const std::string& report_json);

}  // namespace projcurv
