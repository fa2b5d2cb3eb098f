#include "projcurv/projcurv.h"

#include <cstring>
#include <json.hpp>
#include <new>
#include <string>

#include "errors.hpp"
#include "integrator.hpp"
#include "polynomial.hpp"
#include "polynomial_io.hpp"
#include "reports.hpp"
#include "shape_spectrum.hpp"
#include "topology.hpp"
#include "verify.hpp"

using namespace projcurv;

struct projcurv_poly {
  HomogeneousPolynomial value;
};

namespace {

thread_local std::string g_last_error;

projcurv_status status_from(ErrorCode code) {
  return static_cast<projcurv_status>(static_cast<int>(code));
}

template <typename Fn>
projcurv_status guarded(const Fn& fn) {
  try {
    fn();
    g_last_error.clear();
    return PROJCURV_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_from(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PROJCURV_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PROJCURV_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

IntegratorOptions to_integrator_options(const projcurv_run_options* options) {
  IntegratorOptions out;
  if (options) {
    out.samples = static_cast<long>(options->samples);
    out.seed = options->seed;
    out.threads = options->threads;
    out.deterministic = options->deterministic != 0;
  }
  return out;
}

RunConfig to_run_config(const projcurv_run_options* options) {
  RunConfig config;
  if (options) {
    config.samples = static_cast<long>(options->samples);
    config.seed = options->seed;
    config.threads = options->threads;
    config.deterministic = options->deterministic != 0;
  }
  return config;
}

void fill_estimate(const CurvatureEstimate& estimate, projcurv_estimate* out) {
  out->value = estimate.value;
  out->std_error = estimate.std_error;
  out->n_samples = estimate.n_samples;
  out->n_rejected = estimate.n_rejected;
  out->seed = estimate.seed;
  out->rejection_warning = estimate.rejection_warning ? 1 : 0;
  out->median_of_means = estimate.median_of_means ? 1 : 0;
  out->rotated = estimate.rotation.has_value() ? 1 : 0;
}

TotalMethod to_total_method(projcurv_method method) {
  switch (method) {
    case PROJCURV_METHOD_AUTO:
      return TotalMethod::automatic;
    case PROJCURV_METHOD_CURVE_CLOSED_FORM:
      return TotalMethod::curve_closed_form;
    case PROJCURV_METHOD_HYPERSURFACE_RADIAL:
      return TotalMethod::hypersurface_radial;
    case PROJCURV_METHOD_SPHERE_LIFT:
      return TotalMethod::sphere_lift;
  }
  throw InvalidArgumentError("unknown method value");
}

std::vector<std::complex<double>> interleaved_point(const double* point, int point_len) {
  std::vector<std::complex<double>> out;
  if (!point || point_len <= 0) return out;
  if (point_len % 2 != 0)
    throw InvalidArgumentError("interleaved point needs an even number of doubles");
  out.reserve(point_len / 2);
  for (int i = 0; i < point_len; i += 2) out.emplace_back(point[i], point[i + 1]);
  return out;
}

}  // namespace

extern "C" {

const char* projcurv_version(void) { return "1.0.0"; }

const char* projcurv_status_name(projcurv_status status) {
  switch (status) {
    case PROJCURV_OK: return "ok";
    case PROJCURV_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case PROJCURV_ERR_PARSE: return "parse_error";
    case PROJCURV_ERR_DEGENERATE_FIBER: return "degenerate_fiber";
    case PROJCURV_ERR_SINGULAR_POINT: return "singular_point";
    case PROJCURV_ERR_SPECTRUM_STRUCTURE: return "spectrum_structure";
    case PROJCURV_ERR_BRANCH_CONTINUATION: return "branch_continuation";
    case PROJCURV_ERR_DOMAIN: return "domain_error";
    case PROJCURV_ERR_GAP: return "degree_gap";
    case PROJCURV_ERR_INVALID_BETTI: return "invalid_betti";
    case PROJCURV_ERR_UNSUPPORTED: return "unsupported";
    case PROJCURV_ERR_NUMERICAL: return "numerical_error";
    case PROJCURV_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* projcurv_last_error_message(void) { return g_last_error.c_str(); }

void projcurv_string_free(char* text) { delete[] text; }

void projcurv_run_options_init(projcurv_run_options* options) {
  if (!options) return;
  options->samples = 100000;
  options->seed = 0;
  options->threads = 0;
  options->deterministic = 1;
}

projcurv_status projcurv_poly_parse_text(const char* text, int num_vars,
                                         projcurv_poly** out) {
  return guarded([&] {
    if (!text || !out) throw InvalidArgumentError("null argument");
    *out = new projcurv_poly{polynomial_from_text(text, num_vars)};
  });
}

projcurv_status projcurv_poly_parse_json(const char* json, projcurv_poly** out) {
  return guarded([&] {
    if (!json || !out) throw InvalidArgumentError("null argument");
    *out = new projcurv_poly{polynomial_from_json(json)};
  });
}

projcurv_status projcurv_poly_to_json(const projcurv_poly* poly, char** out) {
  return guarded([&] {
    if (!poly || !out) throw InvalidArgumentError("null argument");
    *out = copy_string(polynomial_to_json(poly->value));
  });
}

void projcurv_poly_free(projcurv_poly* poly) { delete poly; }

int projcurv_poly_num_vars(const projcurv_poly* poly) {
  return poly ? poly->value.num_vars() : 0;
}

int projcurv_poly_degree(const projcurv_poly* poly) {
  return poly ? poly->value.degree() : -1;
}

projcurv_status projcurv_poly_evaluate(const projcurv_poly* poly, const double* z,
                                       int z_len, double* out_re, double* out_im) {
  return guarded([&] {
    if (!poly || !z || !out_re || !out_im) throw InvalidArgumentError("null argument");
    const auto point = interleaved_point(z, z_len);
    if (static_cast<int>(point.size()) != poly->value.num_vars())
      throw InvalidArgumentError("point length must equal num_vars");
    const std::complex<double> value = poly->value.evaluate(point);
    *out_re = value.real();
    *out_im = value.imag();
  });
}

projcurv_status projcurv_total_curvature(const projcurv_poly* poly,
                                         projcurv_method method,
                                         const projcurv_run_options* options,
                                         projcurv_estimate* out) {
  return guarded([&] {
    if (!poly || !out) throw InvalidArgumentError("null argument");
    const IntegratorOptions opts = to_integrator_options(options);
    CurvatureEstimate estimate;
    switch (to_total_method(method)) {
      case TotalMethod::curve_closed_form:
        estimate = total_curvature_curve(poly->value, opts);
        break;
      case TotalMethod::hypersurface_radial:
        estimate = total_curvature_hypersurface(poly->value, opts);
        break;
      case TotalMethod::sphere_lift:
        estimate = total_curvature_sphere_lift(poly->value, opts);
        break;
      case TotalMethod::automatic:
        estimate = (poly->value.num_vars() == 3)
                       ? total_curvature_curve(poly->value, opts)
                       : total_curvature_hypersurface(poly->value, opts);
        break;
    }
    fill_estimate(estimate, out);
  });
}

projcurv_status projcurv_area(const projcurv_poly* poly,
                              const projcurv_run_options* options,
                              projcurv_estimate* out) {
  return guarded([&] {
    if (!poly || !out) throw InvalidArgumentError("null argument");
    fill_estimate(area(poly->value, to_integrator_options(options)), out);
  });
}

projcurv_status projcurv_gauss_bonnet(const projcurv_poly* poly,
                                      const projcurv_run_options* options,
                                      projcurv_estimate* out) {
  return guarded([&] {
    if (!poly || !out) throw InvalidArgumentError("null argument");
    fill_estimate(gauss_bonnet(poly->value, to_integrator_options(options)), out);
  });
}

projcurv_status projcurv_average_curvature(const projcurv_poly* poly,
                                           const projcurv_run_options* options,
                                           projcurv_estimate* out) {
  return guarded([&] {
    if (!poly || !out) throw InvalidArgumentError("null argument");
    fill_estimate(average_curvature_estimate(poly->value, to_integrator_options(options)),
                  out);
  });
}

projcurv_status projcurv_spectrum(const projcurv_poly* poly, const double* point,
                                  int point_len, uint64_t seed, double* eigenvalues,
                                  int eigenvalues_cap, int* eigenvalues_len,
                                  double* kappas, int kappas_cap, int* kappas_len,
                                  double* pairing_residual, double* fiber_residual) {
  return guarded([&] {
    if (!poly || !eigenvalues || !eigenvalues_len || !kappas || !kappas_len ||
        !pairing_residual || !fiber_residual)
      throw InvalidArgumentError("null argument");

    SpherePoint z{Eigen::VectorXcd()};
    const auto given = interleaved_point(point, point_len);
    if (!given.empty()) {
      if (static_cast<int>(given.size()) != poly->value.num_vars())
        throw InvalidArgumentError("point length must equal num_vars");
      Eigen::VectorXcd v(poly->value.num_vars());
      for (size_t i = 0; i < given.size(); ++i) v(static_cast<int>(i)) = given[i];
      const double norm = v.norm();
      if (!(norm > 0.0)) throw InvalidArgumentError("point must be nonzero");
      z.z = v / norm;
    } else {
      z = sample_variety_points(poly->value, 1, seed).front();
    }

    const PolynomialJet jet(poly->value);
    const FrameData frames = frames_at(jet, z);
    const PrincipalSpectrum spectrum =
        principal_spectrum(jet, z, frames.normal_basis.col(0), frames);

    if (eigenvalues_cap < static_cast<int>(spectrum.eigenvalues.size()) ||
        kappas_cap < static_cast<int>(spectrum.kappas.size()))
      throw InvalidArgumentError("output buffer too small");
    for (size_t i = 0; i < spectrum.eigenvalues.size(); ++i)
      eigenvalues[i] = spectrum.eigenvalues[i];
    *eigenvalues_len = static_cast<int>(spectrum.eigenvalues.size());
    for (size_t i = 0; i < spectrum.kappas.size(); ++i) kappas[i] = spectrum.kappas[i];
    *kappas_len = static_cast<int>(spectrum.kappas.size());
    *pairing_residual = spectrum.pairing_residual;
    *fiber_residual = spectrum.fiber_residual;
  });
}

projcurv_status projcurv_hypersurface_betti(int degree, int complex_dim, long long* dims,
                                            int dims_cap, int* dims_len) {
  return guarded([&] {
    if (!dims || !dims_len) throw InvalidArgumentError("null argument");
    const BettiVector betti = hypersurface_betti(degree, complex_dim);
    if (dims_cap < static_cast<int>(betti.dims.size()))
      throw InvalidArgumentError("output buffer too small");
    for (size_t i = 0; i < betti.dims.size(); ++i) dims[i] = betti.dims[i];
    *dims_len = static_cast<int>(betti.dims.size());
  });
}

projcurv_status projcurv_gysin_transfer(const long long* dims, int dims_len,
                                        int complex_dim, long long* out, int out_cap,
                                        int* out_len) {
  return guarded([&] {
    if (!dims || !out || !out_len) throw InvalidArgumentError("null argument");
    BettiVector betti;
    betti.complex_dim = complex_dim;
    betti.dims.assign(dims, dims + dims_len);
    const BettiVector lift = gysin_transfer(betti);
    if (out_cap < static_cast<int>(lift.dims.size()))
      throw InvalidArgumentError("output buffer too small");
    for (size_t i = 0; i < lift.dims.size(); ++i) out[i] = lift.dims[i];
    *out_len = static_cast<int>(lift.dims.size());
  });
}

projcurv_status projcurv_degree_interval(int degree, long long* lower, long long* upper) {
  return guarded([&] {
    if (!lower || !upper) throw InvalidArgumentError("null argument");
    const auto [lo, hi] = degree_interval(degree);
    *lower = lo;
    *upper = hi;
  });
}

projcurv_status projcurv_classify_degree(double total_curvature, int* degree) {
  return guarded([&] {
    if (!degree) throw InvalidArgumentError("null argument");
    *degree = classify_degree(total_curvature);
  });
}

projcurv_status projcurv_degree_average_curvature(int degree, double* out) {
  return guarded([&] {
    if (!out) throw InvalidArgumentError("null argument");
    *out = average_curvature(degree);
  });
}

projcurv_status projcurv_total_report_json(const projcurv_poly* poly,
                                           projcurv_method method,
                                           const projcurv_run_options* options,
                                           char** out) {
  return guarded([&] {
    if (!poly || !out) throw InvalidArgumentError("null argument");
    *out = copy_string(
        total_report_json(poly->value, to_total_method(method), to_run_config(options)));
  });
}

projcurv_status projcurv_area_report_json(const projcurv_poly* poly,
                                          const projcurv_run_options* options,
                                          char** out) {
  return guarded([&] {
    if (!poly || !out) throw InvalidArgumentError("null argument");
    *out = copy_string(area_report_json(poly->value, to_run_config(options)));
  });
}

projcurv_status projcurv_gauss_bonnet_report_json(const projcurv_poly* poly,
                                                  const projcurv_run_options* options,
                                                  char** out) {
  return guarded([&] {
    if (!poly || !out) throw InvalidArgumentError("null argument");
    *out = copy_string(gauss_bonnet_report_json(poly->value, to_run_config(options)));
  });
}

projcurv_status projcurv_spectrum_report_json(const projcurv_poly* poly,
                                              const double* point, int point_len,
                                              uint64_t seed, char** out) {
  return guarded([&] {
    if (!poly || !out) throw InvalidArgumentError("null argument");
    *out = copy_string(
        spectrum_report_json(poly->value, interleaved_point(point, point_len), seed));
  });
}

projcurv_status projcurv_bounds_report_json(int degree, int complex_dim, int has_total,
                                            double total, char** out) {
  return guarded([&] {
    if (!out) throw InvalidArgumentError("null argument");
    std::optional<double> value;
    if (has_total) value = total;
    *out = copy_string(bounds_report_json(degree, complex_dim, value));
  });
}

projcurv_status projcurv_classify_report_json(double total_curvature, char** out) {
  return guarded([&] {
    if (!out) throw InvalidArgumentError("null argument");
    *out = copy_string(classify_report_json(total_curvature));
  });
}

projcurv_status projcurv_verify(const char* suite, projcurv_line_callback emit_line,
                                void* user_data, int* n_failed, char** report) {
  return guarded([&] {
    if (!suite || !n_failed) throw InvalidArgumentError("null argument");
    const auto results = run_acceptance_suite(
        suite, emit_line
                   ? std::function<void(const std::string&)>(
                         [&](const std::string& line) { emit_line(line.c_str(), user_data); })
                   : std::function<void(const std::string&)>());
    int failed = 0;
    nlohmann::json criteria = nlohmann::json::array();
    for (const auto& r : results) {
      failed += r.passed ? 0 : 1;
      criteria.push_back({{"id", r.id},
                          {"name", r.name},
                          {"passed", r.passed},
                          {"detail", r.detail},
                          {"seconds", r.seconds}});
    }
    *n_failed = failed;
    if (report) {
      nlohmann::json summary{{"schema_version", 1},
                             {"command", "verify"},
                             {"suite", suite},
                             {"criteria", criteria},
                             {"failed", failed},
                             {"passed", static_cast<int>(results.size()) - failed}};
      *report = copy_string(summary.dump());
    }
  });
}

}  // extern "C"
