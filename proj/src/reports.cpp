#include "reports.hpp"

#include <chrono>
#include <cmath>
#include <json.hpp>

#include "errors.hpp"
#include "fubini_study.hpp"
#include "polynomial_io.hpp"
#include "shape_spectrum.hpp"
#include "topology.hpp"

namespace projcurv {

namespace {

using nlohmann::json;

json polynomial_json(const HomogeneousPolynomial& poly) {
  return json::parse(polynomial_to_json(poly));
}

json rotation_json(const std::optional<Eigen::MatrixXcd>& rotation) {
  if (!rotation) return nullptr;
  json rows = json::array();
  for (int i = 0; i < rotation->rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < rotation->cols(); ++j)
      row.push_back(json::array({(*rotation)(i, j).real(), (*rotation)(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntegratorOptions to_options(const RunConfig& config) {
  IntegratorOptions options;
  options.samples = config.samples;
  options.seed = config.seed;
  options.threads = config.threads;
  options.deterministic = config.deterministic;
  return options;
}

json estimate_report(const char* command, const char* value_key,
                     const HomogeneousPolynomial& F, const RunConfig& config,
                     const CurvatureEstimate& estimate, double seconds) {
  json r;
  r["schema_version"] = 1;
  r["command"] = command;
  r["polynomial"] = polynomial_json(F);
  r["degree"] = F.degree();
  r["ambient_dim"] = F.num_vars() - 1;
  r["method"] = estimate_method_name(estimate.method);
  r[value_key] = estimate.value;
  r["std_error"] = estimate.std_error;
  r["samples"] = estimate.n_samples;
  r["rejected_fraction"] = estimate.rejected_fraction();
  r["rejection_warning"] = estimate.rejection_warning;
  r["median_of_means"] = estimate.median_of_means;
  r["seed"] = estimate.seed;
  r["unitary_rotation"] = rotation_json(estimate.rotation);
  r["deterministic"] = config.deterministic;
  r["threads"] = config.threads;
  r["wall_time_seconds"] = seconds;
  return r;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json bound_check_json(const BoundCheck& check) {
  return json{{"passed", check.passed},
              {"lhs", check.lhs},
              {"rhs", check.rhs},
              {"margin", check.margin}};
}

}  // namespace

std::string total_report_json(const HomogeneousPolynomial& F, TotalMethod method,
                              const RunConfig& config) {
  const Stopwatch clock;
  TotalMethod effective = method;
  if (effective == TotalMethod::automatic)
    effective = (F.num_vars() == 3) ? TotalMethod::curve_closed_form
                                    : TotalMethod::hypersurface_radial;
  CurvatureEstimate estimate;
  switch (effective) {
    case TotalMethod::curve_closed_form:
      estimate = total_curvature_curve(F, to_options(config));
      break;
    case TotalMethod::hypersurface_radial:
      estimate = total_curvature_hypersurface(F, to_options(config));
      break;
    case TotalMethod::sphere_lift:
      estimate = total_curvature_sphere_lift(F, to_options(config));
      break;
    default:
      throw InvalidArgumentError("unknown total-curvature method");
  }
  return estimate_report("total", "T", F, config, estimate, clock.seconds()).dump();
}

std::string area_report_json(const HomogeneousPolynomial& F, const RunConfig& config) {
  const Stopwatch clock;
  const CurvatureEstimate estimate = area(F, to_options(config));
  return estimate_report("area", "area", F, config, estimate, clock.seconds()).dump();
}

std::string gauss_bonnet_report_json(const HomogeneousPolynomial& F,
                                     const RunConfig& config) {
  const Stopwatch clock;
  const CurvatureEstimate estimate = gauss_bonnet(F, to_options(config));
  return estimate_report("gauss-bonnet", "chi", F, config, estimate, clock.seconds())
      .dump();
}

std::string spectrum_report_json(const HomogeneousPolynomial& F,
                                 const std::vector<std::complex<double>>& point,
                                 std::uint64_t seed) {
  SpherePoint z{Eigen::VectorXcd(F.num_vars())};
  if (!point.empty()) {
    if (static_cast<int>(point.size()) != F.num_vars())
      throw InvalidArgumentError("point length must equal num_vars");
    Eigen::VectorXcd v(F.num_vars());
    for (int i = 0; i < F.num_vars(); ++i) v(i) = point[i];
    const double norm = v.norm();
    if (!(norm > 0.0)) throw InvalidArgumentError("point must be nonzero");
    z.z = v / norm;
  } else {
    z = sample_variety_points(F, 1, seed).front();
  }

  const PolynomialJet jet(F);
  const FrameData frames = frames_at(jet, z);
  const PrincipalSpectrum spectrum =
      principal_spectrum(jet, z, frames.normal_basis.col(0), frames);

  json r;
  r["schema_version"] = 1;
  r["command"] = "spectrum";
  r["polynomial"] = polynomial_json(F);
  r["degree"] = F.degree();
  r["ambient_dim"] = F.num_vars() - 1;
  json pt = json::array();
  for (int i = 0; i < z.z.size(); ++i)
    pt.push_back(json::array({z.z(i).real(), z.z(i).imag()}));
  r["point"] = std::move(pt);
  r["eigenvalues"] = spectrum.eigenvalues;
  r["kappas"] = spectrum.kappas;
  r["pairing_residual"] = spectrum.pairing_residual;
  r["fiber_residual"] = spectrum.fiber_residual;
  r["seed"] = seed;
  return r.dump();
}

std::string bounds_report_json(int degree, int complex_dim,
                               std::optional<double> total_curvature) {
  const BettiVector betti = hypersurface_betti(degree, complex_dim);
  const BettiVector lift = gysin_transfer(betti);

  json r;
  r["schema_version"] = 1;
  r["command"] = "bounds";
  r["degree"] = degree;
  r["complex_dim"] = complex_dim;
  r["betti"] = betti.dims;
  r["lift_betti"] = lift.dims;
  if (complex_dim == 1) {
    const auto [lo, hi] = degree_interval(degree);
    r["interval"] = json::array({lo, hi});
    r["average_curvature"] = average_curvature(degree);
    r["jensen_identity"] = jensen_identity_holds(degree);
  } else {
    r["interval"] = nullptr;
    r["average_curvature"] = nullptr;
    r["jensen_identity"] = nullptr;
  }
  if (total_curvature) {
    r["total"] = *total_curvature;
    r["checks"] = json{{"basic", bound_check_json(check_basicestimate(betti, *total_curvature))},
                       {"detailed", bound_check_json(check_detailedestimate(betti, *total_curvature))},
                       {"cpcl_a", bound_check_json(check_cpcl_a(betti, *total_curvature))}};
  } else {
    r["total"] = nullptr;
    r["checks"] = nullptr;
  }
  return r.dump();
}

std::string classify_report_json(double total_curvature) {
  json r;
  r["schema_version"] = 1;
  r["command"] = "classify";
  r["total"] = total_curvature;
  try {
    const int degree = classify_degree(total_curvature);
    r["result"] = "degree";
    r["degree"] = degree;
    const auto [lo, hi] = degree_interval(degree);
    r["interval"] = json::array({lo, hi});
    r["gap"] = nullptr;
  } catch (const GapError& e) {
    // the gap is a definite answer: no smooth plane curve attains this value
    r["result"] = "gap";
    r["degree"] = nullptr;
    r["interval"] = nullptr;
    int below = 1;
    while (static_cast<double>(degree_interval(below + 1).second) < total_curvature)
      ++below;
    r["gap"] = json{{"below_degree", below},
                    {"above_degree", below + 1},
                    {"upper", degree_interval(below).second},
                    {"lower", degree_interval(below + 1).first},
                    {"detail", e.what()}};
  }
  return r.dump();
}

std::string report_to_csv(const std::string& report_json) {
  const json r = json::parse(report_json);
  std::string out = "key,value\n";
  for (const auto& [key, value] : r.items()) {
    out += key;
    out += ',';
    if (value.is_string())
      out += value.get<std::string>();
    else
      out += value.dump();
    out += '\n';
  }
  return out;
}

}  // namespace projcurv
