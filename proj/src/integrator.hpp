#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "curve_metrics.hpp"
#include "polynomial.hpp"

namespace projcurv {

enum class EstimateMethod {
  curve_closed_form,
  hypersurface_radial,
  sphere_lift,
  area_only,
  gauss_bonnet,
};

const char* estimate_method_name(EstimateMethod method);

struct IntegratorOptions {
  long samples = 100000;
  std::uint64_t seed = 0;
  int threads = 0;            // 0: machine parallelism
  bool deterministic = true;  // fixed-order compensated reduction (default)
  // Fiber-phase window for the sphere-lift estimator. Any window is unbiased
  // by fibre independence of the spectrum; restricting it stratifies the
  // estimate for invariance checks.
  double phase_window_lo = 0.0;
  double phase_window_hi = 2.0 * M_PI;
};

struct CurvatureEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long n_samples = 0;
  long n_rejected = 0;
  std::uint64_t seed = 0;
  EstimateMethod method = EstimateMethod::area_only;
  bool rejection_warning = false;  // rejected fraction above 1%
  bool median_of_means = false;    // heavy-tail fallback engaged
  std::optional<Eigen::MatrixXcd> rotation;  // unitary pre-rotation, if applied

  double rejected_fraction() const {
    return n_samples > 0 ? static_cast<double>(n_rejected) / n_samples : 0.0;
  }
};

// Monte Carlo estimate of (1/pi) \int G(K) dA over a smooth curve in CP^2,
// G(K) = ((K-4)^2+4)/(6-K), with K from intrinsic chart differentiation.
// The curve is partitioned between two fibered projections by the larger
// fiber derivative, which keeps the importance weights bounded away from
// ramification.
CurvatureEstimate total_curvature_curve(const HomogeneousPolynomial& F,
                                        const IntegratorOptions& options);

// Induced volume of V(F): expect d*pi for curves in CP^2 and d*pi^2/2 for
// surfaces in CP^3.
CurvatureEstimate area(const HomogeneousPolynomial& F, const IntegratorOptions& options);

// Radial-profile route for hypersurfaces in CP^{m+1}, m in {1, 2}:
// T = (4 pi / Vol(CP^N)) \int_M [radial r-integral of the kappa profile] dVol,
// with kappas from the lifted shape-operator spectrum at one normal
// (normal-rotation invariance collapses the projectivized-normal fibre).
CurvatureEstimate total_curvature_hypersurface(const HomogeneousPolynomial& F,
                                               const IntegratorOptions& options);

// Direct estimate of the sphere-side total curvature of the Hopf lift:
// samples a fibre phase and a normal angle, integrates the sphere integrand
// over [0, pi], normalizes by Vol(S^{2N+1}) = 2 pi Vol(CP^N). Agrees with the
// CP-side routes.
CurvatureEstimate total_curvature_sphere_lift(const HomogeneousPolynomial& F,
                                              const IntegratorOptions& options);

// (1/2pi) \int K dA; expect the Euler characteristic 2 - (d-1)(d-2).
CurvatureEstimate gauss_bonnet(const HomogeneousPolynomial& F,
                               const IntegratorOptions& options);

// Area-weighted mean curvature \int K dA / \int dA; expect 2(3-d). The ratio
// standard error comes from the delta method with the sample covariance.
CurvatureEstimate average_curvature_estimate(const HomogeneousPolynomial& F,
                                             const IntegratorOptions& options);

// Random on-variety points for spectrum inspection. Points are returned on
// V(F) as given (any internal pre-rotation is mapped back).
std::vector<SpherePoint> sample_variety_points(const HomogeneousPolynomial& F,
                                               long count, std::uint64_t seed);

// Random branch points of a plane curve in the default charts; requires the
// fiber leading coefficients of F itself to be nondegenerate.
std::vector<BranchPoint> sample_curve_branch_points(const HomogeneousPolynomial& F,
                                                    long count, std::uint64_t seed);

}  // namespace projcurv
