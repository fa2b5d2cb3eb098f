#include "integrator.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>

#include "errors.hpp"
#include "fubini_study.hpp"
#include "polynomial_jet.hpp"
#include "radial_profile.hpp"
#include "rng.hpp"
#include "shape_spectrum.hpp"

namespace projcurv {

namespace {

constexpr double kResidualTolerance = 1e-9;
constexpr double kRamificationMargin = 1e-6;
constexpr double kRotationAcceptance = 1e-4;
constexpr double kKurtosisThreshold = 50.0;
constexpr int kMedianOfMeansBuckets = 64;
constexpr std::uint64_t kPhiStreamTag = 0xa5a5a5a5deadbeefull;
constexpr std::uint64_t kRotationStreamTag = 0x0badcafe12345678ull;

const char* kMethodNames[] = {"curve_closed_form", "hypersurface_radial", "sphere_lift",
                              "area_only", "gauss_bonnet"};

std::complex<double> cipow(std::complex<double> base, int exp) {
  std::complex<double> r(1.0, 0.0);
  while (exp > 0) {
    if (exp & 1) r *= base;
    base *= base;
    exp >>= 1;
  }
  return r;
}

// ---------------------------------------------------------------------------
// preparation: seeded unitary pre-rotation when a fibered projection is
// globally degenerate (some fiber coordinate missing its pure power)

Eigen::MatrixXcd random_unitary(RandomStream& rng, int n) {
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const std::complex<double> d = r(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

bool fiber_powers_present(const HomogeneousPolynomial& poly, double threshold) {
  const int nv = poly.num_vars();
  const double scale = poly.coefficient_scale();
  for (int k = 1; k < nv; ++k) {
    std::vector<int> exps(nv, 0);
    exps[k] = poly.degree();
    if (std::abs(poly.coefficient_of(exps)) < threshold * scale) return false;
  }
  return true;
}

struct PreparedVariety {
  PolynomialJet jet;
  std::optional<Eigen::MatrixXcd> rotation;  // original point = rotation * working point
};

PreparedVariety prepare_variety(const HomogeneousPolynomial& F, std::uint64_t seed) {
  if (F.is_zero() || F.degree() < 1)
    throw InvalidArgumentError("variety needs a nonzero polynomial of degree >= 1");
  if (fiber_powers_present(F, kRotationAcceptance))
    return PreparedVariety{PolynomialJet(F), std::nullopt};

  const int nv = F.num_vars();
  for (int attempt = 0; attempt < 64; ++attempt) {
    RandomStream rng(seed ^ kRotationStreamTag, static_cast<std::uint64_t>(attempt));
    const Eigen::MatrixXcd u = random_unitary(rng, nv);
    std::vector<std::complex<double>> row_major(nv * nv);
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < nv; ++j) row_major[i * nv + j] = u(i, j);
    HomogeneousPolynomial rotated = F.substitute_linear(row_major);
    if (fiber_powers_present(rotated, kRotationAcceptance))
      return PreparedVariety{PolynomialJet(std::move(rotated)), u};
  }
  throw NumericalError("no unitary rotation produced a nondegenerate projection");
}

// ---------------------------------------------------------------------------
// reduction

struct Reduction {
  double mean = 0.0;
  double std_error = 0.0;
  bool median_of_means = false;
};

double neumaier_sum(const std::vector<double>& values) {
  double sum = 0.0, compensation = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      compensation += (sum - t) + v;
    else
      compensation += (v - t) + sum;
    sum = t;
  }
  return sum + compensation;
}

double plain_sum(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum;
}

Reduction reduce_samples(const std::vector<double>& u, bool deterministic) {
  const long n = static_cast<long>(u.size());
  Reduction out;
  if (n == 0) return out;
  const double sum = deterministic ? neumaier_sum(u) : plain_sum(u);
  out.mean = sum / n;
  if (n < 2) return out;

  double m2 = 0.0, m4 = 0.0;
  for (double v : u) {
    const double d = v - out.mean;
    const double d2 = d * d;
    m2 += d2;
    m4 += d2 * d2;
  }
  const double variance = m2 / (n - 1);
  out.std_error = std::sqrt(std::max(variance, 0.0) / n);

  const double kurtosis = (m2 > 0.0) ? n * m4 / (m2 * m2) : 0.0;
  if (kurtosis > kKurtosisThreshold && n >= 64 * kMedianOfMeansBuckets) {
    const long bucket = n / kMedianOfMeansBuckets;
    std::vector<double> means(kMedianOfMeansBuckets);
    for (int b = 0; b < kMedianOfMeansBuckets; ++b) {
      double s = 0.0;
      const long begin = b * bucket;
      const long end = (b == kMedianOfMeansBuckets - 1) ? n : begin + bucket;
      for (long i = begin; i < end; ++i) s += u[i];
      means[b] = s / (end - begin);
    }
    std::sort(means.begin(), means.end());
    const double median = 0.5 * (means[kMedianOfMeansBuckets / 2 - 1] +
                                 means[kMedianOfMeansBuckets / 2]);
    double bm = 0.0;
    for (double m : means) bm += m;
    bm /= kMedianOfMeansBuckets;
    double bv = 0.0;
    for (double m : means) bv += (m - bm) * (m - bm);
    bv /= (kMedianOfMeansBuckets - 1);
    out.mean = median;
    // asymptotic efficiency factor of the median against the mean
    out.std_error = 1.2533 * std::sqrt(bv / kMedianOfMeansBuckets);
    out.median_of_means = true;
  }
  return out;
}

// ---------------------------------------------------------------------------
// parallel map with per-sample slots; results are independent of the worker
// count because every sample writes only its own slot

template <typename Fn>
void parallel_for(long n, int threads, const Fn& fn) {
  if (threads <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = hw > 0 ? static_cast<int>(hw) : 1;
  }
  threads = static_cast<int>(std::min<long>(threads, n));
  if (threads <= 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  std::exception_ptr first_error = nullptr;
  std::mutex error_mutex;
  const long chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const long begin = t * chunk;
    const long end = std::min(n, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([&, begin, end] {
      try {
        for (long i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  if (first_error) std::rethrow_exception(first_error);
}

// ---------------------------------------------------------------------------
// curve engine (N = 2): dual fibered projections partitioned by the larger
// fiber derivative

struct CurveFiberPoint {
  BranchPoint branch;
  Eigen::VectorXcd unit;  // unit representative of the point
  double weight = 0.0;    // induced density / base sampling density
};

CurveChartFrame curve_placement(int fiber_index, int base_chart) {
  // base CP^1 coordinates are (0, other); chart 0 scales the first to 1
  const int other = 3 - fiber_index;
  if (base_chart == 0) return CurveChartFrame{0, other, fiber_index};
  return CurveChartFrame{other, 0, fiber_index};
}

std::vector<std::complex<double>> fiber_polynomial(const HomogeneousPolynomial& poly,
                                                   const CurveChartFrame& frame,
                                                   std::complex<double> x) {
  std::vector<std::complex<double>> coeffs(poly.degree() + 1, {0.0, 0.0});
  for (const auto& term : poly.terms())
    coeffs[term.exponents[frame.fiber_index]] +=
        term.coefficient * cipow(x, term.exponents[frame.base_index]);
  return coeffs;
}

// phi: (point, rng) -> contribution, or nullopt to reject the point
using CurvePhi =
    std::function<std::optional<double>(const CurveFiberPoint&, RandomStream&)>;

struct PassArrays {
  std::vector<double> u_phi;
  std::vector<double> u_area;
  std::vector<int> rejected;
  std::vector<int> degenerate;
};

void curve_sample(const PolynomialJet& jet, const IntegratorOptions& options, long i,
                  const CurvePhi& phi, PassArrays& arrays) {
  const Cp1Sample base = sample_cp1_fs_at(options.seed, static_cast<std::uint64_t>(i));
  RandomStream phi_rng(options.seed ^ kPhiStreamTag, static_cast<std::uint64_t>(i));
  const double scale = std::max(jet.coefficient_scale(), 1e-300);
  const int degree = jet.degree();

  double sum_phi = 0.0, sum_area = 0.0;
  int rejected = 0, degenerate_projections = 0;

  for (int fiber = 1; fiber <= 2; ++fiber) {
    const CurveChartFrame frame = curve_placement(fiber, base.chart_index);
    const auto coeffs = fiber_polynomial(jet.poly(), frame, base.x);
    std::vector<std::complex<double>> roots;
    try {
      roots = univariate_roots(coeffs);
    } catch (const DegenerateFiberError&) {
      ++degenerate_projections;
      continue;
    }
    for (const auto& y : roots) {
      Eigen::VectorXcd rep = Eigen::VectorXcd::Zero(3);
      rep(frame.one_index) = 1.0;
      rep(frame.base_index) = base.x;
      rep(frame.fiber_index) = y;
      const double rep_norm = rep.norm();
      const Eigen::VectorXcd unit = rep / rep_norm;

      if (std::abs(jet.value(unit)) > kResidualTolerance * scale) {
        ++rejected;
        continue;
      }
      const Eigen::VectorXcd grad = jet.gradient(unit);
      // the curve is partitioned by the largest fiber derivative
      int owner = 1;
      if (std::abs(grad(2)) >= std::abs(grad(1))) owner = 2;
      if (owner != fiber) continue;
      if (std::abs(grad(frame.fiber_index)) < kRamificationMargin * scale) {
        ++rejected;
        continue;
      }

      CurveFiberPoint point;
      point.branch.frame = frame;
      point.branch.x = base.x;
      point.branch.y = y;
      point.branch.yprime = -grad(frame.base_index) / grad(frame.fiber_index);
      point.branch.fy =
          grad(frame.fiber_index) * std::pow(rep_norm, degree - 1);
      point.unit = unit;

      const double lambda = branch_density(point.branch);
      if (!(lambda > 0.0)) {
        ++rejected;
        continue;
      }
      point.weight = lambda / base.density;

      const std::optional<double> value = phi(point, phi_rng);
      if (!value) {
        ++rejected;
        continue;
      }
      sum_area += point.weight;
      sum_phi += point.weight * *value;
    }
  }
  if (degenerate_projections == 2) ++rejected;

  arrays.u_phi[i] = M_PI * sum_phi;  // Area(CP^1) = pi is the base mass
  arrays.u_area[i] = M_PI * sum_area;
  arrays.rejected[i] = rejected;
  arrays.degenerate[i] = degenerate_projections;
}

PassArrays run_curve_pass(const PreparedVariety& prepared, const IntegratorOptions& options,
                          const CurvePhi& phi) {
  if (prepared.jet.num_vars() != 3)
    throw UnsupportedError("curve estimators require num_vars == 3 (CP^2)");
  if (options.samples < 1) throw InvalidArgumentError("samples must be >= 1");
  PassArrays arrays;
  arrays.u_phi.assign(options.samples, 0.0);
  arrays.u_area.assign(options.samples, 0.0);
  arrays.rejected.assign(options.samples, 0);
  arrays.degenerate.assign(options.samples, 0);
  parallel_for(options.samples, options.threads,
               [&](long i) { curve_sample(prepared.jet, options, i, phi, arrays); });
  return arrays;
}

// ---------------------------------------------------------------------------
// surface engine (N = 3): three fibered projections over CP^2 bases

struct SurfaceFiberPoint {
  Eigen::VectorXcd unit;
  double weight = 0.0;
};

using SurfacePhi =
    std::function<std::optional<double>(const SurfaceFiberPoint&, RandomStream&)>;

void surface_sample(const PolynomialJet& jet, const IntegratorOptions& options, long i,
                    const SurfacePhi& phi, PassArrays& arrays) {
  const CpnSample base = sample_cpn_fs_at(2, options.seed, static_cast<std::uint64_t>(i));
  RandomStream phi_rng(options.seed ^ kPhiStreamTag, static_cast<std::uint64_t>(i));
  const double scale = std::max(jet.coefficient_scale(), 1e-300);
  const int degree = jet.degree();
  const double base_mass = fs_volume(2);

  double sum_phi = 0.0, sum_area = 0.0;
  int rejected = 0, degenerate_projections = 0;

  for (int fiber = 1; fiber <= 3; ++fiber) {
    // base CP^2 coordinates in ascending index order, with the sampled chart
    // coordinate scaled to 1
    int base_coords[3];
    int bi = 0;
    for (int k = 0; k < 4; ++k)
      if (k != fiber) base_coords[bi++] = k;
    const int one_index = base_coords[base.chart_index];
    int affine_coords[2];
    int ai = 0;
    for (int k = 0; k < 3; ++k)
      if (k != base.chart_index) affine_coords[ai++] = base_coords[k];

    std::vector<std::complex<double>> coeffs(degree + 1, {0.0, 0.0});
    for (const auto& term : jet.poly().terms())
      coeffs[term.exponents[fiber]] +=
          term.coefficient * cipow(base.affine(0), term.exponents[affine_coords[0]]) *
          cipow(base.affine(1), term.exponents[affine_coords[1]]);

    std::vector<std::complex<double>> roots;
    try {
      roots = univariate_roots(coeffs);
    } catch (const DegenerateFiberError&) {
      ++degenerate_projections;
      continue;
    }
    for (const auto& y : roots) {
      Eigen::VectorXcd rep = Eigen::VectorXcd::Zero(4);
      rep(one_index) = 1.0;
      rep(affine_coords[0]) = base.affine(0);
      rep(affine_coords[1]) = base.affine(1);
      rep(fiber) = y;
      const Eigen::VectorXcd unit = rep / rep.norm();

      if (std::abs(jet.value(unit)) > kResidualTolerance * scale) {
        ++rejected;
        continue;
      }
      const Eigen::VectorXcd grad = jet.gradient(unit);
      int owner = 1;
      for (int k = 2; k <= 3; ++k)
        if (std::abs(grad(k)) > std::abs(grad(owner))) owner = k;
      if (owner != fiber) continue;
      if (std::abs(grad(fiber)) < kRamificationMargin * scale) {
        ++rejected;
        continue;
      }

      // induced 2x2 Hermitian metric pulled back through the branch
      const std::complex<double> yp1 = -grad(affine_coords[0]) / grad(fiber);
      const std::complex<double> yp2 = -grad(affine_coords[1]) / grad(fiber);
      Eigen::Vector3cd w(base.affine(0), base.affine(1), y);
      const double q = 1.0 + w.squaredNorm();
      Eigen::Matrix3cd h = -w.conjugate() * w.transpose() / (q * q);
      h.diagonal().array() += std::complex<double>(1.0 / q, 0.0);
      Eigen::Matrix<std::complex<double>, 3, 2> jac;
      jac << 1.0, 0.0, 0.0, 1.0, yp1, yp2;
      const Eigen::Matrix2cd induced = jac.transpose() * h * jac.conjugate();
      const double density = induced.determinant().real();
      if (!(density > 0.0)) {
        ++rejected;
        continue;
      }

      SurfaceFiberPoint point;
      point.unit = unit;
      point.weight = density / base.density;

      const std::optional<double> value = phi(point, phi_rng);
      if (!value) {
        ++rejected;
        continue;
      }
      sum_area += point.weight;
      sum_phi += point.weight * *value;
    }
  }
  if (degenerate_projections == 3) ++rejected;

  arrays.u_phi[i] = base_mass * sum_phi;
  arrays.u_area[i] = base_mass * sum_area;
  arrays.rejected[i] = rejected;
  arrays.degenerate[i] = degenerate_projections;
}

PassArrays run_surface_pass(const PreparedVariety& prepared,
                            const IntegratorOptions& options, const SurfacePhi& phi) {
  if (prepared.jet.num_vars() != 4)
    throw UnsupportedError("surface estimators require num_vars == 4 (CP^3)");
  if (options.samples < 1) throw InvalidArgumentError("samples must be >= 1");
  PassArrays arrays;
  arrays.u_phi.assign(options.samples, 0.0);
  arrays.u_area.assign(options.samples, 0.0);
  arrays.rejected.assign(options.samples, 0);
  arrays.degenerate.assign(options.samples, 0);
  parallel_for(options.samples, options.threads,
               [&](long i) { surface_sample(prepared.jet, options, i, phi, arrays); });
  return arrays;
}

// ---------------------------------------------------------------------------

long total_rejected(const PassArrays& arrays) {
  long total = 0;
  for (int r : arrays.rejected) total += r;
  return total;
}

CurvatureEstimate finish_estimate(const PreparedVariety& prepared,
                                  const IntegratorOptions& options, EstimateMethod method,
                                  const PassArrays& arrays, const Reduction& reduction,
                                  double scale_factor) {
  CurvatureEstimate estimate;
  estimate.value = reduction.mean * scale_factor;
  estimate.std_error = reduction.std_error * std::abs(scale_factor);
  estimate.n_samples = options.samples;
  estimate.n_rejected = total_rejected(arrays);
  estimate.seed = options.seed;
  estimate.method = method;
  estimate.median_of_means = reduction.median_of_means;
  estimate.rejection_warning = estimate.rejected_fraction() > 0.01;
  estimate.rotation = prepared.rotation;
  if (!std::isfinite(estimate.value) || !std::isfinite(estimate.std_error))
    throw NumericalError("estimate is not finite");
  return estimate;
}

std::optional<double> intrinsic_curvature_phi(const PolynomialJet& jet,
                                              const CurveFiberPoint& point) {
  double k = 0.0;
  try {
    k = gaussian_curvature(jet, point.branch);
  } catch (const BranchContinuationError&) {
    return std::nullopt;
  } catch (const SingularPointError&) {
    return std::nullopt;
  }
  if (!(k <= 4.0 + 1e-3)) return std::nullopt;  // curvature bound violated
  return std::min(k, 4.0);
}

double radial_profile_phi(const PolynomialJet& jet, const Eigen::VectorXcd& unit) {
  const int ambient = jet.num_vars() - 1;
  const SpherePoint z{unit};
  const FrameData frames = frames_at(jet, z);
  const PrincipalSpectrum spectrum =
      principal_spectrum(jet, z, frames.normal_basis.col(0), frames);
  RadialContext ctx;
  ctx.ambient_dim = ambient;
  ctx.manifold_dim = ambient - 1;
  ctx.kappas = spectrum.kappas;
  return radial_quadrature(ctx);
}

}  // namespace

const char* estimate_method_name(EstimateMethod method) {
  return kMethodNames[static_cast<int>(method)];
}

CurvatureEstimate total_curvature_curve(const HomogeneousPolynomial& F,
                                        const IntegratorOptions& options) {
  if (F.num_vars() != 3)
    throw UnsupportedError("total_curvature_curve requires a plane curve in CP^2");
  const PreparedVariety prepared = prepare_variety(F, options.seed);
  const CurvePhi phi = [&](const CurveFiberPoint& point,
                           RandomStream&) -> std::optional<double> {
    const std::optional<double> k = intrinsic_curvature_phi(prepared.jet, point);
    if (!k) return std::nullopt;
    return 8.0 * curve_pointwise_closed_form(*k);  // ((K-4)^2+4)/(6-K)
  };
  const PassArrays arrays = run_curve_pass(prepared, options, phi);
  const Reduction reduction = reduce_samples(arrays.u_phi, options.deterministic);
  return finish_estimate(prepared, options, EstimateMethod::curve_closed_form, arrays,
                         reduction, 1.0 / M_PI);
}

CurvatureEstimate area(const HomogeneousPolynomial& F, const IntegratorOptions& options) {
  const PreparedVariety prepared = prepare_variety(F, options.seed);
  if (F.num_vars() == 3) {
    const CurvePhi phi = [](const CurveFiberPoint&, RandomStream&) {
      return std::optional<double>(1.0);
    };
    const PassArrays arrays = run_curve_pass(prepared, options, phi);
    const Reduction reduction = reduce_samples(arrays.u_area, options.deterministic);
    return finish_estimate(prepared, options, EstimateMethod::area_only, arrays, reduction,
                           1.0);
  }
  if (F.num_vars() == 4) {
    const SurfacePhi phi = [](const SurfaceFiberPoint&, RandomStream&) {
      return std::optional<double>(1.0);
    };
    const PassArrays arrays = run_surface_pass(prepared, options, phi);
    const Reduction reduction = reduce_samples(arrays.u_area, options.deterministic);
    return finish_estimate(prepared, options, EstimateMethod::area_only, arrays, reduction,
                           1.0);
  }
  throw UnsupportedError("area supports curves in CP^2 and surfaces in CP^3");
}

CurvatureEstimate total_curvature_hypersurface(const HomogeneousPolynomial& F,
                                               const IntegratorOptions& options) {
  const PreparedVariety prepared = prepare_variety(F, options.seed);
  const int ambient = F.num_vars() - 1;
  if (ambient != 2 && ambient != 3)
    throw UnsupportedError("hypersurface estimator supports m = 1 and m = 2 only");
  const double prefactor = 4.0 * M_PI / fs_volume(ambient);
  if (ambient == 2) {
    const CurvePhi phi = [&](const CurveFiberPoint& point,
                             RandomStream&) -> std::optional<double> {
      return radial_profile_phi(prepared.jet, point.unit);
    };
    const PassArrays arrays = run_curve_pass(prepared, options, phi);
    const Reduction reduction = reduce_samples(arrays.u_phi, options.deterministic);
    return finish_estimate(prepared, options, EstimateMethod::hypersurface_radial, arrays,
                           reduction, prefactor);
  }
  const SurfacePhi phi = [&](const SurfaceFiberPoint& point,
                             RandomStream&) -> std::optional<double> {
    return radial_profile_phi(prepared.jet, point.unit);
  };
  const PassArrays arrays = run_surface_pass(prepared, options, phi);
  const Reduction reduction = reduce_samples(arrays.u_phi, options.deterministic);
  return finish_estimate(prepared, options, EstimateMethod::hypersurface_radial, arrays,
                         reduction, prefactor);
}

CurvatureEstimate total_curvature_sphere_lift(const HomogeneousPolynomial& F,
                                              const IntegratorOptions& options) {
  if (F.num_vars() != 3)
    throw UnsupportedError("sphere-lift estimator supports curves in CP^2");
  const PreparedVariety prepared = prepare_variety(F, options.seed);
  const int ambient = 2;
  const int sphere_dim = 2 * ambient + 1;
  const double sphere_volume = 2.0 * M_PI * fs_volume(ambient);

  const CurvePhi phi = [&](const CurveFiberPoint& point,
                           RandomStream& rng) -> std::optional<double> {
    const double phase = rng.uniform(options.phase_window_lo, options.phase_window_hi);
    const std::complex<double> rotation(std::cos(phase), std::sin(phase));
    const SpherePoint z{point.unit * rotation};
    const FrameData frames = frames_at(prepared.jet, z);
    const double angle = rng.uniform(0.0, 2.0 * M_PI);
    const Eigen::VectorXd normal = std::cos(angle) * frames.normal_basis.col(0) +
                                   std::sin(angle) * frames.normal_basis.col(1);
    const std::vector<double> eigs =
        raw_shape_eigenvalues(prepared.jet, z, normal, frames);
    const double inner = sphere_radial_quadrature(eigs, sphere_dim);
    // fibre circle (2 pi) times the unit-normal circle (2 pi)
    return 4.0 * M_PI * M_PI * inner;
  };
  const PassArrays arrays = run_curve_pass(prepared, options, phi);
  const Reduction reduction = reduce_samples(arrays.u_phi, options.deterministic);
  return finish_estimate(prepared, options, EstimateMethod::sphere_lift, arrays, reduction,
                         1.0 / sphere_volume);
}

CurvatureEstimate gauss_bonnet(const HomogeneousPolynomial& F,
                               const IntegratorOptions& options) {
  if (F.num_vars() != 3)
    throw UnsupportedError("gauss_bonnet requires a plane curve in CP^2");
  const PreparedVariety prepared = prepare_variety(F, options.seed);
  const CurvePhi phi = [&](const CurveFiberPoint& point,
                           RandomStream&) -> std::optional<double> {
    return intrinsic_curvature_phi(prepared.jet, point);
  };
  const PassArrays arrays = run_curve_pass(prepared, options, phi);

  // area control variate: a degree-d curve has area exactly d*pi (minimal in
  // its homology class), and the area weights are strongly correlated with
  // the curvature weights; regressing them out leaves only the genuine
  // K-variation in the error bar
  const long n = options.samples;
  const double exact_area = F.degree() * M_PI;
  double mean_k = 0.0, mean_a = 0.0;
  for (long i = 0; i < n; ++i) {
    mean_k += arrays.u_phi[i];
    mean_a += arrays.u_area[i];
  }
  mean_k /= n;
  mean_a /= n;
  double cov = 0.0, var_a = 0.0;
  for (long i = 0; i < n; ++i) {
    cov += (arrays.u_phi[i] - mean_k) * (arrays.u_area[i] - mean_a);
    var_a += (arrays.u_area[i] - mean_a) * (arrays.u_area[i] - mean_a);
  }
  const double coefficient = (var_a > 0.0) ? cov / var_a : 0.0;

  std::vector<double> adjusted(n);
  for (long i = 0; i < n; ++i)
    adjusted[i] = arrays.u_phi[i] - coefficient * (arrays.u_area[i] - exact_area);
  const Reduction reduction = reduce_samples(adjusted, options.deterministic);
  return finish_estimate(prepared, options, EstimateMethod::gauss_bonnet, arrays, reduction,
                         1.0 / (2.0 * M_PI));
}

CurvatureEstimate average_curvature_estimate(const HomogeneousPolynomial& F,
                                             const IntegratorOptions& options) {
  if (F.num_vars() != 3)
    throw UnsupportedError("average curvature requires a plane curve in CP^2");
  const PreparedVariety prepared = prepare_variety(F, options.seed);
  const CurvePhi phi = [&](const CurveFiberPoint& point,
                           RandomStream&) -> std::optional<double> {
    return intrinsic_curvature_phi(prepared.jet, point);
  };
  const PassArrays arrays = run_curve_pass(prepared, options, phi);

  const Reduction num = reduce_samples(arrays.u_phi, options.deterministic);
  const Reduction den = reduce_samples(arrays.u_area, options.deterministic);
  if (!(den.mean != 0.0)) throw NumericalError("area estimate vanished");
  const double ratio = num.mean / den.mean;

  // delta method for the ratio of correlated sample means
  const long n = options.samples;
  double cov = 0.0;
  for (long i = 0; i < n; ++i)
    cov += (arrays.u_phi[i] - num.mean) * (arrays.u_area[i] - den.mean);
  cov /= std::max<long>(n - 1, 1);
  const double var_num = num.std_error * num.std_error * n;
  const double var_den = den.std_error * den.std_error * n;
  const double ratio_var =
      (var_num - 2.0 * ratio * cov + ratio * ratio * var_den) / (den.mean * den.mean * n);

  CurvatureEstimate estimate;
  estimate.value = ratio;
  estimate.std_error = std::sqrt(std::max(ratio_var, 0.0));
  estimate.n_samples = options.samples;
  estimate.n_rejected = total_rejected(arrays);
  estimate.seed = options.seed;
  estimate.method = EstimateMethod::gauss_bonnet;
  estimate.rejection_warning = estimate.rejected_fraction() > 0.01;
  estimate.rotation = prepared.rotation;
  if (!std::isfinite(estimate.value)) throw NumericalError("estimate is not finite");
  return estimate;
}

std::vector<SpherePoint> sample_variety_points(const HomogeneousPolynomial& F, long count,
                                               std::uint64_t seed) {
  if (count < 1) throw InvalidArgumentError("count must be >= 1");
  if (F.num_vars() != 3 && F.num_vars() != 4)
    throw UnsupportedError("sampling supports curves in CP^2 and surfaces in CP^3");
  const PreparedVariety prepared = prepare_variety(F, seed);
  const double scale = std::max(prepared.jet.coefficient_scale(), 1e-300);
  const int nv = F.num_vars();

  std::vector<SpherePoint> points;
  points.reserve(count);
  std::uint64_t index = 0;
  const long max_attempts = 1000 * count + 1000;

  auto push_if_valid = [&](const Eigen::VectorXcd& rep, int fiber) {
    const Eigen::VectorXcd unit = rep / rep.norm();
    if (std::abs(prepared.jet.value(unit)) > kResidualTolerance * scale) return;
    const Eigen::VectorXcd grad = prepared.jet.gradient(unit);
    int owner = 1;
    for (int k = 2; k < nv; ++k)
      if (std::abs(grad(k)) > std::abs(grad(owner))) owner = k;
    if (owner != fiber) return;  // each point is taken from its owning chart once
    Eigen::VectorXcd mapped = prepared.rotation ? (*prepared.rotation * unit) : unit;
    points.push_back(SpherePoint{std::move(mapped)});
  };

  while (static_cast<long>(points.size()) < count &&
         static_cast<long>(index) < max_attempts) {
    if (nv == 3) {
      const Cp1Sample base = sample_cp1_fs_at(seed, index++);
      for (int fiber = 1; fiber <= 2 && static_cast<long>(points.size()) < count;
           ++fiber) {
        const CurveChartFrame frame = curve_placement(fiber, base.chart_index);
        const auto coeffs = fiber_polynomial(prepared.jet.poly(), frame, base.x);
        std::vector<std::complex<double>> roots;
        try {
          roots = univariate_roots(coeffs);
        } catch (const DegenerateFiberError&) {
          continue;
        }
        for (const auto& y : roots) {
          Eigen::VectorXcd rep = Eigen::VectorXcd::Zero(3);
          rep(frame.one_index) = 1.0;
          rep(frame.base_index) = base.x;
          rep(frame.fiber_index) = y;
          push_if_valid(rep, fiber);
          if (static_cast<long>(points.size()) >= count) break;
        }
      }
    } else {
      const CpnSample base = sample_cpn_fs_at(2, seed, index++);
      for (int fiber = 1; fiber <= 3 && static_cast<long>(points.size()) < count;
           ++fiber) {
        int base_coords[3];
        int bi = 0;
        for (int k = 0; k < 4; ++k)
          if (k != fiber) base_coords[bi++] = k;
        const int one_index = base_coords[base.chart_index];
        int affine_coords[2];
        int ai = 0;
        for (int k = 0; k < 3; ++k)
          if (k != base.chart_index) affine_coords[ai++] = base_coords[k];
        std::vector<std::complex<double>> coeffs(F.degree() + 1, {0.0, 0.0});
        for (const auto& term : prepared.jet.poly().terms())
          coeffs[term.exponents[fiber]] +=
              term.coefficient *
              cipow(base.affine(0), term.exponents[affine_coords[0]]) *
              cipow(base.affine(1), term.exponents[affine_coords[1]]);
        std::vector<std::complex<double>> roots;
        try {
          roots = univariate_roots(coeffs);
        } catch (const DegenerateFiberError&) {
          continue;
        }
        for (const auto& y : roots) {
          Eigen::VectorXcd rep = Eigen::VectorXcd::Zero(4);
          rep(one_index) = 1.0;
          rep(affine_coords[0]) = base.affine(0);
          rep(affine_coords[1]) = base.affine(1);
          rep(fiber) = y;
          push_if_valid(rep, fiber);
          if (static_cast<long>(points.size()) >= count) break;
        }
      }
    }
  }
  if (static_cast<long>(points.size()) < count)
    throw NumericalError("failed to sample the requested number of points");
  return points;
}

std::vector<BranchPoint> sample_curve_branch_points(const HomogeneousPolynomial& F,
                                                    long count, std::uint64_t seed) {
  if (F.num_vars() != 3)
    throw UnsupportedError("branch points require a plane curve in CP^2");
  if (count < 1) throw InvalidArgumentError("count must be >= 1");
  const PolynomialJet jet(F);
  const double scale = std::max(jet.coefficient_scale(), 1e-300);

  std::vector<BranchPoint> points;
  points.reserve(count);
  std::uint64_t index = 0;
  const long max_attempts = 1000 * count + 1000;
  while (static_cast<long>(points.size()) < count &&
         static_cast<long>(index) < max_attempts) {
    const Cp1Sample base = sample_cp1_fs_at(seed, index++);
    for (int fiber = 1; fiber <= 2 && static_cast<long>(points.size()) < count; ++fiber) {
      const CurveChartFrame frame = curve_placement(fiber, base.chart_index);
      const auto coeffs = fiber_polynomial(F, frame, base.x);
      std::vector<std::complex<double>> roots;
      try {
        roots = univariate_roots(coeffs);
      } catch (const DegenerateFiberError&) {
        continue;
      }
      for (const auto& y : roots) {
        Eigen::VectorXcd rep = Eigen::VectorXcd::Zero(3);
        rep(frame.one_index) = 1.0;
        rep(frame.base_index) = base.x;
        rep(frame.fiber_index) = y;
        const Eigen::VectorXcd unit = rep / rep.norm();
        if (std::abs(jet.value(unit)) > kResidualTolerance * scale) continue;
        const Eigen::VectorXcd grad = jet.gradient(unit);
        int owner = 1;
        if (std::abs(grad(2)) >= std::abs(grad(1))) owner = 2;
        if (owner != fiber) continue;
        if (std::abs(grad(frame.fiber_index)) < kRamificationMargin * scale) continue;
        try {
          points.push_back(make_branch_point(jet, frame, base.x, y));
        } catch (const Error&) {
          continue;
        }
        if (static_cast<long>(points.size()) >= count) break;
      }
    }
  }
  if (static_cast<long>(points.size()) < count)
    throw NumericalError("failed to sample the requested number of branch points");
  return points;
}

}  // namespace projcurv
