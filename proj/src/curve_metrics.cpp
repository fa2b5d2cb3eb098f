#include "curve_metrics.hpp"

#include <cmath>

#include "errors.hpp"
#include "shape_spectrum.hpp"

namespace projcurv {

namespace {

constexpr double kRamificationMargin = 1e-6;
constexpr double kOnCurveTolerance = 1e-9;
constexpr double kNewtonTolerance = 1e-13;
constexpr int kNewtonMaxIterations = 30;

}  // namespace

Eigen::VectorXcd branch_representative(const BranchPoint& b) {
  Eigen::VectorXcd rep = Eigen::VectorXcd::Zero(3);
  rep(b.frame.one_index) = 1.0;
  rep(b.frame.base_index) = b.x;
  rep(b.frame.fiber_index) = b.y;
  return rep;
}

BranchPoint make_branch_point(const PolynomialJet& F, const CurveChartFrame& frame,
                              std::complex<double> x, std::complex<double> y) {
  if (F.num_vars() != 3)
    throw InvalidArgumentError("branch points live on plane curves (num_vars == 3)");
  BranchPoint b;
  b.frame = frame;
  b.x = x;
  b.y = y;

  // thresholds measured at the unit representative so they track the
  // coefficient scale, not the chart magnification
  const Eigen::VectorXcd rep = branch_representative(b);
  const Eigen::VectorXcd unit = rep / rep.norm();
  const double scale = std::max(F.coefficient_scale(), 1e-300);
  if (std::abs(F.value(unit)) > kOnCurveTolerance * scale)
    throw InvalidArgumentError("branch point is not on the curve");
  const std::complex<double> fy_unit = F.partial(frame.fiber_index, unit);
  if (std::abs(fy_unit) < kRamificationMargin * scale)
    throw SingularPointError("fiber derivative below the ramification margin");

  b.fy = F.partial(frame.fiber_index, rep);
  const std::complex<double> fx = F.partial(frame.base_index, rep);
  b.yprime = -fx / b.fy;
  return b;
}

double branch_density(const BranchPoint& b) {
  const double q = 1.0 + std::norm(b.x) + std::norm(b.y);
  const double yp2 = std::norm(b.yprime);
  const std::complex<double> mixed = std::conj(b.x) + std::conj(b.y) * b.yprime;
  return ((1.0 + yp2) * q - std::norm(mixed)) / (q * q);
}

std::complex<double> continue_fiber(const PolynomialJet& F, const CurveChartFrame& frame,
                                    std::complex<double> x_new,
                                    std::complex<double> y_guess) {
  Eigen::VectorXcd rep = Eigen::VectorXcd::Zero(3);
  rep(frame.one_index) = 1.0;
  rep(frame.base_index) = x_new;

  const double scale = std::max(F.coefficient_scale(), 1e-300);
  std::complex<double> y = y_guess;
  for (int it = 0; it < kNewtonMaxIterations; ++it) {
    rep(frame.fiber_index) = y;
    const double size = rep.norm();
    const std::complex<double> f = F.value(rep);
    const double local_scale = scale * std::pow(size, F.degree());
    if (std::abs(f) < kNewtonTolerance * local_scale) return y;
    const std::complex<double> fy = F.partial(frame.fiber_index, rep);
    if (std::abs(fy) < kRamificationMargin * scale * std::pow(size, F.degree() - 1))
      throw BranchContinuationError("continuation hit the ramification margin");
    y -= f / fy;
    if (!std::isfinite(y.real()) || !std::isfinite(y.imag()))
      throw BranchContinuationError("continuation diverged");
  }
  throw BranchContinuationError("fiber Newton did not converge");
}

namespace {

double log_density_at(const PolynomialJet& F, const CurveChartFrame& frame,
                      std::complex<double> x, std::complex<double> y_guess) {
  const std::complex<double> y = continue_fiber(F, frame, x, y_guess);
  const BranchPoint b = make_branch_point(F, frame, x, y);
  const double lambda = branch_density(b);
  if (!(lambda > 0.0))
    throw NumericalError("nonpositive induced metric density");
  return std::log(lambda);
}

// (log lambda)(x + h) + ... + (log lambda)(x - ih) - 4 log lambda(x), / h^2
double laplacian_term(const PolynomialJet& F, const BranchPoint& b, double h,
                      double center_value) {
  static const std::complex<double> dirs[4] = {{1.0, 0.0}, {-1.0, 0.0},
                                               {0.0, 1.0}, {0.0, -1.0}};
  double sum = 0.0;
  for (const auto& dir : dirs)
    sum += log_density_at(F, b.frame, b.x + h * dir, b.y);
  return (sum - 4.0 * center_value) / (h * h);
}

}  // namespace

double gaussian_curvature(const PolynomialJet& F, const BranchPoint& b, double step) {
  if (!(step > 0.0)) throw InvalidArgumentError("step must be positive");
  const double lambda0 = branch_density(b);
  if (!(lambda0 > 0.0)) throw NumericalError("nonpositive induced metric density");
  const double center = std::log(lambda0);
  const double coarse = laplacian_term(F, b, step, center);
  const double fine = laplacian_term(F, b, step / 2.0, center);
  const double laplacian = (4.0 * fine - coarse) / 3.0;
  return -laplacian / (2.0 * lambda0);
}

SpherePoint lift_branch(const BranchPoint& b) {
  const Eigen::VectorXcd rep = branch_representative(b);
  return SpherePoint{rep / rep.norm()};
}

std::pair<double, double> gauss_equation_check(const PolynomialJet& F,
                                               const BranchPoint& b) {
  const double k_intrinsic = gaussian_curvature(F, b);
  const SpherePoint z = lift_branch(b);
  const FrameData frames = frames_at(F, z);
  const PrincipalSpectrum spectrum =
      principal_spectrum(F, z, frames.normal_basis.col(0), frames);
  const double kappa = spectrum.kappas.at(0);
  return {k_intrinsic, 4.0 - 2.0 * kappa * kappa};
}

}  // namespace projcurv
