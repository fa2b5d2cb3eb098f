#pragma once

#include <complex>
#include <utility>

#include "fubini_study.hpp"
#include "polynomial_jet.hpp"

namespace projcurv {

// A plane curve V(F) in CP^2 is worked on through affine charts: one
// homogeneous coordinate is set to 1, one serves as the base of a branched
// projection and one as the fiber solved from f = 0.
struct CurveChartFrame {
  int one_index = 0;
  int base_index = 1;
  int fiber_index = 2;
};

// the default x-projection chart {z0 = 1, base z1, fiber z2}
inline CurveChartFrame default_curve_frame() { return CurveChartFrame{0, 1, 2}; }

struct BranchPoint {
  CurveChartFrame frame;
  std::complex<double> x;       // base affine coordinate
  std::complex<double> y;       // fiber coordinate with f(x, y) = 0
  std::complex<double> fy;      // df/dy at the point (conditioning witness)
  std::complex<double> yprime;  // dy/dx = -fx/fy
};

// Homogeneous representative of a branch point (1 at one_index, x at
// base_index, y at fiber_index), not normalized.
Eigen::VectorXcd branch_representative(const BranchPoint& b);

// Validates the on-curve residual and the ramification margin
// |fy| >= 1e-6 * coefficient scale (measured at the unit representative),
// then fills the derivative fields. Throws SingularPointError when the
// fiber derivative is below the margin.
BranchPoint make_branch_point(const PolynomialJet& F, const CurveChartFrame& frame,
                              std::complex<double> x, std::complex<double> y);

// Induced Fubini-Study metric density lambda with ds^2 = lambda |dx|^2:
//   lambda = [(1+|y'|^2) Q - |conj(x) + conj(y) y'|^2] / Q^2,  Q = 1+|x|^2+|y|^2.
double branch_density(const BranchPoint& b);

// Newton continuation of the fiber coordinate to a nearby base point,
// warm-started from y_guess. Divergence (near ramification) throws
// BranchContinuationError, never a silent root swap.
std::complex<double> continue_fiber(const PolynomialJet& F, const CurveChartFrame& frame,
                                    std::complex<double> x_new,
                                    std::complex<double> y_guess);

// Gaussian curvature of the induced metric, K = -(1/2 lambda) Lap log lambda,
// by a centered 5-point Laplacian of log lambda with one Richardson level.
// The default step balances the h^4 truncation against the 1/h^2 roundoff
// amplification of the log-density evaluations.
double gaussian_curvature(const PolynomialJet& F, const BranchPoint& b,
                          double step = 1e-3);

// Unit sphere representative of the branch point (for the lifted pipeline).
SpherePoint lift_branch(const BranchPoint& b);

// (K_intrinsic, K_extrinsic): chart differentiation vs 4 - 2 kappa^2 with
// kappa from the lifted shape-operator spectrum. Two independent pipelines;
// they must agree to 1e-4.
std::pair<double, double> gauss_equation_check(const PolynomialJet& F,
                                               const BranchPoint& b);

}  // namespace projcurv
