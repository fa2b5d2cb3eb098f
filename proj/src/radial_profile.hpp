#pragma once

#include <utility>
#include <vector>

namespace projcurv {

// Pointwise radial data for a complex m-fold in CP^N: the nonnegative
// holomorphic principal curvatures kappa_i at one point and normal line.
struct RadialContext {
  int ambient_dim = 0;          // N
  int manifold_dim = 0;         // m, with 1 <= m < N
  std::vector<double> kappas;   // length m, each >= 0
};

// |prod_i (cos^2 r - kappa_i^2 sin^2 r)| * cos r * sin^{2N-2m-1} r on [0, pi/2]
double cp_integrand(const RadialContext& ctx, double r);

// Same value through the alternating elementary-symmetric-function form in
// sigma_i(kappa^2); must agree with cp_integrand to 1e-12 relative.
double cp_integrand_symmetric(const RadialContext& ctx, double r);

// |prod_j (cos r - eig_j sin r)| * sin^{N_s-n-1} r on [0, pi] for an
// n-manifold in S^{N_s}, eigs = the full shape-operator spectrum.
double sphere_integrand(const std::vector<double>& eigs, int sphere_dim, double r);

// lhs: sphere integrand of the Hopf lift (eigs {0, +-kappa_i}, n = 2m+1,
// N_s = 2N+1); rhs: cp_integrand. The two must agree pointwise on [0, pi/2].
std::pair<double, double> lift_identity_check(const RadialContext& ctx, double r);

// lhs: |prod_j (eig_j sin t - cos t)| * sin^{N_s-n-1} t, the Euclidean-normal
// form; rhs: sphere_integrand. Equal for all t in [0, pi].
std::pair<double, double> euclidean_density_check(const std::vector<double>& eigs,
                                                  int sphere_dim, double theta);

// Signed Jacobian of the normal exponential map at radius r > 0:
// prod_i (cos r - kappa_i sin r) over the full +-kappa list, times
// cos r sin^{2N-2m-1} r / r^{2N-2m-1}. Satisfies
// |dexp_det| * r^{2N-2m-1} == cp_integrand.
double dexp_det(const RadialContext& ctx, double r);

// \int_0^{pi/2} cp_integrand dr. The integrand kinks at r = arctan(1/kappa_i);
// the domain is split at those exact roots and fixed-order Gauss-Legendre is
// applied per smooth piece, restoring spectral convergence.
double radial_quadrature(const RadialContext& ctx);

// \int_0^{pi} sphere_integrand dr with the analogous kink splitting at
// r = atan2(1, eig_j).
double sphere_radial_quadrature(const std::vector<double>& eigs, int sphere_dim);

// Curve closed form (m=1, N=2): (1/8) ((K-4)^2 + 4) / (6 - K) for K <= 4.
// Throws DomainError for K > 4 (an invalid curvature upstream).
double curve_pointwise_closed_form(double K);

// The sign-change radius arcsin(sqrt(2/(6-K))) of the curve integrand.
double curve_alpha(double K);

// Nodes and weights on [-1, 1]; computed once per order and cached.
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace projcurv
