#include "shape_spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace projcurv {

namespace {

constexpr double kOnCurveTolerance = 1e-9;
constexpr double kSpectrumTolerance = 1e-7;

void check_on_variety(const PolynomialJet& F, const Eigen::VectorXcd& z) {
  const double scale = std::max(F.coefficient_scale(), 1e-300);
  if (std::abs(F.value(z)) > kOnCurveTolerance * scale)
    throw InvalidArgumentError("point is not on the variety");
}

}  // namespace

Eigen::VectorXd real_form(const Eigen::VectorXcd& z) {
  const int n = static_cast<int>(z.size());
  Eigen::VectorXd v(2 * n);
  v.head(n) = z.real();
  v.tail(n) = z.imag();
  return v;
}

Eigen::VectorXcd complex_form(const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size()) / 2;
  Eigen::VectorXcd z(n);
  z.real() = v.head(n);
  z.imag() = v.tail(n);
  return z;
}

Eigen::VectorXd apply_complex_structure(const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size()) / 2;
  Eigen::VectorXd out(2 * n);
  out.head(n) = -v.tail(n);
  out.tail(n) = v.head(n);
  return out;
}

FrameData frames_at(const PolynomialJet& F, const SpherePoint& z) {
  const int nv = F.num_vars();
  if (static_cast<int>(z.z.size()) != nv)
    throw InvalidArgumentError("sphere point dimension mismatch");
  if (std::abs(z.z.norm() - 1.0) > 1e-9)
    throw InvalidArgumentError("sphere point must be a unit vector");
  check_on_variety(F, z.z);

  const int dim = 2 * nv;  // real ambient dimension 2N+2
  const Eigen::VectorXd zr = real_form(z.z);

  // grad(Re F) = conj of the complex gradient, grad(Im F) = i * grad(Re F);
  // both are orthogonal to z along F = 0 by the Euler identity.
  const Eigen::VectorXcd grad = F.gradient(z.z);
  const Eigen::VectorXd g_re = real_form(grad.conjugate());
  const Eigen::VectorXd g_im = apply_complex_structure(g_re);

  Eigen::VectorXd n1 = g_re - g_re.dot(zr) * zr;
  Eigen::VectorXd n2 = g_im - g_im.dot(zr) * zr;

  // conditioning of the projected constraint gradients via their 2x2 Gram
  const double a = n1.squaredNorm();
  const double b = n2.squaredNorm();
  const double c = n1.dot(n2);
  const double tr = a + b;
  const double det = a * b - c * c;
  const double disc = std::sqrt(std::max(tr * tr / 4.0 - det, 0.0));
  const double smax = std::sqrt(std::max(tr / 2.0 + disc, 0.0));
  const double smin = std::sqrt(std::max(tr / 2.0 - disc, 0.0));
  if (!(smin > 1e-8 * smax) || smax == 0.0)
    throw SingularPointError("constraint gradients nearly dependent at this point");

  n1.normalize();
  n2 -= n2.dot(n1) * n1;
  n2.normalize();

  // complete {z, n1, n2} to an orthonormal basis; the trailing QR columns
  // span the tangent space of the lift
  Eigen::MatrixXd span(dim, 3);
  span.col(0) = zr;
  span.col(1) = n1;
  span.col(2) = n2;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(span);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dim, dim);

  FrameData frames;
  frames.tangent_basis = q.rightCols(dim - 3);
  frames.normal_basis.resize(dim, 2);
  frames.normal_basis.col(0) = n1;
  frames.normal_basis.col(1) = n2;
  frames.fiber_direction = apply_complex_structure(zr);
  return frames;
}

Eigen::MatrixXd second_fundamental_form(const PolynomialJet& F, const SpherePoint& z,
                                        const Eigen::VectorXd& u,
                                        const FrameData& frames) {
  const int nv = F.num_vars();
  const int dim = 2 * nv;
  if (static_cast<int>(u.size()) != dim)
    throw InvalidArgumentError("normal vector dimension mismatch");
  if (std::abs(u.norm() - 1.0) > 1e-8)
    throw InvalidArgumentError("normal vector must be unit length");

  const Eigen::VectorXd zr = real_form(z.z);
  if (std::abs(u.dot(zr)) > 1e-8)
    throw InvalidArgumentError("normal vector must be tangent to the sphere");
  const Eigen::VectorXd residual =
      u - frames.normal_basis * (frames.normal_basis.transpose() * u);
  if (residual.norm() > 1e-8)
    throw InvalidArgumentError("normal vector is outside the normal span");

  // constraint gradients: g0 = (|z|^2-1)/2 with grad z and Hess = Id,
  // g1 = Re F, g2 = Im F with exact flat Hessians from the complex Hessian
  const Eigen::VectorXcd grad = F.gradient(z.z);
  const Eigen::VectorXd g_re = real_form(grad.conjugate());
  const Eigen::VectorXd g_im = apply_complex_structure(g_re);

  Eigen::MatrixXd constraint_grads(dim, 3);
  constraint_grads.col(0) = zr;
  constraint_grads.col(1) = g_re;
  constraint_grads.col(2) = g_im;

  const Eigen::Matrix3d gram = constraint_grads.transpose() * constraint_grads;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> gram_eigs(gram);
  const double lo = gram_eigs.eigenvalues()(0);
  const double hi = gram_eigs.eigenvalues()(2);
  if (!(lo > 0.0) || std::sqrt(hi / lo) > 1e10)
    throw SingularPointError("constraint Gram system ill-conditioned");

  const Eigen::Vector3d rhs = constraint_grads.transpose() * u;
  const Eigen::Vector3d coeffs = gram.ldlt().solve(rhs);

  // B[a][b] = -sum_k c_k Hess g_k(t_a, t_b); for the holomorphic constraints
  // the real Hessians act through the complex bilinear d^2F
  const int tdim = static_cast<int>(frames.tangent_basis.cols());
  Eigen::MatrixXcd tangent_c(nv, tdim);
  for (int a = 0; a < tdim; ++a)
    tangent_c.col(a) = complex_form(frames.tangent_basis.col(a));

  const Eigen::MatrixXcd hess = F.hessian(z.z);
  const Eigen::MatrixXcd d2 = tangent_c.transpose() * hess * tangent_c;

  Eigen::MatrixXd b(tdim, tdim);
  for (int a = 0; a < tdim; ++a)
    for (int bidx = 0; bidx < tdim; ++bidx)
      b(a, bidx) = -(coeffs(1) * d2(a, bidx).real() + coeffs(2) * d2(a, bidx).imag());
  b.diagonal().array() -= coeffs(0);
  return 0.5 * (b + b.transpose());
}

namespace {

PrincipalSpectrum spectrum_from_matrix(const Eigen::MatrixXd& b) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  if (solver.info() != Eigen::Success)
    throw NumericalError("shape operator eigensolver failed");
  const Eigen::VectorXd eigs = solver.eigenvalues();  // ascending
  const int n = static_cast<int>(eigs.size());

  PrincipalSpectrum spectrum;
  spectrum.eigenvalues.assign(eigs.data(), eigs.data() + n);

  const double radius = std::max(std::abs(eigs(0)), std::abs(eigs(n - 1)));
  const double tol = kSpectrumTolerance * std::max(1.0, radius);

  int fiber_index = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(eigs(i)) < std::abs(eigs(fiber_index))) fiber_index = i;
  spectrum.fiber_residual = std::abs(eigs(fiber_index));
  if (spectrum.fiber_residual >= tol)
    throw SpectrumStructureError("no eigenvalue near zero for the Hopf fibre");

  std::vector<double> rest;
  rest.reserve(n - 1);
  for (int i = 0; i < n; ++i)
    if (i != fiber_index) rest.push_back(eigs(i));
  // rest is still ascending; pair smallest with largest
  const int pairs = static_cast<int>(rest.size()) / 2;
  if (static_cast<int>(rest.size()) % 2 != 0)
    throw SpectrumStructureError("odd number of non-fibre eigenvalues");
  double pairing_residual = 0.0;
  for (int i = 0; i < pairs; ++i)
    pairing_residual =
        std::max(pairing_residual, std::abs(rest[i] + rest[rest.size() - 1 - i]));
  spectrum.pairing_residual = pairing_residual;
  if (pairing_residual >= tol)
    throw SpectrumStructureError("spectrum is not symmetric under negation");

  spectrum.kappas.reserve(pairs);
  for (int i = 0; i < pairs; ++i)
    spectrum.kappas.push_back(
        std::max(0.0, 0.5 * (rest[rest.size() - 1 - i] - rest[i])));
  return spectrum;
}

}  // namespace

PrincipalSpectrum principal_spectrum(const PolynomialJet& F, const SpherePoint& z,
                                     const Eigen::VectorXd& u, const FrameData& frames) {
  return spectrum_from_matrix(second_fundamental_form(F, z, u, frames));
}

PrincipalSpectrum principal_spectrum(const PolynomialJet& F, const SpherePoint& z,
                                     const Eigen::VectorXd& u) {
  const FrameData frames = frames_at(F, z);
  return principal_spectrum(F, z, u, frames);
}

Eigen::VectorXd rotate_normal(const Eigen::VectorXd& u, double theta) {
  return std::cos(theta) * u + std::sin(theta) * apply_complex_structure(u);
}

std::vector<double> raw_shape_eigenvalues(const PolynomialJet& F, const SpherePoint& z,
                                          const Eigen::VectorXd& u,
                                          const FrameData& frames) {
  const Eigen::MatrixXd b = second_fundamental_form(F, z, u, frames);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  if (solver.info() != Eigen::Success)
    throw NumericalError("shape operator eigensolver failed");
  const Eigen::VectorXd eigs = solver.eigenvalues();
  return std::vector<double>(eigs.data(), eigs.data() + eigs.size());
}

}  // namespace projcurv
