#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fubini_study.hpp"
#include "polynomial_jet.hpp"

namespace projcurv {

// Second-fundamental-form spectra of the Hopf lift
// M~ = F^{-1}(0) \cap S^{2N+1}, computed on the lift as a real constraint
// manifold in flat C^{N+1}: the Hessians of Re F, Im F and of the sphere
// constraint are exact, and the spectrum of A_u downstairs is recovered from
// the lift (same kappas plus one zero along the Hopf fibre).
//
// Real-vector layout: C^{N+1} is identified with R^{2N+2} by stacking
// (Re z_0..Re z_N, Im z_0..Im z_N).

Eigen::VectorXd real_form(const Eigen::VectorXcd& z);
Eigen::VectorXcd complex_form(const Eigen::VectorXd& v);
// multiplication by i in the stacked layout
Eigen::VectorXd apply_complex_structure(const Eigen::VectorXd& v);

struct FrameData {
  Eigen::MatrixXd tangent_basis;   // (2N+2) x (2m+1), orthonormal columns
  Eigen::MatrixXd normal_basis;    // (2N+2) x (2N-2m), orthonormal columns
  Eigen::VectorXd fiber_direction; // i*z; lies in the tangent span
};

struct PrincipalSpectrum {
  std::vector<double> eigenvalues;  // full lifted spectrum, ascending
  std::vector<double> kappas;       // m nonnegative representatives, descending
  double pairing_residual = 0.0;    // max |e_i + e_j| over the +- matching
  double fiber_residual = 0.0;      // |eigenvalue closest to 0|
};

// Orthonormal frames at a point of the lift. Requires |F(z)| < 1e-9 (relative
// to the coefficient scale) and a well-conditioned constraint gradient;
// throws SingularPointError otherwise.
FrameData frames_at(const PolynomialJet& F, const SpherePoint& z);

// Symmetric matrix of the shape operator A_u of the lift in the tangent
// frame, for a unit normal u from the frame's normal span. Sign convention:
// A_u(e) = -(grad_e U)^tangent.
Eigen::MatrixXd second_fundamental_form(const PolynomialJet& F, const SpherePoint& z,
                                        const Eigen::VectorXd& u,
                                        const FrameData& frames);

// Eigenvalues of A_u with structure validation: one eigenvalue within
// tolerance of 0 (the fibre), the rest matched into +- pairs. Violations
// throw SpectrumStructureError.
PrincipalSpectrum principal_spectrum(const PolynomialJet& F, const SpherePoint& z,
                                     const Eigen::VectorXd& u, const FrameData& frames);

PrincipalSpectrum principal_spectrum(const PolynomialJet& F, const SpherePoint& z,
                                     const Eigen::VectorXd& u);

// cos(theta) u + sin(theta) J(u): rotation of the normal through the complex
// structure. The kappas are invariant under this rotation.
Eigen::VectorXd rotate_normal(const Eigen::VectorXd& u, double theta);

// Raw eigenvalues of A_u without the fibre/pairing validation; used by the
// sphere-side estimator, which must not assume the structure it verifies.
std::vector<double> raw_shape_eigenvalues(const PolynomialJet& F, const SpherePoint& z,
                                          const Eigen::VectorXd& u,
                                          const FrameData& frames);

}  // namespace projcurv
