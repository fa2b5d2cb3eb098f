#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "polynomial.hpp"

namespace projcurv {

// A polynomial with its exact symbolic first and second partials, computed
// once and evaluated many times along an estimator run.
class PolynomialJet {
 public:
  explicit PolynomialJet(HomogeneousPolynomial poly);

  const HomogeneousPolynomial& poly() const { return poly_; }
  int num_vars() const { return poly_.num_vars(); }
  int degree() const { return poly_.degree(); }
  double coefficient_scale() const { return scale_; }

  std::complex<double> value(const Eigen::VectorXcd& z) const;
  std::complex<double> partial(int i, const Eigen::VectorXcd& z) const;
  Eigen::VectorXcd gradient(const Eigen::VectorXcd& z) const;
  Eigen::MatrixXcd hessian(const Eigen::VectorXcd& z) const;  // complex symmetric

 private:
  HomogeneousPolynomial poly_;
  double scale_ = 0.0;
  std::vector<HomogeneousPolynomial> grad_;
  std::vector<HomogeneousPolynomial> hess_;  // upper triangle, row-major
};

}  // namespace projcurv
