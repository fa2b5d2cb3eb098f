#include "polynomial_jet.hpp"

#include <span>

namespace projcurv {

PolynomialJet::PolynomialJet(HomogeneousPolynomial poly) : poly_(std::move(poly)) {
  scale_ = poly_.coefficient_scale();
  const int n = poly_.num_vars();
  grad_.reserve(n);
  for (int i = 0; i < n; ++i) grad_.push_back(poly_.partial_derivative(i));
  hess_.reserve(n * (n + 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) hess_.push_back(grad_[i].partial_derivative(j));
}

std::complex<double> PolynomialJet::value(const Eigen::VectorXcd& z) const {
  return poly_.evaluate(std::span<const std::complex<double>>(z.data(), z.size()));
}

std::complex<double> PolynomialJet::partial(int i, const Eigen::VectorXcd& z) const {
  const auto& p = grad_[i];
  if (p.is_zero()) return {0.0, 0.0};
  return p.evaluate(std::span<const std::complex<double>>(z.data(), z.size()));
}

Eigen::VectorXcd PolynomialJet::gradient(const Eigen::VectorXcd& z) const {
  const int n = num_vars();
  Eigen::VectorXcd g(n);
  for (int i = 0; i < n; ++i) g(i) = partial(i, z);
  return g;
}

Eigen::MatrixXcd PolynomialJet::hessian(const Eigen::VectorXcd& z) const {
  const int n = num_vars();
  Eigen::MatrixXcd h(n, n);
  const std::span<const std::complex<double>> zs(z.data(), z.size());
  int idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const auto& p = hess_[idx++];
      const std::complex<double> v = p.is_zero() ? std::complex<double>(0.0, 0.0)
                                                 : p.evaluate(zs);
      h(i, j) = v;
      h(j, i) = v;
    }
  }
  return h;
}

}  // namespace projcurv
