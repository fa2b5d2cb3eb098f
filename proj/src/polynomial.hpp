#pragma once

#include <complex>
#include <span>
#include <vector>

namespace projcurv {

// Sparse homogeneous polynomial over C in num_vars homogeneous coordinates.
// Canonical form: terms sorted by exponent vector (lexicographically
// descending), duplicate exponents merged, zero coefficients dropped. Every
// exponent vector sums exactly to the degree. The zero polynomial is a
// distinguished value (empty term list) produced only by factory/derivative;
// it is never a valid variety-defining input.
class HomogeneousPolynomial {
 public:
  struct Term {
    std::vector<int> exponents;
    std::complex<double> coefficient;
  };

  HomogeneousPolynomial(int num_vars, int degree, std::vector<Term> terms);

  static HomogeneousPolynomial zero(int num_vars, int degree);

  int num_vars() const { return num_vars_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }

  // Largest coefficient modulus; 0 for the zero polynomial. Used as the
  // reference scale for residual and conditioning thresholds.
  double coefficient_scale() const;

  std::complex<double> evaluate(std::span<const std::complex<double>> z) const;

  HomogeneousPolynomial partial_derivative(int var_index) const;

  HomogeneousPolynomial multiply(const HomogeneousPolynomial& other) const;

  // Substitute z_i = sum_j U(i,j) w_j for a square num_vars x num_vars matrix
  // stored row-major. Degree and homogeneity are preserved.
  HomogeneousPolynomial substitute_linear(
      std::span<const std::complex<double>> matrix_row_major) const;

  std::complex<double> coefficient_of(std::span<const int> exponents) const;

 private:
  HomogeneousPolynomial() = default;

  int num_vars_ = 0;
  int degree_ = 0;
  std::vector<Term> terms_;
};

// All d roots (with multiplicity) of coeffs[0] + coeffs[1] y + ... +
// coeffs[d] y^d, via companion-matrix eigenvalues plus a Newton polish,
// sorted by real part then imaginary part. Throws DegenerateFiberError when
// the leading coefficient falls below 1e-10 times the largest coefficient
// modulus (the fiber degenerates at infinity in this chart).
std::vector<std::complex<double>> univariate_roots(
    std::span<const std::complex<double>> coeffs);

}  // namespace projcurv
