#include "polynomial.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "errors.hpp"

namespace projcurv {

namespace {

std::complex<double> ipow(std::complex<double> base, int exp) {
  std::complex<double> result(1.0, 0.0);
  while (exp > 0) {
    if (exp & 1) result *= base;
    base *= base;
    exp >>= 1;
  }
  return result;
}

bool exponents_less_desc(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

HomogeneousPolynomial::HomogeneousPolynomial(int num_vars, int degree,
                                             std::vector<Term> terms)
    : num_vars_(num_vars), degree_(degree) {
  if (num_vars < 1) throw InvalidArgumentError("polynomial needs at least one variable");
  if (degree < 0) throw InvalidArgumentError("polynomial degree must be >= 0");
  if (terms.empty()) throw InvalidArgumentError("polynomial needs at least one term");

  std::map<std::vector<int>, std::complex<double>> merged;
  for (auto& term : terms) {
    if (static_cast<int>(term.exponents.size()) != num_vars)
      throw InvalidArgumentError("term exponent vector length does not match num_vars");
    int sum = 0;
    for (int e : term.exponents) {
      if (e < 0) throw InvalidArgumentError("negative exponent");
      sum += e;
    }
    if (sum != degree)
      throw InvalidArgumentError("term degree does not match polynomial degree");
    merged[term.exponents] += term.coefficient;
  }
  for (auto& [exps, coeff] : merged) {
    if (coeff != std::complex<double>(0.0, 0.0))
      terms_.push_back(Term{exps, coeff});
  }
  if (terms_.empty())
    throw InvalidArgumentError("all terms cancelled; use HomogeneousPolynomial::zero");
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
    return exponents_less_desc(a.exponents, b.exponents);
  });
}

HomogeneousPolynomial HomogeneousPolynomial::zero(int num_vars, int degree) {
  if (num_vars < 1) throw InvalidArgumentError("polynomial needs at least one variable");
  HomogeneousPolynomial p;
  p.num_vars_ = num_vars;
  p.degree_ = std::max(degree, 0);
  return p;
}

double HomogeneousPolynomial::coefficient_scale() const {
  double scale = 0.0;
  for (const auto& term : terms_) scale = std::max(scale, std::abs(term.coefficient));
  return scale;
}

std::complex<double> HomogeneousPolynomial::evaluate(
    std::span<const std::complex<double>> z) const {
  if (static_cast<int>(z.size()) != num_vars_)
    throw InvalidArgumentError("evaluation point dimension mismatch");
  std::complex<double> acc(0.0, 0.0);
  for (const auto& term : terms_) {
    std::complex<double> prod = term.coefficient;
    for (int i = 0; i < num_vars_; ++i) {
      const int e = term.exponents[i];
      if (e > 0) prod *= ipow(z[i], e);
    }
    acc += prod;
  }
  return acc;
}

HomogeneousPolynomial HomogeneousPolynomial::partial_derivative(int var_index) const {
  if (var_index < 0 || var_index >= num_vars_)
    throw InvalidArgumentError("partial_derivative index out of range");
  std::vector<Term> result;
  for (const auto& term : terms_) {
    const int e = term.exponents[var_index];
    if (e == 0) continue;
    Term dt = term;
    dt.coefficient *= static_cast<double>(e);
    dt.exponents[var_index] = e - 1;
    result.push_back(std::move(dt));
  }
  if (result.empty()) return zero(num_vars_, degree_ - 1);
  return HomogeneousPolynomial(num_vars_, degree_ - 1, std::move(result));
}

HomogeneousPolynomial HomogeneousPolynomial::multiply(
    const HomogeneousPolynomial& other) const {
  if (other.num_vars_ != num_vars_)
    throw InvalidArgumentError("multiply: num_vars mismatch");
  if (is_zero() || other.is_zero()) return zero(num_vars_, degree_ + other.degree_);
  std::map<std::vector<int>, std::complex<double>> merged;
  std::vector<int> exps(num_vars_);
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      for (int i = 0; i < num_vars_; ++i) exps[i] = a.exponents[i] + b.exponents[i];
      merged[exps] += a.coefficient * b.coefficient;
    }
  }
  std::vector<Term> result;
  for (auto& [e, c] : merged)
    if (c != std::complex<double>(0.0, 0.0)) result.push_back(Term{e, c});
  if (result.empty()) return zero(num_vars_, degree_ + other.degree_);
  return HomogeneousPolynomial(num_vars_, degree_ + other.degree_, std::move(result));
}

HomogeneousPolynomial HomogeneousPolynomial::substitute_linear(
    std::span<const std::complex<double>> matrix_row_major) const {
  if (static_cast<int>(matrix_row_major.size()) != num_vars_ * num_vars_)
    throw InvalidArgumentError("substitute_linear: matrix size mismatch");
  if (is_zero()) return *this;

  // linear forms L_i(w) = sum_j U(i,j) w_j as degree-1 polynomials
  std::vector<HomogeneousPolynomial> linear;
  linear.reserve(num_vars_);
  for (int i = 0; i < num_vars_; ++i) {
    std::vector<Term> lt;
    for (int j = 0; j < num_vars_; ++j) {
      const std::complex<double> c = matrix_row_major[i * num_vars_ + j];
      if (c == std::complex<double>(0.0, 0.0)) continue;
      std::vector<int> e(num_vars_, 0);
      e[j] = 1;
      lt.push_back(Term{std::move(e), c});
    }
    if (lt.empty())
      throw InvalidArgumentError("substitute_linear: matrix has a zero row");
    linear.emplace_back(num_vars_, 1, std::move(lt));
  }

  std::map<std::vector<int>, std::complex<double>> merged;
  for (const auto& term : terms_) {
    // expand coefficient * prod_i L_i^{e_i}
    HomogeneousPolynomial acc = zero(num_vars_, 0);
    bool started = false;
    for (int i = 0; i < num_vars_; ++i) {
      for (int k = 0; k < term.exponents[i]; ++k) {
        acc = started ? acc.multiply(linear[i]) : linear[i];
        started = true;
      }
    }
    if (!started) throw InvalidArgumentError("substitute_linear: degree-0 term");
    for (const auto& t : acc.terms())
      merged[t.exponents] += term.coefficient * t.coefficient;
  }
  std::vector<Term> result;
  for (auto& [e, c] : merged)
    if (std::abs(c) > 0.0) result.push_back(Term{e, c});
  if (result.empty()) return zero(num_vars_, degree_);
  return HomogeneousPolynomial(num_vars_, degree_, std::move(result));
}

std::complex<double> HomogeneousPolynomial::coefficient_of(
    std::span<const int> exponents) const {
  for (const auto& term : terms_) {
    if (std::equal(term.exponents.begin(), term.exponents.end(), exponents.begin(),
                   exponents.end()))
      return term.coefficient;
  }
  return {0.0, 0.0};
}

std::vector<std::complex<double>> univariate_roots(
    std::span<const std::complex<double>> coeffs) {
  if (coeffs.size() < 2)
    throw InvalidArgumentError("univariate_roots needs degree >= 1");
  const int d = static_cast<int>(coeffs.size()) - 1;

  double max_mod = 0.0;
  for (const auto& c : coeffs) max_mod = std::max(max_mod, std::abs(c));
  if (max_mod == 0.0)
    throw InvalidArgumentError("univariate_roots: zero polynomial");
  const double eps_lead = 1e-10 * max_mod;
  if (std::abs(coeffs[d]) < eps_lead)
    throw DegenerateFiberError("leading coefficient below conditioning threshold");

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -coeffs[i] / coeffs[d];

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("companion-matrix eigensolver failed");

  auto eval_poly = [&](std::complex<double> y) {
    std::complex<double> p(0.0, 0.0);
    for (int k = d; k >= 0; --k) p = p * y + coeffs[k];
    return p;
  };
  auto eval_deriv = [&](std::complex<double> y) {
    std::complex<double> p(0.0, 0.0);
    for (int k = d; k >= 1; --k) p = p * y + coeffs[k] * static_cast<double>(k);
    return p;
  };

  std::vector<std::complex<double>> roots(d);
  for (int i = 0; i < d; ++i) {
    std::complex<double> r = solver.eigenvalues()(i);
    // Newton polish, keeping a step only when it reduces the residual
    for (int it = 0; it < 3; ++it) {
      const std::complex<double> p = eval_poly(r);
      const std::complex<double> dp = eval_deriv(r);
      if (std::abs(dp) == 0.0) break;
      const std::complex<double> candidate = r - p / dp;
      if (std::abs(eval_poly(candidate)) < std::abs(p))
        r = candidate;
      else
        break;
    }
    roots[i] = r;
  }

  for (const auto& r : roots) {
    const double scale = max_mod * std::pow(std::max(1.0, std::abs(r)), d);
    if (std::abs(eval_poly(r)) > 1e-8 * scale)
      throw NumericalError("root residual exceeded tolerance after polish");
  }

  std::sort(roots.begin(), roots.end(),
            [](const std::complex<double>& a, const std::complex<double>& b) {
              if (a.real() != b.real()) return a.real() < b.real();
              return a.imag() < b.imag();
            });
  return roots;
}

}  // namespace projcurv
