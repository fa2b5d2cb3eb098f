#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>

#include "errors.hpp"
#include "polynomial.hpp"
#include "polynomial_io.hpp"
#include "rng.hpp"
#include "support/test_helpers.hpp"

using namespace projcurv;
using testing::monic_from_roots;
using testing::random_dense_polynomial;

namespace {

std::complex<double> eval(const HomogeneousPolynomial& p,
                          std::initializer_list<std::complex<double>> z) {
  const std::vector<std::complex<double>> v(z);
  return p.evaluate(v);
}

}  // namespace

TEST_CASE("evaluate on the Fermat conic") {
  const auto f = polynomial_from_text("z0^2 + z1^2 + z2^2");
  CHECK(std::abs(eval(f, {1.0, {0.0, 1.0}, 0.0})) < 1e-15);
  CHECK(std::abs(eval(f, {1.0, 0.0, 0.0}) - 1.0) < 1e-15);
}

TEST_CASE("evaluate is homogeneous of the declared degree") {
  const auto f = polynomial_from_text("z0^3 + z1^3 + z2^3");
  CHECK(std::abs(eval(f, {2.0, 0.0, 0.0}) - 8.0) < 1e-14);
  RandomStream rng(41, 2);
  for (int i = 0; i < 100; ++i) {
    const std::complex<double> t = rng.complex_normal();
    std::vector<std::complex<double>> z{rng.complex_normal(), rng.complex_normal(),
                                        rng.complex_normal()};
    const std::complex<double> direct = f.evaluate(z);
    for (auto& c : z) c *= t;
    const std::complex<double> scaled = f.evaluate(z);
    CHECK(std::abs(scaled - t * t * t * direct) <=
          1e-12 * std::max(1.0, std::abs(scaled)));
  }
}

TEST_CASE("partial derivatives are exact") {
  const auto f = polynomial_from_text("z0^2 + z1^2 + z2^2");
  const auto d0 = f.partial_derivative(0);
  REQUIRE(d0.terms().size() == 1);
  CHECK(d0.degree() == 1);
  CHECK(d0.terms()[0].exponents == std::vector<int>{1, 0, 0});
  CHECK(d0.terms()[0].coefficient == std::complex<double>(2.0, 0.0));

  const auto cube = polynomial_from_text("z0^3", 3);
  CHECK(cube.partial_derivative(1).is_zero());
}

TEST_CASE("Euler identity for homogeneous polynomials") {
  const auto f = polynomial_from_text("z0^3 + z1^3 + z2^3");
  // at z = (1, 2, 3): sum z_i d_i F = 3 F = 108
  std::vector<std::complex<double>> z{1.0, 2.0, 3.0};
  std::complex<double> sum = 0.0;
  for (int i = 0; i < 3; ++i) sum += z[i] * f.partial_derivative(i).evaluate(z);
  CHECK(std::abs(sum - 108.0) < 1e-12);

  for (int d : {2, 4}) {
    const auto g = random_dense_polynomial(3, d, 1000 + d);
    RandomStream rng(5, d);
    for (int i = 0; i < 100; ++i) {
      std::vector<std::complex<double>> w{rng.complex_normal(), rng.complex_normal(),
                                          rng.complex_normal()};
      std::complex<double> lhs = 0.0;
      for (int k = 0; k < 3; ++k) lhs += w[k] * g.partial_derivative(k).evaluate(w);
      const std::complex<double> rhs = static_cast<double>(d) * g.evaluate(w);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("canonical form merges and validates") {
  using Term = HomogeneousPolynomial::Term;
  const HomogeneousPolynomial p(2, 2, {Term{{2, 0}, 1.0}, Term{{2, 0}, 2.0}, Term{{0, 2}, 1.0}});
  CHECK(p.terms().size() == 2);
  CHECK(p.terms()[0].coefficient == std::complex<double>(3.0, 0.0));

  CHECK_THROWS_AS(HomogeneousPolynomial(2, 2, {Term{{1, 0}, 1.0}}), InvalidArgumentError);
  CHECK_THROWS_AS(HomogeneousPolynomial(2, 2, {Term{{2, 0, 0}, 1.0}}), InvalidArgumentError);
  // cancellation to the empty map is rejected; the zero value is explicit
  CHECK_THROWS_AS(HomogeneousPolynomial(2, 2, {Term{{2, 0}, 1.0}, Term{{2, 0}, -1.0}}),
                  InvalidArgumentError);
  CHECK(HomogeneousPolynomial::zero(2, 1).is_zero());
}

TEST_CASE("univariate roots: closed cases") {
  // y^2 + 1
  {
    const std::vector<std::complex<double>> c{{1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}};
    const auto roots = univariate_roots(c);
    REQUIRE(roots.size() == 2);
    CHECK(std::abs(roots[0] - std::complex<double>(0.0, -1.0)) < 1e-10);
    CHECK(std::abs(roots[1] - std::complex<double>(0.0, 1.0)) < 1e-10);
  }
  // y^2 - 2y + 1 = (y-1)^2
  {
    const std::vector<std::complex<double>> c{{1.0, 0.0}, {-2.0, 0.0}, {1.0, 0.0}};
    const auto roots = univariate_roots(c);
    REQUIRE(roots.size() == 2);
    CHECK(std::abs(roots[0] - 1.0) < 1e-6);
    CHECK(std::abs(roots[1] - 1.0) < 1e-6);
  }
}

TEST_CASE("univariate roots: planted random roots recovered") {
  RandomStream rng(7, 3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::complex<double>> planted;
    for (int i = 0; i < 5; ++i) planted.push_back(rng.complex_normal());
    std::sort(planted.begin(), planted.end(), [](auto a, auto b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    const auto coeffs = monic_from_roots(planted);
    const auto found = univariate_roots(coeffs);
    REQUIRE(found.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(std::abs(found[i] - planted[i]) < 1e-8);
  }
}

TEST_CASE("root round-trip reproduces the coefficients") {
  RandomStream rng(11, 4);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::complex<double>> coeffs;
    for (int i = 0; i < 7; ++i) coeffs.push_back(rng.complex_normal());
    coeffs.back() += std::complex<double>(2.0, 0.0);  // keep the lead healthy
    const auto roots = univariate_roots(coeffs);
    auto rebuilt = monic_from_roots(roots);
    for (auto& c : rebuilt) c *= coeffs.back();
    for (size_t i = 0; i < coeffs.size(); ++i)
      CHECK(std::abs(rebuilt[i] - coeffs[i]) <= 1e-6 * std::max(1.0, std::abs(coeffs[i])));
  }
}

TEST_CASE("degenerate fiber: leading coefficient below threshold") {
  const std::vector<std::complex<double>> c{{1.0, 0.0}, {1.0, 0.0}, {1e-12, 0.0}};
  CHECK_THROWS_AS(univariate_roots(c), DegenerateFiberError);
}

TEST_CASE("JSON round-trip is bit-exact") {
  const auto f = random_dense_polynomial(3, 3, 99);
  const std::string encoded = polynomial_to_json(f);
  const auto g = polynomial_from_json(encoded);
  REQUIRE(g.terms().size() == f.terms().size());
  for (size_t i = 0; i < f.terms().size(); ++i) {
    CHECK(g.terms()[i].exponents == f.terms()[i].exponents);
    CHECK(g.terms()[i].coefficient.real() == f.terms()[i].coefficient.real());
    CHECK(g.terms()[i].coefficient.imag() == f.terms()[i].coefficient.imag());
  }
  CHECK(polynomial_to_json(g) == encoded);
}

TEST_CASE("JSON contract shape") {
  const auto f = polynomial_from_json(
      R"({"num_vars":3,"degree":2,"terms":[{"exponents":[2,0,0],"re":1.0,"im":0.0},)"
      R"({"exponents":[0,2,0],"re":1.0,"im":0.0},{"exponents":[0,0,2],"re":1.0,"im":0.0}]})");
  CHECK(f.num_vars() == 3);
  CHECK(f.degree() == 2);
  CHECK(f.terms().size() == 3);

  CHECK_THROWS_AS(polynomial_from_json("{"), ParseError);
  CHECK_THROWS_AS(polynomial_from_json(R"({"num_vars":3})"), ParseError);
  CHECK_THROWS_AS(
      polynomial_from_json(
          R"({"num_vars":3,"degree":2,"terms":[{"exponents":[1,0,0],"re":1.0,"im":0.0}]})"),
      ParseError);
}

TEST_CASE("text shorthand parser") {
  const auto f = polynomial_from_text("(0+1i)*z0^1*z1^2 + 2.5*z2^3");
  CHECK(f.num_vars() == 3);
  CHECK(f.degree() == 3);
  CHECK(std::abs(eval(f, {1.0, 1.0, 0.0}) - std::complex<double>(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(eval(f, {0.0, 0.0, 1.0}) - 2.5) < 1e-15);

  const auto g = polynomial_from_text("z0^2 - z1*z1", 3);
  CHECK(g.num_vars() == 3);
  CHECK(std::abs(eval(g, {1.0, 1.0, 5.0})) < 1e-15);

  CHECK_THROWS_AS(polynomial_from_text("z0^2 + z1"), ParseError);       // not homogeneous
  CHECK_THROWS_AS(polynomial_from_text("z0^2 + q1^2"), ParseError);     // bad token
  CHECK_THROWS_AS(polynomial_from_text(""), ParseError);
  CHECK_THROWS_AS(polynomial_from_text("z3^2", 3), ParseError);         // index out of range
}

TEST_CASE("substitute_linear preserves values") {
  const auto f = random_dense_polynomial(3, 3, 17);
  RandomStream rng(23, 5);
  std::vector<std::complex<double>> m(9);
  for (auto& c : m) c = rng.complex_normal();
  const auto g = f.substitute_linear(m);
  CHECK(g.degree() == f.degree());
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<std::complex<double>> w{rng.complex_normal(), rng.complex_normal(),
                                        rng.complex_normal()};
    std::vector<std::complex<double>> z(3, 0.0);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) z[i] += m[i * 3 + j] * w[j];
    const auto lhs = g.evaluate(w);
    const auto rhs = f.evaluate(z);
    CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(rhs)));
  }
}
