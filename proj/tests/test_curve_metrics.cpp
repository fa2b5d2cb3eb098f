#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "curve_metrics.hpp"
#include "errors.hpp"
#include "integrator.hpp"
#include "polynomial_io.hpp"
#include "rng.hpp"
#include "support/test_helpers.hpp"

using namespace projcurv;
using projcurv::testing::fermat_curve;
using projcurv::testing::random_dense_polynomial;

TEST_CASE("line density is the CP^1 density") {
  const auto line = polynomial_from_text("z2", 3);
  const PolynomialJet jet(line);
  RandomStream rng(3, 0);
  for (int i = 0; i < 20; ++i) {
    const std::complex<double> x(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const auto b = make_branch_point(jet, default_curve_frame(), x, 0.0);
    CHECK(branch_density(b) ==
          doctest::Approx(1.0 / std::pow(1.0 + std::norm(x), 2)).epsilon(1e-13));
  }
  const auto origin = make_branch_point(jet, default_curve_frame(), 0.0, 0.0);
  CHECK(branch_density(origin) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("line curvature is 4 everywhere") {
  const auto line = polynomial_from_text("z2", 3);
  const PolynomialJet jet(line);
  RandomStream rng(5, 1);
  for (int i = 0; i < 100; ++i) {
    const std::complex<double> x(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5));
    const auto b = make_branch_point(jet, default_curve_frame(), x, 0.0);
    CHECK(gaussian_curvature(jet, b) == doctest::Approx(4.0).epsilon(2.5e-7));
  }
}

TEST_CASE("conic area is 2 pi") {
  IntegratorOptions opts;
  opts.samples = 60000;
  opts.seed = 17;
  const auto estimate = area(fermat_curve(2), opts);
  CHECK(std::abs(estimate.value - 2.0 * M_PI) / (2.0 * M_PI) < 0.005);
  CHECK(std::abs(estimate.value - 2.0 * M_PI) < 3.5 * estimate.std_error);
}

TEST_CASE("conic curvature is 2 at random points") {
  const PolynomialJet jet(fermat_curve(2));
  const auto points = sample_curve_branch_points(jet.poly(), 100, 23);
  for (const auto& b : points)
    CHECK(gaussian_curvature(jet, b) == doctest::Approx(2.0).epsilon(5e-4));
}

TEST_CASE("Fermat cubic: curvature bounded by 4, approached at special points") {
  const PolynomialJet jet(fermat_curve(3));
  const auto points = sample_curve_branch_points(jet.poly(), 150, 31);
  double max_k = -1e9;
  for (const auto& b : points) {
    const double k = gaussian_curvature(jet, b);
    max_k = std::max(max_k, k);
    CHECK(k <= 4.0 + 1e-3);
  }
  CHECK(max_k < 4.0 + 1e-3);

  // near [1 : -1 : 0] the curvature approaches the maximum 4
  const std::complex<double> x(-0.999, 0.001);
  const std::complex<double> y =
      std::pow(-(1.0 + x * x * x), std::complex<double>(1.0 / 3.0, 0.0));
  const auto near = make_branch_point(jet, default_curve_frame(), x, y);
  CHECK(gaussian_curvature(jet, near) > 3.9);
}

TEST_CASE("gauss equation across pipelines") {
  // line: (4, 4)
  {
    const auto line = polynomial_from_text("z2", 3);
    const PolynomialJet jet(line);
    const auto b = make_branch_point(jet, default_curve_frame(), {0.4, -0.2}, 0.0);
    const auto [ki, ke] = gauss_equation_check(jet, b);
    CHECK(ki == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(ke == doctest::Approx(4.0).epsilon(1e-10));
  }
  // conic: (2, 2)
  {
    const PolynomialJet jet(fermat_curve(2));
    const auto points = sample_curve_branch_points(jet.poly(), 20, 41);
    for (const auto& b : points) {
      const auto [ki, ke] = gauss_equation_check(jet, b);
      CHECK(std::abs(ki - 2.0) < 1e-4);
      CHECK(std::abs(ke - 2.0) < 1e-8);
      CHECK(std::abs(ki - ke) < 1e-4);
    }
  }
  // random quartic: two independent routes agree at 100 random points
  {
    const auto quartic = random_dense_polynomial(3, 4, 1234);
    const PolynomialJet jet(quartic);
    const auto points = sample_curve_branch_points(quartic, 100, 43);
    for (const auto& b : points) {
      const auto [ki, ke] = gauss_equation_check(jet, b);
      CHECK(std::abs(ki - ke) < 1e-4);
    }
  }
}

TEST_CASE("branch validation raises on bad points") {
  const PolynomialJet jet(fermat_curve(2));
  // not on the curve
  CHECK_THROWS_AS(make_branch_point(jet, default_curve_frame(), 0.3, 0.5),
                  InvalidArgumentError);
  // ramification point of the x-projection: y = 0, x = i
  const std::complex<double> i_unit(0.0, 1.0);
  CHECK_THROWS_AS(make_branch_point(jet, default_curve_frame(), i_unit, 0.0),
                  SingularPointError);
}

TEST_CASE("continuation: convergence and failure at ramification") {
  const PolynomialJet jet(fermat_curve(2));
  // start away from ramification and walk toward x = i where f_y = 0
  std::complex<double> x(0.0, 0.0);
  std::complex<double> y = std::sqrt(std::complex<double>(-1.0, 0.0));
  const auto b = make_branch_point(jet, default_curve_frame(), x, y);
  const std::complex<double> target(0.0, 0.5);
  const auto moved = continue_fiber(jet, b.frame, target, b.y);
  // f(x, y) = 1 + x^2 + y^2 = 0 at the continued point
  CHECK(std::abs(1.0 + target * target + moved * moved) < 1e-10);

  // a jump across the ramification point leaves the Newton basin: from the
  // imaginary-axis branch, the iteration for the real target roots never
  // converges and must fail loudly rather than swap branches silently
  CHECK_THROWS_AS(continue_fiber(jet, b.frame, std::complex<double>(0.0, 2.0), b.y),
                  BranchContinuationError);
}

TEST_CASE("curvature samples respect the ambient bound across degrees") {
  for (int d : {2, 3, 4}) {
    const auto curve = fermat_curve(d);
    const PolynomialJet jet(curve);
    const auto points = sample_curve_branch_points(curve, 40, 100 + d);
    for (const auto& b : points) {
      CHECK(branch_density(b) > 0.0);
      CHECK(gaussian_curvature(jet, b) <= 4.0 + 1e-3);
    }
  }
}
