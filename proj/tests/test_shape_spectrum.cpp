#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "curve_metrics.hpp"
#include "errors.hpp"
#include "integrator.hpp"
#include "polynomial_io.hpp"
#include "rng.hpp"
#include "shape_spectrum.hpp"
#include "support/test_helpers.hpp"

using namespace projcurv;
using projcurv::testing::fermat_curve;
using projcurv::testing::random_dense_polynomial;

namespace {

void check_frames(const PolynomialJet& jet, const SpherePoint& z, int tangent_dim,
                  int normal_dim) {
  const FrameData f = frames_at(jet, z);
  REQUIRE(f.tangent_basis.cols() == tangent_dim);
  REQUIRE(f.normal_basis.cols() == normal_dim);
  const Eigen::VectorXd zr = real_form(z.z);

  Eigen::MatrixXd all(zr.size(), 1 + tangent_dim + normal_dim);
  all.col(0) = zr;
  all.block(0, 1, zr.size(), tangent_dim) = f.tangent_basis;
  all.rightCols(normal_dim) = f.normal_basis;
  const Eigen::MatrixXd gram = all.transpose() * all;
  CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <
        1e-10);

  // the Hopf fibre direction i*z is tangent to the lift
  const Eigen::VectorXd fiber = f.fiber_direction;
  const Eigen::VectorXd residual =
      fiber - f.tangent_basis * (f.tangent_basis.transpose() * fiber);
  CHECK(residual.norm() < 1e-10);
}

SpherePoint conic_point() {
  Eigen::VectorXcd z(3);
  z << std::complex<double>(M_SQRT1_2, 0.0), std::complex<double>(0.0, M_SQRT1_2), 0.0;
  return SpherePoint{z};
}

}  // namespace

TEST_CASE("frames for a linear hypersurface") {
  const auto line = polynomial_from_text("z1", 3);
  const PolynomialJet jet(line);
  Eigen::VectorXcd z(3);
  z << 1.0, 0.0, 0.0;
  check_frames(jet, SpherePoint{z}, 3, 2);
}

TEST_CASE("frames for the Fermat conic") {
  const PolynomialJet jet(fermat_curve(2));
  check_frames(jet, conic_point(), 3, 2);
}

TEST_CASE("frames on random points of a random cubic") {
  const auto cubic = random_dense_polynomial(3, 3, 77);
  const PolynomialJet jet(cubic);
  const auto points = sample_variety_points(cubic, 100, 4);
  for (const auto& z : points) check_frames(jet, z, 3, 2);
}

TEST_CASE("second fundamental form of a linear subvariety vanishes") {
  const auto line = polynomial_from_text("z1", 3);
  const PolynomialJet jet(line);
  Eigen::VectorXcd z(3);
  z << M_SQRT1_2, 0.0, std::complex<double>(0.0, M_SQRT1_2);
  const SpherePoint p{z};
  const FrameData frames = frames_at(jet, p);
  for (int k = 0; k < 2; ++k) {
    const Eigen::MatrixXd b =
        second_fundamental_form(jet, p, frames.normal_basis.col(k), frames);
    CHECK(b.cwiseAbs().maxCoeff() < 1e-12);
  }
  const auto spectrum = principal_spectrum(jet, p, frames.normal_basis.col(0), frames);
  REQUIRE(spectrum.eigenvalues.size() == 3);
  for (double e : spectrum.eigenvalues) CHECK(std::abs(e) < 1e-12);
  REQUIRE(spectrum.kappas.size() == 1);
  CHECK(spectrum.kappas[0] < 1e-12);
}

TEST_CASE("conic: symmetry, zero trace, kappa = 1") {
  const PolynomialJet jet(fermat_curve(2));
  const SpherePoint p = conic_point();
  const FrameData frames = frames_at(jet, p);
  const Eigen::MatrixXd b =
      second_fundamental_form(jet, p, frames.normal_basis.col(0), frames);
  CHECK(b.cwiseAbs().maxCoeff() > 0.1);  // genuinely curved
  CHECK((b - b.transpose()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(std::abs(b.trace()) < 1e-10 * std::max(1.0, b.norm()));

  const auto spectrum = principal_spectrum(jet, p, frames.normal_basis.col(0), frames);
  REQUIRE(spectrum.kappas.size() == 1);
  CHECK(spectrum.kappas[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(spectrum.fiber_residual < 1e-12);
  CHECK(spectrum.pairing_residual < 1e-12);
}

TEST_CASE("Fermat cubic at a maximal-curvature point has kappa 0") {
  const PolynomialJet jet(fermat_curve(3));
  Eigen::VectorXcd z(3);
  z << M_SQRT1_2, -M_SQRT1_2, 0.0;  // [1 : -1 : 0] on the cubic
  const SpherePoint p{z};
  const FrameData frames = frames_at(jet, p);
  const auto spectrum = principal_spectrum(jet, p, frames.normal_basis.col(0), frames);
  CHECK(spectrum.kappas[0] < 1e-7);
}

TEST_CASE("structure invariants at random points of random curves") {
  RandomStream curve_rng(5, 0);
  for (int trial = 0; trial < 2; ++trial) {
    const int degree = 3 + trial;  // cubic, then quartic
    const auto curve = random_dense_polynomial(3, degree, 100 + trial);
    const PolynomialJet jet(curve);
    const auto points = sample_variety_points(curve, 50, 8 + trial);
    for (const auto& z : points) {
      const FrameData frames = frames_at(jet, z);
      const Eigen::MatrixXd b =
          second_fundamental_form(jet, z, frames.normal_basis.col(0), frames);
      CHECK((b - b.transpose()).cwiseAbs().maxCoeff() < 1e-10);
      // minimality: trace-free (unit floor keeps the ratio meaningful for
      // nearly flat points)
      CHECK(std::abs(b.trace()) < 1e-9 * std::max(1.0, b.norm()));

      const auto spectrum = principal_spectrum(jet, z, frames.normal_basis.col(0), frames);
      const double radius =
          std::max(std::abs(spectrum.eigenvalues.front()), std::abs(spectrum.eigenvalues.back()));
      CHECK(spectrum.fiber_residual < 1e-7 * std::max(1.0, radius));
      CHECK(spectrum.pairing_residual < 1e-7 * std::max(1.0, radius));
      REQUIRE(spectrum.kappas.size() == 1);
      CHECK(spectrum.kappas[0] >= 0.0);
      CHECK(std::is_sorted(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end()));
    }
  }
}

TEST_CASE("normal rotation: endpoints and kappa invariance") {
  const PolynomialJet jet(fermat_curve(3));
  const auto points = sample_variety_points(jet.poly(), 5, 12);
  RandomStream rng(19, 1);
  for (const auto& z : points) {
    const FrameData frames = frames_at(jet, z);
    const Eigen::VectorXd u = frames.normal_basis.col(0);
    CHECK((rotate_normal(u, 0.0) - u).norm() < 1e-15);
    CHECK((rotate_normal(u, M_PI) + u).norm() < 1e-12);

    const auto reference = principal_spectrum(jet, z, u, frames);
    for (int i = 0; i < 20; ++i) {
      const double theta = rng.uniform(0.0, 2.0 * M_PI);
      const Eigen::VectorXd v = rotate_normal(u, theta);
      CHECK(std::abs(v.norm() - 1.0) < 1e-12);
      const auto rotated = principal_spectrum(jet, z, v, frames);
      for (size_t k = 0; k < reference.kappas.size(); ++k)
        CHECK(std::abs(rotated.kappas[k] - reference.kappas[k]) < 1e-8);
    }
  }
}

TEST_CASE("fiber-phase independence of the kappas") {
  const auto quartic = random_dense_polynomial(3, 4, 55);
  const PolynomialJet jet(quartic);
  const auto points = sample_variety_points(quartic, 10, 3);
  RandomStream rng(7, 2);
  for (const auto& z : points) {
    const FrameData frames = frames_at(jet, z);
    const auto reference = principal_spectrum(jet, z, frames.normal_basis.col(0), frames);
    const double phi = rng.uniform(0.0, 2.0 * M_PI);
    const SpherePoint shifted{z.z * std::polar(1.0, phi)};
    const FrameData shifted_frames = frames_at(jet, shifted);
    const auto moved =
        principal_spectrum(jet, shifted, shifted_frames.normal_basis.col(0), shifted_frames);
    for (size_t k = 0; k < reference.kappas.size(); ++k)
      CHECK(std::abs(moved.kappas[k] - reference.kappas[k]) < 1e-8);
  }
}

TEST_CASE("surface spectra: quadric in CP^3 has kappas (1, 1)") {
  const auto quadric = polynomial_from_text("z0^2 + z1^2 + z2^2 + z3^2");
  const PolynomialJet jet(quadric);
  const auto points = sample_variety_points(quadric, 25, 9);
  for (const auto& z : points) {
    const FrameData frames = frames_at(jet, z);
    REQUIRE(frames.tangent_basis.cols() == 5);  // 2m+1 with m = 2
    REQUIRE(frames.normal_basis.cols() == 2);
    const auto spectrum = principal_spectrum(jet, z, frames.normal_basis.col(0), frames);
    REQUIRE(spectrum.kappas.size() == 2);
    CHECK(spectrum.kappas[0] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(spectrum.kappas[1] == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("singular point raises") {
  // z1^2 z2 - z0^3 has a singular point at [0:0:1]
  const auto nodal = polynomial_from_text("z1^2*z2 - z0^3");
  const PolynomialJet jet(nodal);
  Eigen::VectorXcd z(3);
  z << 0.0, 0.0, 1.0;
  CHECK_THROWS_AS(frames_at(jet, SpherePoint{z}), SingularPointError);
}

TEST_CASE("off-variety and malformed normals are rejected") {
  const PolynomialJet jet(fermat_curve(2));
  Eigen::VectorXcd z(3);
  z << 1.0, 0.0, 0.0;  // not on the conic
  CHECK_THROWS_AS(frames_at(jet, SpherePoint{z}), InvalidArgumentError);

  const SpherePoint p = conic_point();
  const FrameData frames = frames_at(jet, p);
  // a tangent vector is not in the normal span
  CHECK_THROWS_AS(
      second_fundamental_form(jet, p, frames.tangent_basis.col(0), frames),
      InvalidArgumentError);
  CHECK_THROWS_AS(
      second_fundamental_form(jet, p, 0.5 * frames.normal_basis.col(0), frames),
      InvalidArgumentError);
}
