#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "curve_metrics.hpp"
#include "fubini_study.hpp"
#include "polynomial_io.hpp"
#include "rng.hpp"
#include "support/test_helpers.hpp"

using namespace projcurv;

TEST_CASE("hopf lift of coordinate points and phase canonicalization") {
  Eigen::VectorXcd v(3);
  v << 1.0, 0.0, 0.0;
  const auto p = make_projective(v);
  CHECK((hopf_lift(p).z - v).norm() == 0.0);

  // [0 : (1+i)/sqrt(2) e^{i phi} : 0] canonicalizes to (0, s, 0), s real > 0
  v << 0.0, std::polar(1.0, 0.9) * std::complex<double>(M_SQRT1_2, M_SQRT1_2), 0.0;
  const auto q = make_projective(v);
  CHECK(q.homogeneous(1).real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(q.homogeneous(1).imag() == 0.0);
  CHECK(std::abs(q.homogeneous(0)) < 1e-15);
}

TEST_CASE("hopf_project after hopf_lift is the identity") {
  RandomStream rng(2, 0);
  for (int i = 0; i < 100; ++i) {
    Eigen::VectorXcd v(3);
    for (int k = 0; k < 3; ++k) v(k) = rng.complex_normal();
    const auto p = make_projective(v);
    const auto back = hopf_project(hopf_lift(p));
    CHECK((back.homogeneous - p.homogeneous).norm() < 1e-12);
  }
}

TEST_CASE("Kahler potential values") {
  ChartPoint c;
  c.chart_index = 0;
  c.affine = Eigen::VectorXcd::Zero(1);
  CHECK(fs_kahler_potential(c) == 0.0);
  c.affine(0) = std::polar(1.0, 1.3);
  CHECK(fs_kahler_potential(c) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("chart density at the origin equals 1 (potential second derivative)") {
  // d^2/dx dxbar of log(1+|x|^2) at 0, by central differences of the potential
  const double h = 1e-4;
  auto pot = [](std::complex<double> x) {
    ChartPoint c;
    c.affine = Eigen::VectorXcd::Constant(1, x);
    return fs_kahler_potential(c);
  };
  const double lap = (pot({h, 0}) + pot({-h, 0}) + pot({0, h}) + pot({0, -h}) -
                      4.0 * pot({0, 0})) / (h * h);
  CHECK(lap / 4.0 == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(cp1_fs_density({0.0, 0.0}) == 1.0);
}

TEST_CASE("fs_volume closed forms") {
  CHECK(fs_volume(1) == doctest::Approx(M_PI).epsilon(1e-15));
  CHECK(fs_volume(2) == doctest::Approx(M_PI * M_PI / 2.0).epsilon(1e-15));
  CHECK(fs_volume(3) == doctest::Approx(std::pow(M_PI, 3) / 6.0).epsilon(1e-15));

  // N=1 oracle: polar integral of the chart density 1/(1+r^2)^2
  const double oracle = projcurv::testing::adaptive_simpson(
      [](double r) { return 2.0 * M_PI * r / std::pow(1.0 + r * r, 2); }, 0.0, 400.0);
  CHECK(fs_volume(1) == doctest::Approx(oracle).epsilon(1e-4));
}

TEST_CASE("CP^1 sampler: normalization, region mass, determinism") {
  const long n = 200000;
  const auto samples = sample_cp1_fs(n, 13);

  // the {|x| < 1} region of chart 0 carries FS mass pi/2 (polar integral of
  // the density); with total mass pi this is hit with probability 1/2
  double mass_inner = 0.0;
  // the density field against the sampling law: integrating the Lebesgue
  // weight 1/density over one chart fold recovers Leb(unit disk)/pi = 1
  double lebesgue_fold = 0.0;
  for (const auto& s : samples) {
    if (s.chart_index == 0 && std::abs(s.x) < 1.0) mass_inner += 1.0;
    if (s.chart_index == 1) lebesgue_fold += 1.0 / s.density;
  }
  const double inner = M_PI * mass_inner / n;
  const double sigma = M_PI * 0.5 / std::sqrt(static_cast<double>(n));  // binomial
  CHECK(std::abs(inner - M_PI / 2.0) < 3.0 * sigma);
  CHECK(lebesgue_fold / n == doctest::Approx(1.0).epsilon(0.01));

  const auto again = sample_cp1_fs(1000, 13);
  for (int i = 0; i < 1000; ++i) {
    CHECK(again[i].chart_index == samples[i].chart_index);
    CHECK(again[i].x == samples[i].x);
    CHECK(again[i].density == samples[i].density);
  }
  const auto other = sample_cp1_fs(10, 14);
  bool any_different = false;
  for (int i = 0; i < 10; ++i) any_different |= (other[i].x != samples[i].x);
  CHECK(any_different);
}

TEST_CASE("CP^1 sampler density field matches the chart density") {
  const auto samples = sample_cp1_fs(100, 5);
  for (const auto& s : samples) {
    CHECK(std::abs(s.x) <= 1.0 + 1e-12);
    CHECK(s.density == doctest::Approx(cp1_fs_density(s.x)).epsilon(1e-14));
  }
}

TEST_CASE("normalization pin 1: chart density integrates to pi") {
  // 2D integral in polar form, exact to the quadrature tolerance
  const double integral = projcurv::testing::adaptive_simpson(
      [](double r) { return 2.0 * M_PI * r / std::pow(1.0 + r * r, 2); }, 0.0, 2000.0);
  CHECK(std::abs(integral - M_PI) / M_PI < 1e-3);
}

TEST_CASE("normalization pin 2: curvature of CP^1 is 4") {
  // the line z2 = 0 in CP^2 carries the CP^1 metric; its Gaussian curvature
  // through the branch machinery must be the holomorphic sectional curvature
  const auto line = polynomial_from_text("z2", 3);
  const PolynomialJet jet(line);
  RandomStream rng(31, 7);
  for (int i = 0; i < 50; ++i) {
    const std::complex<double> x(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const auto b = make_branch_point(jet, default_curve_frame(), x, 0.0);
    CHECK(gaussian_curvature(jet, b) == doctest::Approx(4.0).epsilon(2.5e-7));
  }
}

TEST_CASE("CP^3 volume via Monte Carlo sampling") {
  // Each sample is folded into the chart of its largest homogeneous
  // coordinate, so a chart's fold region is exactly the unit polydisk in C^3,
  // of Lebesgue volume pi^3. With samples drawn from FS measure of total mass
  // V = Vol(CP^3),
  //   E[ 1/density * 1_{fold} ] = Leb(polydisk) / V  per chart,
  // summed over the four charts: E[1/density] = 4 pi^3 / V. Inverting gives a
  // Monte Carlo estimate of V that never touches fs_volume.
  const long n = 2000000;
  double acc = 0.0, acc_sq = 0.0;
  for (long i = 0; i < n; ++i) {
    const auto s = sample_cpn_fs_at(3, 21, i);
    const double w = 1.0 / s.density;
    acc += w;
    acc_sq += w * w;
  }
  const double mean = acc / n;
  const double volume_estimate = 4.0 * std::pow(M_PI, 3) / mean;
  CHECK(std::abs(volume_estimate - fs_volume(3)) / fs_volume(3) < 0.005);
  const double sd = std::sqrt(std::max(acc_sq / n - mean * mean, 0.0));
  CHECK(sd / mean / std::sqrt(static_cast<double>(n)) < 0.0017);  // 3 sigma inside 0.5%
}
