#include <cmath>
#include <cstdio>

#include "curve_metrics.hpp"
#include "integrator.hpp"
#include "polynomial_io.hpp"
#include "rng.hpp"
#include "shape_spectrum.hpp"
#include "errors.hpp"

using namespace projcurv;

int main() {
  // line y = 0 in the z0=1 chart: K must be exactly 4
  const auto line = polynomial_from_text("z2", 3);
  const PolynomialJet line_jet(line);
  for (double h : {1e-4, 3e-4, 1e-3, 3e-3, 1e-2}) {
    double worst = 0.0;
    RandomStream rng(11, 0);
    for (int i = 0; i < 50; ++i) {
      const std::complex<double> x(rng.uniform(-2, 2), rng.uniform(-2, 2));
      const auto b = make_branch_point(line_jet, default_curve_frame(), x, 0.0);
      worst = std::max(worst, std::abs(gaussian_curvature(line_jet, b, h) - 4.0));
    }
    std::printf("line: h=%.0e worst |K-4| = %.3e\n", h, worst);
  }

  // random quartic: gauss-equation agreement across steps
  RandomStream coeff_rng(3, 1);
  std::vector<HomogeneousPolynomial::Term> terms;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b) {
      const int c = 4 - a - b;
      terms.push_back({{a, b, c}, coeff_rng.complex_normal()});
    }
  const HomogeneousPolynomial quartic(3, 4, terms);
  const PolynomialJet jet(quartic);
  const auto points = sample_curve_branch_points(quartic, 100, 5);
  for (double h : {1e-4, 3e-4, 1e-3, 3e-3}) {
    double worst = 0.0;
    int swaps = 0;
    for (const auto& b : points) {
      try {
        const double ki = gaussian_curvature(jet, b, h);
        const SpherePoint z = lift_branch(b);
        const auto fr = frames_at(jet, z);
        const auto sp = principal_spectrum(jet, z, fr.normal_basis.col(0), fr);
        const double ke = 4.0 - 2.0 * sp.kappas[0] * sp.kappas[0];
        worst = std::max(worst, std::abs(ki - ke));
      } catch (const Error& e) {
        ++swaps;
      }
    }
    std::printf("quartic: h=%.0e worst |Ki-Ke| = %.3e errors=%d\n", h, worst, swaps);
  }
  return 0;
}
