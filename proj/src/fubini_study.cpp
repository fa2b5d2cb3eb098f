#include "fubini_study.hpp"

#include <cmath>

#include "errors.hpp"
#include "rng.hpp"

namespace projcurv {

ProjectivePoint make_projective(const Eigen::VectorXcd& representative) {
  const double norm = representative.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw InvalidArgumentError("projective point needs a nonzero finite representative");
  Eigen::VectorXcd z = representative / norm;
  int pivot = 0;
  double best = 0.0;
  for (int i = 0; i < z.size(); ++i) {
    const double m = std::abs(z(i));
    if (m > best) {
      best = m;
      pivot = i;
    }
  }
  const std::complex<double> phase = std::conj(z(pivot)) / std::abs(z(pivot));
  z *= phase;
  // scrub the pivot's residual imaginary part so the section is exact
  z(pivot) = std::complex<double>(std::abs(z(pivot)), 0.0);
  return ProjectivePoint{std::move(z)};
}

SpherePoint hopf_lift(const ProjectivePoint& p) { return SpherePoint{p.homogeneous}; }

ProjectivePoint hopf_project(const SpherePoint& s) { return make_projective(s.z); }

double fs_kahler_potential(const ChartPoint& c) {
  return std::log1p(c.affine.squaredNorm());
}

double fs_volume(int N) {
  if (N < 1) throw InvalidArgumentError("fs_volume needs N >= 1");
  double v = 1.0;
  for (int k = 1; k <= N; ++k) v *= M_PI / static_cast<double>(k);
  return v;
}

double cp1_fs_density(const std::complex<double>& x) {
  const double q = 1.0 + std::norm(x);
  return 1.0 / (q * q);
}

CpnSample sample_cpn_fs_at(int N, std::uint64_t seed, std::uint64_t index) {
  if (N < 1) throw InvalidArgumentError("sample_cpn_fs_at needs N >= 1");
  RandomStream rng(seed, index);
  Eigen::VectorXcd v(N + 1);
  double norm_sq = 0.0;
  do {
    for (int i = 0; i <= N; ++i) v(i) = rng.complex_normal();
    norm_sq = v.squaredNorm();
  } while (!(norm_sq > 0.0));
  v /= std::sqrt(norm_sq);

  int pivot = 0;
  double best = 0.0;
  for (int i = 0; i <= N; ++i) {
    const double m = std::abs(v(i));
    if (m > best) {
      best = m;
      pivot = i;
    }
  }
  CpnSample sample;
  sample.chart_index = pivot;
  sample.affine.resize(N);
  int k = 0;
  for (int i = 0; i <= N; ++i) {
    if (i == pivot) continue;
    sample.affine(k++) = v(i) / v(pivot);
  }
  const double q = 1.0 + sample.affine.squaredNorm();
  sample.density = std::pow(q, -(N + 1));
  return sample;
}

Cp1Sample sample_cp1_fs_at(std::uint64_t seed, std::uint64_t index) {
  const CpnSample s = sample_cpn_fs_at(1, seed, index);
  return Cp1Sample{s.chart_index, s.affine(0), s.density};
}

std::vector<Cp1Sample> sample_cp1_fs(long count, std::uint64_t seed) {
  if (count < 1) throw InvalidArgumentError("sample_cp1_fs needs count >= 1");
  std::vector<Cp1Sample> samples(count);
  for (long i = 0; i < count; ++i)
    samples[i] = sample_cp1_fs_at(seed, static_cast<std::uint64_t>(i));
  return samples;
}

}  // namespace projcurv
