#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace projcurv {

// All of CP^N here carries the Fubini-Study metric normalized to holomorphic
// sectional curvature 4: diameter pi/2, Area(CP^1) = pi, Vol(CP^N) = pi^N/N!.
// The ambient sphere S^{2N+1} in C^{N+1} carries constant curvature 1.

// Unit representative with the circle-fiber phase fixed deterministically:
// the first component of largest modulus is real and positive.
struct ProjectivePoint {
  Eigen::VectorXcd homogeneous;
};

struct SpherePoint {
  Eigen::VectorXcd z;  // unit vector in C^{N+1}
};

struct ChartPoint {
  int chart_index = 0;      // which homogeneous coordinate is set to 1
  Eigen::VectorXcd affine;  // the remaining N coordinates, in index order
};

// Canonicalize an arbitrary nonzero representative.
ProjectivePoint make_projective(const Eigen::VectorXcd& representative);

// The canonical section of the Hopf fibration and its inverse.
// hopf_project(hopf_lift(p)) == p exactly.
SpherePoint hopf_lift(const ProjectivePoint& p);
ProjectivePoint hopf_project(const SpherePoint& s);

// log(1 + sum |affine_i|^2). The induced metric density is the complex
// Hessian of this potential; the normalization is pinned by Area(CP^1) = pi
// and K(CP^1) = 4.
double fs_kahler_potential(const ChartPoint& c);

// pi^N / N!
double fs_volume(int N);

// FS area density on a CP^1 chart: 1/(1+|x|^2)^2 per Lebesgue measure.
double cp1_fs_density(const std::complex<double>& x);

struct Cp1Sample {
  int chart_index = 0;        // 0: point [1:x], 1: point [x:1]; always |x| <= 1
  std::complex<double> x;
  double density = 0.0;       // 1/(1+|x|^2)^2
};

// Fubini-Study-uniform samples on CP^1 (total mass pi). Exact and
// rejection-free: a uniform point of S^3 pushed through the Hopf map is
// FS-uniform, and curvature-4 CP^1 is the round 2-sphere of radius 1/2.
// Sample i depends only on (seed, i).
std::vector<Cp1Sample> sample_cp1_fs(long count, std::uint64_t seed);
Cp1Sample sample_cp1_fs_at(std::uint64_t seed, std::uint64_t index);

struct CpnSample {
  int chart_index = 0;      // which homogeneous coordinate was folded to 1
  Eigen::VectorXcd affine;  // N coordinates, |affine_i| <= 1
  double density = 0.0;     // 1/(1+|affine|^2)^{N+1} per Lebesgue on C^N
};

// Same construction on CP^N via a uniform point of S^{2N+1}.
CpnSample sample_cpn_fs_at(int N, std::uint64_t seed, std::uint64_t index);

}  // namespace projcurv
