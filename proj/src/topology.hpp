#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace projcurv {

// Real-coefficient Betti numbers of a compact complex m-fold, indices 0..2m.
struct BettiVector {
  std::vector<std::int64_t> dims;
  int complex_dim = 0;
};

// Betti numbers of a smooth degree-d hypersurface: (1, 2g, 1) with
// g = (d-1)(d-2)/2 for curves, (1, 0, chi-2, 0, 1) with
// chi = d^3 - 4d^2 + 6d for surfaces in CP^3.
BettiVector hypersurface_betti(int degree, int complex_dim);

// Betti numbers of the circle-bundle lift, inverting the Gysin identities:
// for k <= m, beta_k(lift) = beta_k - beta_{k-2}; for k >= m+1,
// beta_k(lift) = beta_{k-1} - beta_{k+1}. A negative intermediate means the
// input is not realizable and throws InvalidBettiError. The lift satisfies
// sum beta(lift) = beta_{m-1} + 2 beta_m + beta_{m+1}.
BettiVector gysin_transfer(const BettiVector& b);

struct BoundCheck {
  bool passed = false;
  double margin = 0.0;   // bound minus attained value (slack)
  double lhs = 0.0;
  double rhs = 0.0;
};

// beta_{m-1} + 2 beta_m + beta_{m+1} <= T
BoundCheck check_basicestimate(const BettiVector& b, double total_curvature);

// every even + odd Betti pair bounded by T/2 (and each even Betti alone)
BoundCheck check_detailedestimate(const BettiVector& b, double total_curvature);

// sum of all Betti numbers <= ((m+1)/2) T
BoundCheck check_cpcl_a(const BettiVector& b, double total_curvature);

// [2d^2-4d+4, 2d^2]; consecutive intervals are disjoint with gap exactly 2
std::pair<std::int64_t, std::int64_t> degree_interval(int degree);

// The unique degree whose interval contains T. Throws DomainError for T < 2
// and GapError when T falls strictly between two intervals.
int classify_degree(double total_curvature);

// Average sectional curvature of a smooth degree-d plane curve: 2(3-d).
double average_curvature(int degree);

// Exact check of d ((K_d-4)^2+4) == (2d^2-4d+4)(6-K_d) with K_d = 2(3-d).
bool jensen_identity_holds(int degree);

}  // namespace projcurv
