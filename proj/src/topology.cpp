#include "topology.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace projcurv {

namespace {

void validate(const BettiVector& b) {
  const int n = 2 * b.complex_dim;
  if (b.complex_dim < 1 || static_cast<int>(b.dims.size()) != n + 1)
    throw InvalidArgumentError("Betti vector must have 2m+1 entries");
  if (b.dims[0] != 1) throw InvalidBettiError("beta_0 must be 1 for a connected manifold");
  for (int k = 0; k <= n; ++k) {
    if (b.dims[k] < 0) throw InvalidBettiError("Betti numbers are nonnegative");
    if (b.dims[k] != b.dims[n - k])
      throw InvalidBettiError("Betti vector violates Poincare duality");
  }
  for (int k = 0; k <= n; k += 2)
    if (b.dims[k] < 1)
      throw InvalidBettiError("even Betti numbers of a projective manifold are nonzero");
}

std::int64_t betti_or_zero(const BettiVector& b, int k) {
  if (k < 0 || k >= static_cast<int>(b.dims.size())) return 0;
  return b.dims[k];
}

}  // namespace

BettiVector hypersurface_betti(int degree, int complex_dim) {
  if (degree < 1) throw InvalidArgumentError("degree must be >= 1");
  BettiVector b;
  b.complex_dim = complex_dim;
  if (complex_dim == 1) {
    const std::int64_t d = degree;
    const std::int64_t genus = (d - 1) * (d - 2) / 2;
    b.dims = {1, 2 * genus, 1};
  } else if (complex_dim == 2) {
    const std::int64_t d = degree;
    const std::int64_t chi = d * d * d - 4 * d * d + 6 * d;
    b.dims = {1, 0, chi - 2, 0, 1};
  } else {
    throw UnsupportedError("hypersurface_betti supports complex dimension 1 or 2");
  }
  return b;
}

BettiVector gysin_transfer(const BettiVector& b) {
  validate(b);
  const int m = b.complex_dim;
  const int n = 2 * m;
  BettiVector lift;
  lift.complex_dim = m;  // carries the base dimension; dims has n+2 entries
  lift.dims.resize(n + 2);
  for (int k = 0; k <= n + 1; ++k) {
    std::int64_t value = 0;
    if (k <= m)
      value = betti_or_zero(b, k) - betti_or_zero(b, k - 2);
    else
      value = betti_or_zero(b, k - 1) - betti_or_zero(b, k + 1);
    if (value < 0)
      throw InvalidBettiError("Gysin transfer produced a negative Betti number");
    lift.dims[k] = value;
  }

  std::int64_t lift_sum = 0;
  for (std::int64_t v : lift.dims) lift_sum += v;
  const std::int64_t expected =
      betti_or_zero(b, m - 1) + 2 * betti_or_zero(b, m) + betti_or_zero(b, m + 1);
  if (lift_sum != expected)
    throw InvalidBettiError("Gysin transfer sum identity failed");
  return lift;
}

BoundCheck check_basicestimate(const BettiVector& b, double total_curvature) {
  validate(b);
  if (!(total_curvature >= 2.0))
    throw DomainError("total curvature of a projective manifold is at least 2");
  const int m = b.complex_dim;
  const double lhs = static_cast<double>(betti_or_zero(b, m - 1) +
                                         2 * betti_or_zero(b, m) +
                                         betti_or_zero(b, m + 1));
  BoundCheck check;
  check.lhs = lhs;
  check.rhs = total_curvature;
  check.margin = total_curvature - lhs;
  check.passed = lhs <= total_curvature;
  return check;
}

BoundCheck check_detailedestimate(const BettiVector& b, double total_curvature) {
  validate(b);
  const int n = 2 * b.complex_dim;
  std::int64_t best_even = 0, best_odd = 0;
  for (int k = 0; k <= n; k += 2) best_even = std::max(best_even, b.dims[k]);
  for (int k = 1; k <= n; k += 2) best_odd = std::max(best_odd, b.dims[k]);
  // the all-even corollary is the pair bound with the odd part zero
  const double lhs = static_cast<double>(best_even + best_odd);
  BoundCheck check;
  check.lhs = lhs;
  check.rhs = total_curvature / 2.0;
  check.margin = check.rhs - lhs;
  check.passed = lhs <= check.rhs;
  return check;
}

BoundCheck check_cpcl_a(const BettiVector& b, double total_curvature) {
  validate(b);
  std::int64_t sum = 0;
  for (std::int64_t v : b.dims) sum += v;
  BoundCheck check;
  check.lhs = static_cast<double>(sum);
  check.rhs = 0.5 * (b.complex_dim + 1) * total_curvature;
  check.margin = check.rhs - check.lhs;
  check.passed = check.lhs <= check.rhs;
  return check;
}

std::pair<std::int64_t, std::int64_t> degree_interval(int degree) {
  if (degree < 1) throw InvalidArgumentError("degree must be >= 1");
  const std::int64_t d = degree;
  return {2 * d * d - 4 * d + 4, 2 * d * d};
}

int classify_degree(double total_curvature) {
  if (!(total_curvature >= 2.0))
    throw DomainError("no smooth plane curve has total curvature below 2");
  const int guess = static_cast<int>(std::floor(std::sqrt(total_curvature / 2.0)));
  for (int d = std::max(1, guess - 1); d <= guess + 2; ++d) {
    const auto [lo, hi] = degree_interval(d);
    if (total_curvature >= static_cast<double>(lo) &&
        total_curvature <= static_cast<double>(hi))
      return d;
    if (total_curvature < static_cast<double>(lo)) {
      const auto [prev_lo, prev_hi] = degree_interval(d - 1);
      throw GapError("total curvature " + std::to_string(total_curvature) +
                     " lies in the gap between degrees " + std::to_string(d - 1) +
                     " (upper " + std::to_string(prev_hi) + ") and " + std::to_string(d) +
                     " (lower " + std::to_string(lo) + ")");
    }
  }
  throw NumericalError("degree classification failed");
}

double average_curvature(int degree) {
  if (degree < 1) throw InvalidArgumentError("degree must be >= 1");
  return 2.0 * (3.0 - degree);
}

bool jensen_identity_holds(int degree) {
  if (degree < 1) throw InvalidArgumentError("degree must be >= 1");
  const std::int64_t d = degree;
  const std::int64_t kd = 2 * (3 - d);
  const std::int64_t lhs = d * ((kd - 4) * (kd - 4) + 4);
  const std::int64_t rhs = (2 * d * d - 4 * d + 4) * (6 - kd);
  return lhs == rhs;
}

}  // namespace projcurv
