#include "radial_profile.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "errors.hpp"

namespace projcurv {

namespace {

constexpr int kQuadratureOrder = 40;

void validate(const RadialContext& ctx) {
  if (ctx.manifold_dim < 1 || ctx.manifold_dim >= ctx.ambient_dim)
    throw InvalidArgumentError("radial context requires 1 <= m < N");
  if (static_cast<int>(ctx.kappas.size()) != ctx.manifold_dim)
    throw InvalidArgumentError("radial context needs m principal curvatures");
  for (double k : ctx.kappas)
    if (!(k >= 0.0)) throw InvalidArgumentError("kappas must be nonnegative");
}

double int_pow(double base, int exp) {
  double r = 1.0;
  while (exp > 0) {
    if (exp & 1) r *= base;
    base *= base;
    exp >>= 1;
  }
  return r;
}

// sigma_i of the squares, via prod_j (1 + kappa_j^2 t)
std::vector<double> symmetric_functions_of_squares(const std::vector<double>& kappas) {
  std::vector<double> sigma(kappas.size() + 1, 0.0);
  sigma[0] = 1.0;
  for (size_t j = 0; j < kappas.size(); ++j) {
    const double k2 = kappas[j] * kappas[j];
    for (size_t i = j + 1; i >= 1; --i) sigma[i] += k2 * sigma[i - 1];
  }
  return sigma;
}

template <typename F>
double integrate_pieces(const F& f, std::vector<double> cuts, double lo, double hi) {
  cuts.push_back(lo);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-14; }),
             cuts.end());

  std::vector<double> nodes, weights;
  gauss_legendre(kQuadratureOrder, nodes, weights);

  double total = 0.0;
  for (size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double a = std::max(cuts[p], lo);
    const double b = std::min(cuts[p + 1], hi);
    if (!(b > a)) continue;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double piece = 0.0;
    for (int i = 0; i < kQuadratureOrder; ++i)
      piece += weights[i] * f(mid + half * nodes[i]);
    total += half * piece;
  }
  return total;
}

}  // namespace

double cp_integrand(const RadialContext& ctx, double r) {
  validate(ctx);
  const double c = std::cos(r);
  const double s = std::sin(r);
  double prod = 1.0;
  for (double k : ctx.kappas) prod *= c * c - k * k * s * s;
  const int sin_exp = 2 * ctx.ambient_dim - 2 * ctx.manifold_dim - 1;
  return std::abs(prod) * std::max(c, 0.0) * int_pow(std::abs(s), sin_exp);
}

double cp_integrand_symmetric(const RadialContext& ctx, double r) {
  validate(ctx);
  const double c = std::cos(r);
  const double s = std::sin(r);
  const std::vector<double> sigma = symmetric_functions_of_squares(ctx.kappas);
  const int m = ctx.manifold_dim;
  const int base_sin = 2 * ctx.ambient_dim - 2 * m - 1;
  double sum = 0.0;
  double sign = 1.0;
  for (int i = 0; i <= m; ++i) {
    sum += sign * int_pow(s, base_sin + 2 * i) * int_pow(c, 2 * m - 2 * i + 1) * sigma[i];
    sign = -sign;
  }
  return std::abs(sum);
}

double sphere_integrand(const std::vector<double>& eigs, int sphere_dim, double r) {
  const int n = static_cast<int>(eigs.size());
  if (sphere_dim <= n) throw InvalidArgumentError("sphere_integrand needs N_s > n");
  const double c = std::cos(r);
  const double s = std::sin(r);
  double prod = 1.0;
  for (double k : eigs) prod *= c - k * s;
  return std::abs(prod) * int_pow(std::abs(s), sphere_dim - n - 1);
}

std::pair<double, double> lift_identity_check(const RadialContext& ctx, double r) {
  validate(ctx);
  std::vector<double> lifted;
  lifted.push_back(0.0);  // Hopf fibre direction
  for (double k : ctx.kappas) {
    lifted.push_back(k);
    lifted.push_back(-k);
  }
  const double lhs = sphere_integrand(lifted, 2 * ctx.ambient_dim + 1, r);
  const double rhs = cp_integrand(ctx, r);
  return {lhs, rhs};
}

std::pair<double, double> euclidean_density_check(const std::vector<double>& eigs,
                                                  int sphere_dim, double theta) {
  const int n = static_cast<int>(eigs.size());
  if (sphere_dim <= n) throw InvalidArgumentError("euclidean_density_check needs N_s > n");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  double prod = 1.0;
  for (double k : eigs) prod *= k * s - c;
  const double lhs = std::abs(prod) * int_pow(std::abs(s), sphere_dim - n - 1);
  const double rhs = sphere_integrand(eigs, sphere_dim, theta);
  return {lhs, rhs};
}

double dexp_det(const RadialContext& ctx, double r) {
  validate(ctx);
  if (!(r > 0.0)) throw InvalidArgumentError("dexp_det needs r > 0");
  const double c = std::cos(r);
  const double s = std::sin(r);
  double prod = 1.0;
  for (double k : ctx.kappas) prod *= (c - k * s) * (c + k * s);
  const int exp = 2 * ctx.ambient_dim - 2 * ctx.manifold_dim - 1;
  return prod * c * int_pow(s / r, exp);
}

double radial_quadrature(const RadialContext& ctx) {
  validate(ctx);
  std::vector<double> cuts;
  for (double k : ctx.kappas)
    if (k > 0.0) cuts.push_back(std::atan(1.0 / k));
  return integrate_pieces([&](double r) { return cp_integrand(ctx, r); }, std::move(cuts),
                          0.0, M_PI / 2.0);
}

double sphere_radial_quadrature(const std::vector<double>& eigs, int sphere_dim) {
  std::vector<double> cuts;
  for (double k : eigs) cuts.push_back(std::atan2(1.0, k));
  return integrate_pieces([&](double r) { return sphere_integrand(eigs, sphere_dim, r); },
                          std::move(cuts), 0.0, M_PI);
}

double curve_pointwise_closed_form(double K) {
  if (K > 4.0)
    throw DomainError("curve curvature above the ambient bound 4");
  const double dk = K - 4.0;
  return 0.125 * (dk * dk + 4.0) / (6.0 - K);
}

double curve_alpha(double K) {
  if (K > 4.0)
    throw DomainError("curve curvature above the ambient bound 4");
  return std::asin(std::sqrt(2.0 / (6.0 - K)));
}

void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  if (order < 1) throw InvalidArgumentError("gauss_legendre needs order >= 1");

  static std::mutex cache_mutex;
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(order);
    if (it != cache.end()) {
      nodes = it->second.first;
      weights = it->second.second;
      return;
    }
  }

  std::vector<double> x(order), w(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-angle initial guess, then Newton on P_order
    double t = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double p_prime = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      p_prime = order * (t * p1 - p0) / (t * t - 1.0);
      const double step = p1 / p_prime;
      t -= step;
      if (std::abs(step) < 1e-15) break;
    }
    // recompute derivative at the converged node
    {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      p_prime = order * (t * p1 - p0) / (t * t - 1.0);
    }
    x[i] = -t;
    x[order - 1 - i] = t;
    const double weight = 2.0 / ((1.0 - t * t) * p_prime * p_prime);
    w[i] = weight;
    w[order - 1 - i] = weight;
  }

  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache[order] = {x, w};
  }
  nodes = std::move(x);
  weights = std::move(w);
}

}  // namespace projcurv
