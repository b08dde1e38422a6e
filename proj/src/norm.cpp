#include "coarsekit/norm.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "coarsekit/error.hpp"

namespace coarsekit {

namespace {

// y_i = sign(v_i) |v_i|^{p-1} / ||v||_p^{p-1}: the unit vector of the dual
// space norming v.
std::vector<double> dual_vector(std::span<const double> v, double p) {
  std::vector<double> out(v.size(), 0.0);
  const double norm = vector_pnorm(v, p);
  if (norm == 0.0) return out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double t = std::abs(v[i]) / norm;
    out[i] = std::copysign(std::pow(t, p - 1.0), v[i]);
    if (v[i] == 0.0) out[i] = 0.0;
  }
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

double vector_pnorm(std::span<const double> v, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  // Scale by the max entry to keep pow() away from under/overflow.
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x) / m, p);
  return m * std::pow(s, 1.0 / p);
}

double boyd_lower_bound(const SparseOperator& a, double p, std::span<const double> start,
                        const NormOptions& options) {
  if (!(p > 1.0) || std::isinf(p))
    throw ValidationError("Boyd iteration needs 1 < p < inf");
  const double q = p / (p - 1.0);
  const double n0 = vector_pnorm(start, p);
  if (n0 == 0.0) return 0.0;
  std::vector<double> x(start.begin(), start.end());
  for (double& v : x) v /= n0;

  double best = 0.0;
  for (int it = 0; it < options.max_iterations; ++it) {
    const auto y = a.apply(x);
    const double est = vector_pnorm(y, p);
    best = std::max(best, est);
    if (est == 0.0) break;
    const auto z = a.apply_transpose(dual_vector(y, p));
    const double zq = vector_pnorm(z, q);
    if (zq <= dot(z, x) * (1.0 + options.tolerance)) break;
    auto next = dual_vector(z, q);
    double change = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) change = std::max(change, std::abs(next[i] - x[i]));
    x = std::move(next);
    if (change < options.tolerance) {
      best = std::max(best, vector_pnorm(a.apply(x), p));
      break;
    }
  }
  return best;
}

double power_iteration_norm2(const SparseOperator& a, std::span<const double> start,
                             const NormOptions& options) {
  std::vector<double> x(start.begin(), start.end());
  double n = vector_pnorm(x, 2.0);
  if (n == 0.0) return 0.0;
  for (double& v : x) v /= n;
  double est = vector_pnorm(a.apply(x), 2.0);
  for (int it = 0; it < options.max_iterations; ++it) {
    auto w = a.apply_transpose(a.apply(x));
    n = vector_pnorm(w, 2.0);
    if (n == 0.0) return 0.0;
    for (double& v : w) v /= n;
    const double next = vector_pnorm(a.apply(w), 2.0);
    x = std::move(w);
    const bool settled = std::abs(next - est) <= options.tolerance * std::max(1.0, next);
    est = std::max(est, next);
    if (settled) break;
  }
  return est;
}

NormEstimate norm_bounds(const SparseOperator& a, double p, const NormOptions& options) {
  if (std::isnan(p) || p < 1.0) throw ValidationError("norm exponent p must be >= 1");
  NormEstimate est;
  est.p = p;
  const double n1 = a.norm1().get_d();
  const double ninf = a.norm_inf().get_d();
  if (p == 1.0) {
    est.lower = est.upper = n1;
    est.methods = {"exact:max-column-sum"};
    return est;
  }
  if (std::isinf(p)) {
    est.lower = est.upper = ninf;
    est.methods = {"exact:max-row-sum"};
    return est;
  }
  est.upper = std::pow(n1, 1.0 / p) * std::pow(ninf, 1.0 - 1.0 / p);
  est.methods.push_back("upper:riesz-thorin");

  const std::size_t n = a.dim();
  double lower = 0.0;
  {
    std::vector<std::vector<double>> cols(n);
    for (const auto& t : a.triplets()) cols[t.col].push_back(t.value.get_d());
    for (const auto& c : cols) lower = std::max(lower, vector_pnorm(c, p));
  }
  est.methods.push_back("lower:unit-columns");

  std::vector<std::vector<double>> starts;
  starts.emplace_back(n, 1.0);
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int s = 0; s < options.random_starts; ++s) {
    std::vector<double> v(n);
    for (double& x : v) x = gauss(rng);
    starts.push_back(std::move(v));
  }
  for (const auto& s : starts) lower = std::max(lower, boyd_lower_bound(a, p, s, options));
  est.methods.push_back("lower:boyd");
  if (p == 2.0) {
    for (const auto& s : starts) lower = std::max(lower, power_iteration_norm2(a, s, options));
    est.methods.push_back("lower:power-iteration");
  }
  est.lower = std::min(lower, est.upper);
  return est;
}

}  // namespace coarsekit
