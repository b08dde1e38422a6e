#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "coarsekit/sparse_operator.hpp"

namespace coarsekit {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Interval [lower, upper] containing the l^p -> l^p operator norm.
/// At p = 1 and p = inf both ends are the exact norm rounded once.
struct NormEstimate {
  double p = 2;
  double lower = 0;
  double upper = 0;
  std::vector<std::string> methods;
};

struct NormOptions {
  std::uint64_t seed = 0;
  int max_iterations = 20000;
  double tolerance = 1e-15;
  int random_starts = 2;
};

/// Throws ValidationError for p < 1 (or NaN).
///
/// upper: exact column/row sums at p = 1 / inf, otherwise the Riesz-Thorin
/// bound ||a||_1^{1/p} ||a||_inf^{1-1/p}.
/// lower: the best of the unit-vector columns, Boyd's fixed-point iteration
/// (all-ones start plus seeded random starts), and at p = 2 plain power
/// iteration on a^T a. The lower end is clipped to the upper end, which can
/// only matter at the level of rounding error.
NormEstimate norm_bounds(const SparseOperator& a, double p, const NormOptions& options = {});

/// Boyd / Higham iteration x <- dual_q(a^T dual_p(a x)); returns the best
/// ||a x||_p / ||x||_p seen. Converges to the norm for nonnegative matrices
/// started from a positive vector.
double boyd_lower_bound(const SparseOperator& a, double p, std::span<const double> start,
                        const NormOptions& options = {});

/// Power iteration on a^T a; returns ||a x||_2 for the final unit vector.
double power_iteration_norm2(const SparseOperator& a, std::span<const double> start,
                             const NormOptions& options = {});

double vector_pnorm(std::span<const double> v, double p);

}  // namespace coarsekit
