#pragma once

// Shared generators and brute-force oracles for the test suites. Oracles
// deliberately avoid the library's algorithms: dense matrices instead of
// sparse ones, direct set formulas instead of ball queries, Kuhn's matching
// instead of Hopcroft-Karp, explicit sequences instead of periodic algebra.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "coarsekit/ktheory.hpp"
#include "coarsekit/rational.hpp"
#include "coarsekit/space.hpp"
#include "coarsekit/sparse_operator.hpp"

namespace testing {

using namespace coarsekit;

using Dense = std::vector<std::vector<Rational>>;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  std::mt19937_64& rng() { return rng_; }

  Rational small_rational(int range = 5, int max_den = 4) {
    Rational q(uniform(-range, range), uniform(1, max_den));
    q.canonicalize();
    return q;
  }

  // Random operator with entries only at distance <= prop (prop < 0: anywhere).
  SparseOperator op(const SpacePtr& space, double density, int prop = -1, bool nonneg = false) {
    SparseOperator a(space);
    for (Point x = 0; x < space->size(); ++x)
      for (Point y = 0; y < space->size(); ++y) {
        if (prop >= 0 && space->distance(x, y) > prop) continue;
        if (!coin(density)) continue;
        Rational v = small_rational();
        if (nonneg) v = abs(v);
        a.set(x, y, v);
      }
    return a;
  }

  PointSet subset(const Space& space, double p) {
    PointSet out;
    for (Point x = 0; x < space.size(); ++x)
      if (coin(p)) out.push_back(x);
    return out;
  }

  std::vector<std::int64_t> ints(std::size_t n, int lo, int hi) {
    std::vector<std::int64_t> out(n);
    for (auto& v : out) v = uniform(lo, hi);
    return out;
  }

  K0Class k0(int max_pre, int max_period, int range) {
    K0Class x;
    x.preperiod = ints(static_cast<std::size_t>(uniform(0, max_pre)), -range, range);
    x.period = ints(static_cast<std::size_t>(uniform(1, max_period)), -range, range);
    return x;
  }

 private:
  std::mt19937_64 rng_;
};

inline Dense dense(const SparseOperator& a) {
  Dense d(a.dim(), std::vector<Rational>(a.dim(), 0));
  for (const auto& t : a.triplets()) d[t.row][t.col] = t.value;
  return d;
}

inline Dense dense_mul(const Dense& a, const Dense& b) {
  const std::size_t n = a.size();
  Dense c(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

inline Rational dense_norm1(const Dense& a) {
  Rational best = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += abs(a[i][j]);
    best = std::max(best, s);
  }
  return best;
}

inline Rational dense_norm_inf(const Dense& a) {
  Rational best = 0;
  for (const auto& row : a) {
    Rational s = 0;
    for (const auto& v : row) s += abs(v);
    best = std::max(best, s);
  }
  return best;
}

// Boundary straight from the set formula, using explicit complements.
inline PointSet brute_boundary(const Space& space, const PointSet& a, int r) {
  std::set<Point> in(a.begin(), a.end());
  std::vector<Point> rest;
  for (Point x = 0; x < space.size(); ++x)
    if (!in.count(x)) rest.push_back(x);
  PointSet out;
  for (Point x = 0; x < space.size(); ++x) {
    int da = 1 << 30, dr = 1 << 30;
    for (auto y : a) da = std::min(da, space.distance(x, y));
    for (auto y : rest) dr = std::min(dr, space.distance(x, y));
    if (da <= r && dr <= r) out.push_back(x);
  }
  return out;
}

// Kuhn's augmenting-path matching; returns the maximum matching size.
inline std::size_t kuhn_matching(std::size_t right, const std::vector<std::vector<std::size_t>>& adj) {
  std::vector<long> match(right, -1);
  std::size_t size = 0;
  for (std::size_t u = 0; u < adj.size(); ++u) {
    std::vector<char> seen(right, 0);
    std::function<bool(std::size_t)> go = [&](std::size_t v) -> bool {
      for (auto w : adj[v]) {
        if (seen[w]) continue;
        seen[w] = 1;
        if (match[w] < 0 || go(static_cast<std::size_t>(match[w]))) {
          match[w] = static_cast<long>(v);
          return true;
        }
      }
      return false;
    };
    if (go(u)) ++size;
  }
  return size;
}

// First `n` entries of an eventually periodic sequence.
inline std::vector<std::int64_t> expand(const K0Class& x, std::size_t n) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(i < x.preperiod.size() ? x.preperiod[i]
                                         : x.period[(i - x.preperiod.size()) % x.period.size()]);
  return out;
}

inline std::vector<std::int64_t> explicit_block_sums(const std::vector<std::int64_t>& v, std::size_t w) {
  std::vector<std::int64_t> out;
  for (std::size_t j = 0; j + w <= v.size(); j += w) {
    std::int64_t s = 0;
    for (std::size_t i = j; i < j + w; ++i) s += v[i];
    out.push_back(s);
  }
  return out;
}

// Answer of the finite model for a finitely supported level-0 vector. When
// the (levels, width) model is inconclusive, the vector is padded and pushed
// through enough levels that a single block covers it.
inline TruncatedLimit::Answer oracle_answer(const TowerSpec& tower, std::size_t levels, std::size_t width,
                                            std::vector<std::int64_t> v, bool positivity) {
  auto ask = [&](const TruncatedLimit& model, const std::vector<std::int64_t>& w) {
    return positivity ? model.is_positive(w) : model.is_zero(w);
  };
  const TruncatedLimit model(tower, levels, width);
  const auto first = ask(model, v);
  if (first != TruncatedLimit::Answer::OutOfScope || tower.is_finite()) return first;
  std::size_t deep = levels;
  while (tower.order(deep) < v.size()) ++deep;
  v.resize(tower.order(deep), 0);
  return ask(TruncatedLimit(tower, deep, 1), v);
}

}  // namespace testing
