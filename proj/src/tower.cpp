#include "coarsekit/tower.hpp"

#include <algorithm>
#include <string>

#include "coarsekit/error.hpp"

namespace coarsekit {

TowerSpec::TowerSpec(std::vector<std::int64_t> prefix,
                     std::vector<std::int64_t> cycle)
    : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
  if (cycle_.empty()) throw ValidationError("tower cycle must be nonempty");
  auto bad = [](std::int64_t r) { return r < 1; };
  if (std::any_of(prefix_.begin(), prefix_.end(), bad) ||
      std::any_of(cycle_.begin(), cycle_.end(), bad))
    throw ValidationError("tower increments must be >= 1");
}

std::int64_t TowerSpec::increment(std::size_t n) const {
  if (n < prefix_.size()) return prefix_[n];
  return cycle_[(n - prefix_.size()) % cycle_.size()];
}

std::uint64_t TowerSpec::order(std::size_t n) const {
  std::uint64_t k = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<std::uint64_t>(increment(i));
    if (__builtin_mul_overflow(k, r, &k))
      throw ValidationError("tower order k_" + std::to_string(n) +
                            " overflows 64 bits");
  }
  return k;
}

bool TowerSpec::is_finite() const {
  return std::all_of(cycle_.begin(), cycle_.end(),
                     [](std::int64_t r) { return r == 1; });
}

std::uint64_t TowerSpec::finite_order() const {
  return order(prefix_.size());
}

TowerSpec TowerSpec::shifted(std::size_t n) const {
  std::vector<std::int64_t> prefix;
  std::vector<std::int64_t> cycle;
  if (n <= prefix_.size()) {
    prefix.assign(prefix_.begin() + static_cast<std::ptrdiff_t>(n),
                  prefix_.end());
    cycle = cycle_;
  } else {
    const std::size_t rot = (n - prefix_.size()) % cycle_.size();
    cycle.assign(cycle_.begin() + static_cast<std::ptrdiff_t>(rot),
                 cycle_.end());
    cycle.insert(cycle.end(), cycle_.begin(),
                 cycle_.begin() + static_cast<std::ptrdiff_t>(rot));
  }
  return TowerSpec(std::move(prefix), std::move(cycle));
}

}  // namespace coarsekit
