#pragma once

#include <cstdint>
#include <vector>

namespace coarsekit {

/// Increments r_0, r_1, ... of a subgroup tower {e} = G_0 < G_1 < ...,
/// given as a finite prefix followed by a cycle repeated forever. A cycle of
/// all ones encodes a finite group. k_n = r_0 * ... * r_{n-1}, k_0 = 1.
class TowerSpec {
 public:
  TowerSpec() : cycle_{1} {}
  TowerSpec(std::vector<std::int64_t> prefix, std::vector<std::int64_t> cycle);

  const std::vector<std::int64_t>& prefix() const { return prefix_; }
  const std::vector<std::int64_t>& cycle() const { return cycle_; }

  /// r_n = k_{n+1} / k_n.
  std::int64_t increment(std::size_t n) const;
  /// k_n = |G_n|. Throws ValidationError on 64-bit overflow.
  std::uint64_t order(std::size_t n) const;

  bool is_finite() const;
  /// Order of the whole group when finite (product of the prefix).
  std::uint64_t finite_order() const;

  /// The tower G_n, G_{n+1}, ... re-based so that level 0 is G_n (orders
  /// divided by k_n). Used to compare classes living at a deeper level.
  TowerSpec shifted(std::size_t n) const;

  friend bool operator==(const TowerSpec&, const TowerSpec&) = default;

 private:
  std::vector<std::int64_t> prefix_;
  std::vector<std::int64_t> cycle_;
};

}  // namespace coarsekit
