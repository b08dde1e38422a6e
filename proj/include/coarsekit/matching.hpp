#pragma once

#include <cstddef>
#include <vector>

namespace coarsekit {

inline constexpr std::size_t kUnmatched = static_cast<std::size_t>(-1);

/// Maximum bipartite matching between left vertices 0..L-1 and right
/// vertices 0..R-1. Vertices and adjacency lists are visited in order, so
/// the result is deterministic.
struct BipartiteMatching {
  std::vector<std::size_t> left_to_right;  // kUnmatched when free
  std::vector<std::size_t> right_to_left;
  std::size_t size = 0;

  bool saturates_left() const { return size == left_to_right.size(); }
};

BipartiteMatching hopcroft_karp(std::size_t right_count,
                                const std::vector<std::vector<std::size_t>>& adjacency);

/// Left vertices reachable from free left vertices by alternating paths.
/// When the matching is maximum and not left-saturating, this set A has
/// |N(A)| = |A| - (number of free left vertices) < |A|.
std::vector<std::size_t> hall_violator(const BipartiteMatching& matching,
                                       const std::vector<std::vector<std::size_t>>& adjacency);

/// Sorted neighbourhood of a set of left vertices.
std::vector<std::size_t> neighbourhood(const std::vector<std::size_t>& left,
                                       const std::vector<std::vector<std::size_t>>& adjacency);

}  // namespace coarsekit
