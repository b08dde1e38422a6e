#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "coarsekit/tower.hpp"

namespace coarsekit {

/// Index of a point inside its Space. Labels carry the human-readable id.
using Point = std::size_t;
/// Sorted, duplicate-free list of points.
using PointSet = std::vector<Point>;

namespace family {

/// The integers; a window of size n is {0, ..., n-1}.
struct Line {};
/// Z^dim with the l1 (word) metric; a window of size n is {0..n-1}^dim.
struct Lattice {
  int dim = 2;
};
/// Free group on `rank` generators with the word metric; a window of size n
/// is the ball of radius n around the identity.
struct FreeGroup {
  int rank = 2;
};
/// Locally finite group with tower metric d(g,h) = min{n : g^-1 h in G_n};
/// a window of size n is the finite subgroup G_n.
struct Tower {
  TowerSpec tower;
};
/// Disjoint intervals on a line: block i has sizes[i] points and sits at
/// distance gaps[i-1] from the union of the earlier blocks. A window of
/// size n keeps the first n blocks.
struct Gaps {
  std::vector<int> sizes;
  std::vector<int> gaps;
};
/// A finite metric given as a full symmetric table.
struct Explicit {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table;
};

}  // namespace family

using FamilySpec = std::variant<family::Line, family::Lattice,
                                family::FreeGroup, family::Tower,
                                family::Gaps, family::Explicit>;

/// Which infinite family a window was cut from, and at which size.
struct FamilyTag {
  FamilySpec family;
  int size = 0;
};

/// Finite metric space with an exact integer metric.
///
/// Built-in families compute distances from per-point coordinates; explicit
/// tables are validated (zero diagonal, symmetry, positivity off the
/// diagonal, triangle inequality) on construction. Immutable.
class Space {
 public:
  std::size_t size() const { return labels_.size(); }
  const std::string& label(Point x) const { return labels_.at(x); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Point> find(const std::string& label) const;
  const FamilyTag& tag() const { return tag_; }

  int distance(Point x, Point y) const;
  /// d(x, A) = min over a in A; returns nullopt when A is empty.
  std::optional<int> distance(Point x, const PointSet& set) const;
  std::optional<int> distance(const PointSet& a, const PointSet& b) const;
  int diameter(const PointSet& set) const;

  /// Closed ball {y : d(x,y) <= radius}, sorted.
  PointSet ball(Point x, int radius) const;
  PointSet all_points() const;

  /// Points whose ambient ball of radius `collar` (in the infinite family)
  /// lies inside this window.
  PointSet interior(int collar) const;
  /// Canonical base point: the identity for groups, the middle of a line or
  /// lattice window, point 0 otherwise.
  Point origin() const { return origin_; }

  /// Blocks of a Gaps window (empty for every other family).
  const std::vector<PointSet>& blocks() const { return blocks_; }
  /// Line coordinate of a point for Line and Gaps windows.
  std::optional<int> coordinate(Point x) const;
  /// Word length for FreeGroup windows.
  std::optional<int> word_length(Point x) const;
  /// Raw family coordinates: line position, lattice vector, reduced word
  /// letters (+-(i+1) for generator i), or tower digits (least significant
  /// first). Empty for explicit tables.
  std::span<const int> coords(Point x) const { return coords_.at(x); }

  /// Re-checks every metric axiom by enumeration. Returns a description of
  /// the first violation, or nullopt.
  std::optional<std::string> check_metric() const;

 private:
  enum class Metric { Line, L1, Word, Tower, Table };

  Space() = default;

  friend Space make_window(const FamilySpec& family, int size);

  std::vector<std::string> labels_;
  std::vector<std::vector<int>> coords_;
  std::vector<int> table_;  // lower-triangular, row-major, Table only
  std::vector<PointSet> blocks_;
  std::optional<int> next_block_start_;  // Gaps: first ambient point past the window
  Metric metric_ = Metric::Table;
  FamilyTag tag_;
  Point origin_ = 0;
};

using SpacePtr = std::shared_ptr<const Space>;

/// Builds the window of the given size. Throws ValidationError for size < 1
/// or an explicit table violating the metric axioms.
Space make_window(const FamilySpec& family, int size);

inline SpacePtr make_shared_window(const FamilySpec& family, int size) {
  return std::make_shared<const Space>(make_window(family, size));
}

/// Disjoint union of intervals with the given sizes; block i (i >= 1) sits
/// at distance gaps[i-1] from all earlier blocks. Gaps must be strictly
/// increasing and positive.
Space gap_union(std::vector<int> sizes, std::vector<int> gaps);

/// Classes of a partition of the whole space, ordered by smallest point.
struct Partition {
  int parameter = 0;
  std::vector<PointSet> classes;
};

/// Partition whose classes are S-separated: distinct points of one class are
/// at distance >= S.
struct SeparatedPartition {
  int separation = 1;
  std::vector<PointSet> classes;
};

/// X = U u V where U and V are unions of pieces; pieces of U (resp. V) are
/// pairwise at distance > r, and every piece has diameter <= bound.
struct UVDecomposition {
  std::vector<PointSet> u_pieces;
  std::vector<PointSet> v_pieces;
  int r = 1;
  int bound = 0;
};

/// Equivalence classes of the relation generated by d(x,y) <= R.
Partition r_components(const Space& space, int radius);

/// Greedy first-fit in stored point order.
SeparatedPartition separated_partition(const Space& space, int separation);

/// For each radius R, max over x of |B_R(x)|.
std::vector<std::size_t> growth_profile(const Space& space,
                                        std::span<const int> radii);

/// Max r-component size for each requested window of the family.
std::vector<std::size_t> asdim_zero_witness(const FamilySpec& family, int r,
                                            std::span<const int> window_sizes);

/// Two-colour decomposition witnessing asymptotic dimension <= 1. Line
/// windows are cut into intervals of length 2r; free group balls into
/// annuli of width 2r, each split into subtrees. Throws NotImplementedError
/// for other families.
UVDecomposition asdim_one_decomposition(const Space& space, int r);
UVDecomposition asdim_one_decomposition(const FamilySpec& family, int r,
                                        int window);

/// Returns the first violated UVDecomposition invariant, or nullopt.
std::optional<std::string> check_uv(const Space& space,
                                    const UVDecomposition& uv);

/// Returns nullopt if `classes` partitions the space.
std::optional<std::string> check_partition(const Space& space,
                                           const std::vector<PointSet>& classes);

/// Sorts and de-duplicates, validating indices against the space.
PointSet make_point_set(const Space& space, std::vector<Point> points);

}  // namespace coarsekit
