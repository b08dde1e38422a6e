#pragma once

#include <map>
#include <utility>
#include <vector>

#include "coarsekit/space.hpp"
#include "coarsekit/sparse_operator.hpp"

namespace coarsekit {

/// Bijection t : dom(t) -> ran(t) between two subsets of a space, with its
/// displacement max_x d(x, t(x)) recorded. Empty translations are allowed.
class PartialTranslation {
 public:
  /// Throws ValidationError when a source or target repeats.
  static PartialTranslation from_pairs(SpacePtr space,
                                       std::vector<std::pair<Point, Point>> pairs);
  static PartialTranslation identity(SpacePtr space, const PointSet& domain);

  const SpacePtr& space() const { return space_; }
  const std::map<Point, Point>& map() const { return map_; }
  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }
  int displacement() const { return displacement_; }

  PointSet domain() const;
  PointSet range() const;
  std::vector<std::pair<Point, Point>> pairs() const;

  friend bool operator==(const PartialTranslation& a, const PartialTranslation& b) {
    return a.map_ == b.map_;
  }

 private:
  PartialTranslation(SpacePtr space, std::map<Point, Point> map);

  SpacePtr space_;
  std::map<Point, Point> map_;
  int displacement_ = 0;
};

/// t o t': defined on (t')^-1(dom(t) n ran(t')).
PartialTranslation compose(const PartialTranslation& t, const PartialTranslation& t_prime);
PartialTranslation inverse(const PartialTranslation& t);

/// 0/1 operator V_t with (V_t)_{xy} = 1 iff x = t(y).
SparseOperator to_operator(const PartialTranslation& t);

/// The finite family {t_ij} covering every pair at distance <= R: the space
/// is split into (2R+1)-separated classes X_1..X_n and t_ij sends y in X_j
/// to the unique x in X_i with d(x,y) <= R.
class TijFamily {
 public:
  TijFamily(SeparatedPartition partition, std::vector<PartialTranslation> maps,
            int radius)
      : partition_(std::move(partition)), maps_(std::move(maps)), radius_(radius) {}

  std::size_t classes() const { return partition_.classes.size(); }
  const SeparatedPartition& partition() const { return partition_; }
  const PartialTranslation& at(std::size_t i, std::size_t j) const {
    return maps_.at(i * classes() + j);
  }
  const std::vector<PartialTranslation>& all() const { return maps_; }
  int radius() const { return radius_; }

 private:
  SeparatedPartition partition_;
  std::vector<PartialTranslation> maps_;
  int radius_;
};

TijFamily tij_family(const SpacePtr& space, int radius);

}  // namespace coarsekit
