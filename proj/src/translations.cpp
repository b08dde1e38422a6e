#include "coarsekit/translations.hpp"

#include <algorithm>
#include <set>

#include "coarsekit/error.hpp"

namespace coarsekit {

PartialTranslation::PartialTranslation(SpacePtr space, std::map<Point, Point> map)
    : space_(std::move(space)), map_(std::move(map)) {
  for (const auto& [x, tx] : map_)
    displacement_ = std::max(displacement_, space_->distance(x, tx));
}

PartialTranslation PartialTranslation::from_pairs(
    SpacePtr space, std::vector<std::pair<Point, Point>> pairs) {
  if (!space) throw ValidationError("translation needs a space");
  std::map<Point, Point> map;
  std::set<Point> targets;
  for (const auto& [src, dst] : pairs) {
    if (src >= space->size() || dst >= space->size())
      throw ValidationError("translation pair outside space");
    if (!map.emplace(src, dst).second)
      throw ValidationError("partial translation is not a function: source " +
                            space->label(src) + " repeats");
    if (!targets.insert(dst).second)
      throw ValidationError("partial translation is not injective: target " +
                            space->label(dst) + " repeats");
  }
  return PartialTranslation(std::move(space), std::move(map));
}

PartialTranslation PartialTranslation::identity(SpacePtr space, const PointSet& domain) {
  std::vector<std::pair<Point, Point>> pairs;
  for (Point x : domain) pairs.emplace_back(x, x);
  return from_pairs(std::move(space), std::move(pairs));
}

PointSet PartialTranslation::domain() const {
  PointSet out;
  for (const auto& [x, tx] : map_) out.push_back(x);
  return out;
}

PointSet PartialTranslation::range() const {
  PointSet out;
  for (const auto& [x, tx] : map_) out.push_back(tx);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Point, Point>> PartialTranslation::pairs() const {
  return {map_.begin(), map_.end()};
}

PartialTranslation compose(const PartialTranslation& t, const PartialTranslation& t_prime) {
  if (t.space()->size() != t_prime.space()->size())
    throw ValidationError("composing translations on different spaces");
  std::vector<std::pair<Point, Point>> pairs;
  for (const auto& [x, tpx] : t_prime.map()) {
    auto it = t.map().find(tpx);
    if (it != t.map().end()) pairs.emplace_back(x, it->second);
  }
  return PartialTranslation::from_pairs(t.space(), std::move(pairs));
}

PartialTranslation inverse(const PartialTranslation& t) {
  std::vector<std::pair<Point, Point>> pairs;
  for (const auto& [x, tx] : t.map()) pairs.emplace_back(tx, x);
  return PartialTranslation::from_pairs(t.space(), std::move(pairs));
}

SparseOperator to_operator(const PartialTranslation& t) {
  SparseOperator op(t.space());
  for (const auto& [y, ty] : t.map()) op.set(ty, y, 1);
  return op;
}

TijFamily tij_family(const SpacePtr& space, int radius) {
  if (radius < 0) throw ValidationError("R must be >= 0");
  auto partition = separated_partition(*space, 2 * radius + 1);
  const std::size_t n = partition.classes.size();
  std::vector<PartialTranslation> maps;
  maps.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::pair<Point, Point>> pairs;
      for (Point y : partition.classes[j]) {
        for (Point x : partition.classes[i]) {
          if (space->distance(x, y) <= radius) {
            pairs.emplace_back(y, x);
            break;  // unique: X_i is (2R+1)-separated
          }
        }
      }
      maps.push_back(PartialTranslation::from_pairs(space, std::move(pairs)));
    }
  }
  return TijFamily(std::move(partition), std::move(maps), radius);
}

}  // namespace coarsekit
