#include "coarsekit/space.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "coarsekit/error.hpp"

namespace coarsekit {

namespace {

constexpr std::size_t kMaxWindowPoints = 1u << 16;

std::string letter_name(int letter) {
  const int g = std::abs(letter) - 1;
  const char base = letter > 0 ? 'a' : 'A';
  if (g < 26) return std::string(1, static_cast<char>(base + g));
  return (letter > 0 ? "x" : "X") + std::to_string(g);
}

std::string join_coords(const std::vector<int>& c) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ')';
  return os.str();
}

std::size_t lcp(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return i;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Coordinates of the full gap family; block i starts gaps[i-1] after the
// last point of block i-1, so its distance to the earlier union is exactly
// that gap.
std::vector<std::vector<int>> gap_block_coords(const family::Gaps& g) {
  std::vector<std::vector<int>> blocks;
  int next = 0;
  for (std::size_t i = 0; i < g.sizes.size(); ++i) {
    if (i > 0) next = blocks.back().back() + g.gaps[i - 1];
    std::vector<int> b(static_cast<std::size_t>(g.sizes[i]));
    std::iota(b.begin(), b.end(), next);
    blocks.push_back(std::move(b));
  }
  return blocks;
}

void validate_gaps(const family::Gaps& g) {
  if (g.sizes.empty()) throw ValidationError("gap union needs at least one block");
  for (int s : g.sizes)
    if (s < 1) throw ValidationError("gap union block sizes must be >= 1");
  if (g.gaps.size() + 1 < g.sizes.size())
    throw ValidationError("gap union needs one gap per block after the first");
  for (std::size_t i = 0; i < g.gaps.size(); ++i) {
    if (g.gaps[i] < 1) throw ValidationError("gap union gaps must be >= 1");
    if (i > 0 && g.gaps[i] <= g.gaps[i - 1])
      throw ValidationError("gap rule must be strictly increasing");
  }
}

}  // namespace

std::optional<Point> Space::find(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<Point>(it - labels_.begin());
}

int Space::distance(Point x, Point y) const {
  if (x >= size() || y >= size())
    throw ValidationError("point index outside space");
  if (x == y) return 0;
  switch (metric_) {
    case Metric::Line:
      return std::abs(coords_[x][0] - coords_[y][0]);
    case Metric::L1: {
      int d = 0;
      for (std::size_t i = 0; i < coords_[x].size(); ++i)
        d += std::abs(coords_[x][i] - coords_[y][i]);
      return d;
    }
    case Metric::Word: {
      const auto& a = coords_[x];
      const auto& b = coords_[y];
      return static_cast<int>(a.size() + b.size() - 2 * lcp(a, b));
    }
    case Metric::Tower: {
      const auto& a = coords_[x];
      const auto& b = coords_[y];
      for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return static_cast<int>(i + 1);
      return 0;
    }
    case Metric::Table: {
      const auto hi = std::max(x, y);
      const auto lo = std::min(x, y);
      return table_[hi * (hi + 1) / 2 + lo];
    }
  }
  return 0;
}

std::optional<int> Space::distance(Point x, const PointSet& set) const {
  std::optional<int> best;
  for (Point a : set) {
    const int d = distance(x, a);
    if (!best || d < *best) best = d;
    if (d == 0) break;
  }
  return best;
}

std::optional<int> Space::distance(const PointSet& a, const PointSet& b) const {
  std::optional<int> best;
  for (Point x : a) {
    auto d = distance(x, b);
    if (d && (!best || *d < *best)) best = d;
  }
  return best;
}

int Space::diameter(const PointSet& set) const {
  int d = 0;
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j)
      d = std::max(d, distance(set[i], set[j]));
  return d;
}

PointSet Space::ball(Point x, int radius) const {
  PointSet out;
  for (Point y = 0; y < size(); ++y)
    if (distance(x, y) <= radius) out.push_back(y);
  return out;
}

PointSet Space::all_points() const {
  PointSet out(size());
  std::iota(out.begin(), out.end(), Point{0});
  return out;
}

PointSet Space::interior(int collar) const {
  if (collar < 0) throw ValidationError("collar must be >= 0");
  PointSet out;
  const int n = tag_.size;
  for (Point x = 0; x < size(); ++x) {
    bool inside = true;
    switch (metric_) {
      case Metric::Line:
        if (next_block_start_ || !blocks_.empty()) {
          inside = !next_block_start_ ||
                   *next_block_start_ - coords_[x][0] > collar;
        } else {
          inside = coords_[x][0] - collar >= 0 && coords_[x][0] + collar <= n - 1;
        }
        break;
      case Metric::L1:
        for (int c : coords_[x])
          inside = inside && c - collar >= 0 && c + collar <= n - 1;
        break;
      case Metric::Word:
        inside = static_cast<int>(coords_[x].size()) + collar <= n;
        break;
      case Metric::Tower:
        inside = collar <= n;
        break;
      case Metric::Table:
        break;
    }
    if (inside) out.push_back(x);
  }
  return out;
}

std::optional<int> Space::coordinate(Point x) const {
  if (metric_ != Metric::Line) return std::nullopt;
  return coords_.at(x)[0];
}

std::optional<int> Space::word_length(Point x) const {
  if (metric_ != Metric::Word) return std::nullopt;
  return static_cast<int>(coords_.at(x).size());
}

std::optional<std::string> Space::check_metric() const {
  const std::size_t n = size();
  for (Point x = 0; x < n; ++x) {
    if (distance(x, x) != 0) return "d(x,x) != 0 at " + label(x);
    for (Point y = 0; y < n; ++y) {
      const int dxy = distance(x, y);
      if (dxy != distance(y, x))
        return "asymmetric at (" + label(x) + "," + label(y) + ")";
      if (x != y && dxy <= 0)
        return "nonpositive distance at (" + label(x) + "," + label(y) + ")";
      for (Point z = 0; z < n; ++z)
        if (dxy > distance(x, z) + distance(z, y))
          return "triangle inequality fails at (" + label(x) + "," +
                 label(y) + "," + label(z) + ")";
    }
  }
  return std::nullopt;
}

Space make_window(const FamilySpec& spec, int size) {
  if (size < 1) throw ValidationError("window size must be >= 1");
  Space s;
  s.tag_ = FamilyTag{spec, size};

  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, family::Line>) {
          s.metric_ = Space::Metric::Line;
          for (int i = 0; i < size; ++i) {
            s.coords_.push_back({i});
            s.labels_.push_back(std::to_string(i));
          }
          s.origin_ = static_cast<Point>(size / 2);
        } else if constexpr (std::is_same_v<F, family::Lattice>) {
          if (f.dim < 1) throw ValidationError("lattice dimension must be >= 1");
          double total = 1;
          for (int i = 0; i < f.dim; ++i) total *= size;
          if (total > kMaxWindowPoints)
            throw ValidationError("lattice window too large");
          s.metric_ = Space::Metric::L1;
          std::vector<int> c(static_cast<std::size_t>(f.dim), 0);
          while (true) {
            s.coords_.push_back(c);
            s.labels_.push_back(join_coords(c));
            int i = f.dim - 1;
            while (i >= 0 && ++c[static_cast<std::size_t>(i)] == size)
              c[static_cast<std::size_t>(i--)] = 0;
            if (i < 0) break;
          }
          std::vector<int> mid(static_cast<std::size_t>(f.dim), size / 2);
          s.origin_ = static_cast<Point>(
              std::find(s.coords_.begin(), s.coords_.end(), mid) -
              s.coords_.begin());
        } else if constexpr (std::is_same_v<F, family::FreeGroup>) {
          if (f.rank < 1) throw ValidationError("free group rank must be >= 1");
          s.metric_ = Space::Metric::Word;
          std::vector<std::vector<int>> layer{{}};
          s.coords_.push_back({});
          for (int len = 1; len <= size; ++len) {
            std::vector<std::vector<int>> next;
            for (const auto& w : layer) {
              for (int g = 1; g <= f.rank; ++g) {
                for (int letter : {g, -g}) {
                  if (!w.empty() && w.back() == -letter) continue;
                  auto v = w;
                  v.push_back(letter);
                  next.push_back(std::move(v));
                }
              }
            }
            if (s.coords_.size() + next.size() > kMaxWindowPoints)
              throw ValidationError("free group ball too large");
            s.coords_.insert(s.coords_.end(), next.begin(), next.end());
            layer = std::move(next);
          }
          for (const auto& w : s.coords_) {
            std::string name;
            for (int letter : w) name += letter_name(letter);
            s.labels_.push_back(w.empty() ? "e" : name);
          }
          s.origin_ = 0;
        } else if constexpr (std::is_same_v<F, family::Tower>) {
          s.metric_ = Space::Metric::Tower;
          const std::uint64_t k = f.tower.order(static_cast<std::size_t>(size));
          if (k > kMaxWindowPoints) throw ValidationError("tower window too large");
          for (std::uint64_t idx = 0; idx < k; ++idx) {
            std::vector<int> digits;
            std::uint64_t rest = idx;
            for (int i = 0; i < size; ++i) {
              const auto r = static_cast<std::uint64_t>(
                  f.tower.increment(static_cast<std::size_t>(i)));
              digits.push_back(static_cast<int>(rest % r));
              rest /= r;
            }
            s.labels_.push_back(join_coords(digits));
            s.coords_.push_back(std::move(digits));
          }
          s.origin_ = 0;
        } else if constexpr (std::is_same_v<F, family::Gaps>) {
          validate_gaps(f);
          if (static_cast<std::size_t>(size) > f.sizes.size())
            throw ValidationError("gap window asks for more blocks than defined");
          s.metric_ = Space::Metric::Line;
          const auto blocks = gap_block_coords(f);
          for (int b = 0; b < size; ++b) {
            PointSet members;
            for (int c : blocks[static_cast<std::size_t>(b)]) {
              members.push_back(s.coords_.size());
              s.coords_.push_back({c});
              s.labels_.push_back(std::to_string(c));
            }
            s.blocks_.push_back(std::move(members));
          }
          if (static_cast<std::size_t>(size) < blocks.size())
            s.next_block_start_ = blocks[static_cast<std::size_t>(size)].front();
          s.origin_ = 0;
        } else {
          const std::size_t n = f.labels.size();
          if (n == 0) throw ValidationError("explicit metric table is empty");
          if (static_cast<std::size_t>(size) != n)
            throw ValidationError("explicit window size must equal table size");
          if (f.table.size() != n)
            throw ValidationError("explicit metric table has wrong row count");
          s.metric_ = Space::Metric::Table;
          s.labels_ = f.labels;
          s.table_.reserve(n * (n + 1) / 2);
          for (std::size_t i = 0; i < n; ++i) {
            if (f.table[i].size() != n)
              throw ValidationError("explicit metric row " + std::to_string(i) +
                                    " has wrong length");
            for (std::size_t j = 0; j <= i; ++j) s.table_.push_back(f.table[i][j]);
          }
          // The lower triangle is stored; compare against the upper one too.
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
              if (f.table[i][j] != f.table[j][i])
                throw ValidationError("metric table is not symmetric at (" +
                                      std::to_string(i) + "," +
                                      std::to_string(j) + ")");
          s.coords_.assign(n, {});
          if (auto bad = s.check_metric()) throw ValidationError("metric table: " + *bad);
          std::vector<std::string> sorted = s.labels_;
          std::sort(sorted.begin(), sorted.end());
          if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ValidationError("explicit point labels must be unique");
        }
      },
      spec);
  return s;
}

Space gap_union(std::vector<int> sizes, std::vector<int> gaps) {
  const int n = static_cast<int>(sizes.size());
  family::Gaps g{std::move(sizes), std::move(gaps)};
  validate_gaps(g);
  return make_window(g, n);
}

PointSet make_point_set(const Space& space, std::vector<Point> points) {
  for (Point p : points)
    if (p >= space.size()) throw ValidationError("point index outside space");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

Partition r_components(const Space& space, int radius) {
  if (radius < 0) throw ValidationError("R must be >= 0");
  const std::size_t n = space.size();
  UnionFind uf(n);
  if (radius > 0)
    for (Point x = 0; x < n; ++x)
      for (Point y = x + 1; y < n; ++y)
        if (space.distance(x, y) <= radius) uf.unite(x, y);
  std::map<std::size_t, PointSet> by_root;
  for (Point x = 0; x < n; ++x) by_root[uf.find(x)].push_back(x);
  Partition p{radius, {}};
  // Roots are the minimal members, so map order is order of first point.
  for (auto& [root, members] : by_root) p.classes.push_back(std::move(members));
  return p;
}

SeparatedPartition separated_partition(const Space& space, int separation) {
  if (separation < 1) throw ValidationError("separation S must be >= 1");
  SeparatedPartition out{separation, {}};
  for (Point x = 0; x < space.size(); ++x) {
    bool placed = false;
    for (auto& cls : out.classes) {
      const bool fits = std::all_of(cls.begin(), cls.end(), [&](Point y) {
        return space.distance(x, y) >= separation;
      });
      if (fits) {
        cls.push_back(x);
        placed = true;
        break;
      }
    }
    if (!placed) out.classes.push_back({x});
  }
  return out;
}

std::vector<std::size_t> growth_profile(const Space& space,
                                        std::span<const int> radii) {
  std::vector<std::size_t> out;
  for (int r : radii) {
    if (r < 0) throw ValidationError("radii must be nonnegative");
    std::size_t best = 0;
    for (Point x = 0; x < space.size(); ++x) {
      std::size_t count = 0;
      for (Point y = 0; y < space.size(); ++y)
        if (space.distance(x, y) <= r) ++count;
      best = std::max(best, count);
    }
    out.push_back(best);
  }
  return out;
}

std::vector<std::size_t> asdim_zero_witness(const FamilySpec& family, int r,
                                            std::span<const int> window_sizes) {
  std::vector<std::size_t> out;
  for (int size : window_sizes) {
    const Space s = make_window(family, size);
    std::size_t best = 0;
    for (const auto& cls : r_components(s, r).classes)
      best = std::max(best, cls.size());
    out.push_back(best);
  }
  return out;
}

namespace {

UVDecomposition line_decomposition(const Space& space, int r) {
  UVDecomposition uv;
  uv.r = r;
  uv.bound = 2 * r - 1;
  const int len = 2 * r;
  std::map<int, PointSet> pieces;
  for (Point x = 0; x < space.size(); ++x)
    pieces[*space.coordinate(x) / len].push_back(x);
  for (auto& [idx, piece] : pieces)
    (idx % 2 == 0 ? uv.u_pieces : uv.v_pieces).push_back(std::move(piece));
  return uv;
}

// Annulus j holds words with 2rj <= |w| < 2r(j+1). Inside an annulus, words
// are grouped by their prefix of length max(0, 2rj - floor(r/2)); two such
// groups are at distance >= 2(floor(r/2) + 1) > r.
UVDecomposition tree_decomposition(const Space& space, int r) {
  UVDecomposition uv;
  uv.r = r;
  const int width = 2 * r;
  const int back = r / 2;
  uv.bound = 2 * (width - 1 + back);
  std::map<std::pair<int, std::vector<int>>, PointSet> pieces;
  for (Point x = 0; x < space.size(); ++x) {
    const auto word = space.coords(x);
    const int len = static_cast<int>(word.size());
    const int annulus = len / width;
    const int cut = std::max(0, annulus * width - back);
    std::vector<int> prefix(word.begin(), word.begin() + cut);
    pieces[{annulus, std::move(prefix)}].push_back(x);
  }
  for (auto& [key, piece] : pieces)
    (key.first % 2 == 0 ? uv.u_pieces : uv.v_pieces).push_back(std::move(piece));
  return uv;
}

}  // namespace

UVDecomposition asdim_one_decomposition(const Space& space, int r) {
  if (r < 1) throw ValidationError("r must be >= 1");
  UVDecomposition uv;
  const auto& fam = space.tag().family;
  if (std::holds_alternative<family::Line>(fam)) {
    uv = line_decomposition(space, r);
  } else if (std::holds_alternative<family::FreeGroup>(fam)) {
    uv = tree_decomposition(space, r);
  } else {
    throw NotImplementedError(
        "asdim-one decomposition is built only for Line and FreeGroup windows");
  }
  if (auto bad = check_uv(space, uv))
    throw InvariantViolation("asdim-one decomposition failed verification: " + *bad);
  return uv;
}

UVDecomposition asdim_one_decomposition(const FamilySpec& family, int r,
                                        int window) {
  return asdim_one_decomposition(make_window(family, window), r);
}

std::optional<std::string> check_partition(const Space& space,
                                           const std::vector<PointSet>& classes) {
  std::vector<int> seen(space.size(), 0);
  for (const auto& cls : classes) {
    if (cls.empty()) return "empty class";
    for (Point x : cls) {
      if (x >= space.size()) return "point outside space";
      if (seen[x]++) return "point " + space.label(x) + " in two classes";
    }
  }
  for (Point x = 0; x < space.size(); ++x)
    if (!seen[x]) return "point " + space.label(x) + " not covered";
  return std::nullopt;
}

std::optional<std::string> check_uv(const Space& space,
                                    const UVDecomposition& uv) {
  std::vector<PointSet> all = uv.u_pieces;
  all.insert(all.end(), uv.v_pieces.begin(), uv.v_pieces.end());
  if (auto bad = check_partition(space, all)) return bad;
  for (const auto& piece : all)
    if (space.diameter(piece) > uv.bound)
      return "piece diameter " + std::to_string(space.diameter(piece)) +
             " exceeds bound " + std::to_string(uv.bound);
  for (const auto* family : {&uv.u_pieces, &uv.v_pieces})
    for (std::size_t i = 0; i < family->size(); ++i)
      for (std::size_t j = i + 1; j < family->size(); ++j)
        if (*space.distance((*family)[i], (*family)[j]) <= uv.r)
          return "two pieces of one colour at distance <= r";
  return std::nullopt;
}

}  // namespace coarsekit
