#include <doctest.h>

#include "coarsekit/error.hpp"
#include "coarsekit/space.hpp"
#include "support.hpp"

using namespace coarsekit;
using testing::Gen;

namespace {

// Free reduction of g^-1 h; its length is the word distance.
int reduced_length(std::span<const int> g, std::span<const int> h) {
  std::vector<int> w;
  for (auto it = g.rbegin(); it != g.rend(); ++it) w.push_back(-*it);
  for (int letter : h) {
    if (!w.empty() && w.back() == -letter) w.pop_back();
    else w.push_back(letter);
  }
  return static_cast<int>(w.size());
}

}  // namespace

TEST_CASE("line windows") {
  const auto s = make_window(family::Line{}, 10);
  CHECK(s.size() == 10);
  CHECK(s.distance(2, 9) == 7);
  CHECK(s.origin() == 5);
  CHECK(s.label(3) == "3");
  CHECK(s.interior(2) == PointSet{2, 3, 4, 5, 6, 7});
  CHECK(s.ball(0, 2) == PointSet{0, 1, 2});
  CHECK(s.diameter(s.all_points()) == 9);
  CHECK_FALSE(s.check_metric());
  CHECK_THROWS_AS(make_window(family::Line{}, 0), ValidationError);
}

TEST_CASE("lattice windows use the l1 metric") {
  const auto s = make_window(family::Lattice{2}, 4);
  REQUIRE(s.size() == 16);
  for (Point x = 0; x < s.size(); ++x)
    for (Point y = 0; y < s.size(); ++y) {
      auto a = s.coords(x), b = s.coords(y);
      CHECK(s.distance(x, y) == std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]));
    }
  CHECK(s.coords(s.origin())[0] == 2);
  CHECK(s.interior(1).size() == 4);
}

TEST_CASE("free group balls") {
  // |B_n| = 1 + sum_k 4 * 3^(k-1) for rank 2.
  int expected = 1, sphere = 4;
  for (int n = 1; n <= 5; ++n) {
    expected += sphere;
    sphere *= 3;
    CHECK(make_window(family::FreeGroup{2}, n).size() == static_cast<std::size_t>(expected));
  }
  const auto s = make_window(family::FreeGroup{2}, 3);
  for (Point x = 0; x < s.size(); ++x)
    for (Point y = 0; y < s.size(); ++y) CHECK(s.distance(x, y) == reduced_length(s.coords(x), s.coords(y)));
  CHECK_FALSE(s.check_metric());
  CHECK(make_window(family::FreeGroup{2}, 5).interior(1).size() == 161);
  CHECK(s.label(0) == "e");
  CHECK(make_window(family::FreeGroup{3}, 2).size() == 1 + 6 + 30);
}

TEST_CASE("tower windows: distance is the least level containing g^-1 h") {
  const TowerSpec t({2}, {3, 2});
  const auto s = make_window(family::Tower{t}, 4);
  REQUIRE(s.size() == t.order(4));
  for (Point x = 0; x < s.size(); ++x)
    for (Point y = 0; y < s.size(); ++y) {
      int n = 0;
      while (x / t.order(static_cast<std::size_t>(n)) != y / t.order(static_cast<std::size_t>(n))) ++n;
      CHECK(s.distance(x, y) == n);
    }
  CHECK_FALSE(s.check_metric());
  CHECK(s.interior(4).size() == s.size());
  CHECK(s.ball(0, 1).size() == 2);
}

TEST_CASE("gap unions") {
  const auto s = gap_union({2, 2, 3}, {1, 2});
  REQUIRE(s.blocks().size() == 3);
  CHECK(*s.distance(s.blocks()[1], s.blocks()[0]) == 1);
  PointSet earlier = s.blocks()[0];
  earlier.insert(earlier.end(), s.blocks()[1].begin(), s.blocks()[1].end());
  CHECK(*s.distance(s.blocks()[2], earlier) == 2);
  CHECK_THROWS_AS(gap_union({1, 1, 1}, {2, 2}), ValidationError);
  CHECK_THROWS_AS(gap_union({1, 1}, {}), ValidationError);
  CHECK_THROWS_AS(gap_union({0}, {}), ValidationError);
}

TEST_CASE("explicit tables are validated") {
  family::Explicit ok{{"a", "b", "c"}, {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}};
  CHECK(make_window(ok, 3).distance(0, 2) == 2);
  family::Explicit asym{{"a", "b"}, {{0, 1}, {2, 0}}};
  CHECK_THROWS_AS(make_window(asym, 2), ValidationError);
  family::Explicit triangle{{"a", "b", "c"}, {{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}};
  CHECK_THROWS_AS(make_window(triangle, 3), ValidationError);
  family::Explicit zero{{"a", "b"}, {{0, 0}, {0, 0}}};
  CHECK_THROWS_AS(make_window(zero, 2), ValidationError);
  family::Explicit dup{{"a", "a"}, {{0, 1}, {1, 0}}};
  CHECK_THROWS_AS(make_window(dup, 2), ValidationError);
}

TEST_CASE("random shortest-path metrics pass the axioms") {
  Gen gen(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = gen.uniform(2, 9);
    std::vector<std::vector<int>> d(n, std::vector<int>(n, 1000));
    for (int i = 0; i < n; ++i) d[i][i] = 0;
    for (int i = 1; i < n; ++i) {
      const int j = gen.uniform(0, i - 1);
      d[i][j] = d[j][i] = gen.uniform(1, 5);
    }
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    family::Explicit e;
    for (int i = 0; i < n; ++i) e.labels.push_back("p" + std::to_string(i));
    e.table = d;
    const auto s = make_window(e, n);
    CHECK_FALSE(s.check_metric());
  }
}

TEST_CASE("r-components and separated partitions") {
  std::vector<int> gaps, sizes(11, 3);
  for (int g = 1; g <= 10; ++g) gaps.push_back(g);
  const auto s = gap_union(sizes, gaps);
  const auto comps = r_components(s, 3);
  CHECK_FALSE(check_partition(s, comps.classes));
  // Blocks 0..3 are chained by gaps 1, 2, 3; every later block is alone.
  REQUIRE(comps.classes.size() == 8);
  CHECK(comps.classes[0].size() == 12);
  CHECK(r_components(s, 0).classes.size() == s.size());

  Gen gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto w = make_window(family::FreeGroup{2}, gen.uniform(1, 3));
    const int sep = gen.uniform(1, 4);
    const auto part = separated_partition(w, sep);
    CHECK_FALSE(check_partition(w, part.classes));
    for (const auto& cls : part.classes)
      for (auto x : cls)
        for (auto y : cls)
          if (x != y) CHECK(w.distance(x, y) >= sep);
  }
}

TEST_CASE("growth and asymptotic dimension witnesses") {
  const auto line = make_window(family::Line{}, 50);
  const std::vector<int> radii{0, 1, 2, 5};
  CHECK(growth_profile(line, radii) == std::vector<std::size_t>{1, 3, 5, 11});

  std::vector<int> windows{5, 10, 20};
  const auto grows = asdim_zero_witness(family::Line{}, 1, windows);
  CHECK(grows == std::vector<std::size_t>{5, 10, 20});
  family::Gaps g{std::vector<int>(20, 2), {}};
  for (int i = 1; i < 20; ++i) g.gaps.push_back(i);
  std::vector<int> blocks{5, 10, 20};
  const auto bounded = asdim_zero_witness(g, 1, blocks);
  CHECK(bounded == std::vector<std::size_t>{4, 4, 4});
}

TEST_CASE("asdim-one decompositions verify") {
  for (int r = 1; r <= 4; ++r) {
    const auto line = make_window(family::Line{}, 37);
    const auto uv = asdim_one_decomposition(line, r);
    CHECK_FALSE(check_uv(line, uv));
    CHECK(uv.bound == 2 * r - 1);
    const auto tree = make_window(family::FreeGroup{2}, 5);
    CHECK_FALSE(check_uv(tree, asdim_one_decomposition(tree, r)));
  }
  CHECK_THROWS_AS(asdim_one_decomposition(make_window(family::Tower{TowerSpec({}, {2})}, 3), 1),
                  NotImplementedError);
  CHECK_THROWS_AS(asdim_one_decomposition(make_window(family::Line{}, 5), 0), ValidationError);
}

TEST_CASE("tower spec arithmetic") {
  const TowerSpec t({6}, {2, 3});
  CHECK(t.order(0) == 1);
  CHECK(t.order(3) == 36);
  CHECK(t.increment(4) == 3);
  CHECK_FALSE(t.is_finite());
  CHECK(t.shifted(2) == TowerSpec({}, {3, 2}));
  CHECK(TowerSpec({4}, {1}).finite_order() == 4);
  CHECK_THROWS_AS(TowerSpec({}, {}), ValidationError);
  CHECK_THROWS_AS(TowerSpec({0}, {1}), ValidationError);
  CHECK_THROWS_AS(TowerSpec({}, {2}).order(80), ValidationError);
}
