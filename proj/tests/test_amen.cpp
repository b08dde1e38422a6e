#include <doctest.h>

#include "coarsekit/amen.hpp"
#include "coarsekit/error.hpp"
#include "support.hpp"

using namespace coarsekit;
using testing::Gen;

namespace {

PointSet interval(Point lo, Point hi) {
  PointSet out;
  for (Point x = lo; x <= hi; ++x) out.push_back(x);
  return out;
}

SparseOperator shift(const SpacePtr& s, int by) {
  SparseOperator a(s);
  for (Point y = 0; y < s->size(); ++y) {
    const long x = static_cast<long>(y) + by;
    if (x >= 0 && x < static_cast<long>(s->size())) a.set(static_cast<Point>(x), y, 1);
  }
  return a;
}

std::vector<std::vector<std::size_t>> doubled_graph(const Space& s, const PointSet& interior, int r) {
  std::vector<std::vector<std::size_t>> adj;
  for (auto x : interior)
    for (int copy = 0; copy < 2; ++copy) {
      std::vector<std::size_t> row;
      for (Point y = 0; y < s.size(); ++y)
        if (s.distance(x, y) <= r) row.push_back(y);
      adj.push_back(row);
    }
  return adj;
}

}  // namespace

TEST_CASE("boundary examples") {
  const auto z = make_window(family::Line{}, 100);
  CHECK(boundary(z, interval(10, 19), 1) == PointSet{9, 10, 19, 20});
  CHECK(boundary(z, z.all_points(), 3).empty());
  CHECK(boundary(z, interval(10, 19), 0).empty());
  CHECK(folner_ratio(z, interval(10, 19), 1) == Rational(2, 5));
  CHECK(folner_ratio(z, z.all_points(), 1) == 0);
  CHECK_THROWS_AS(folner_ratio(z, {}, 1), ValidationError);
}

TEST_CASE("free group ball inside a larger ball") {
  const auto f = make_window(family::FreeGroup{2}, 5);
  const auto ball = f.ball(f.origin(), 3);
  CHECK(ball.size() == 53);
  const auto b = boundary(f, ball, 1);
  CHECK(b == testing::brute_boundary(f, ball, 1));
  // Spheres of radius 3 and 4: 36 + 108 points.
  CHECK(b.size() == 144);
  CHECK(folner_ratio(f, ball, 1) == Rational(144, 53));
}

TEST_CASE("boundary agrees with brute force on random sets") {
  Gen gen(31);
  std::vector<Space> spaces;
  spaces.push_back(make_window(family::Line{}, 200));
  spaces.push_back(make_window(family::FreeGroup{2}, 3));
  spaces.push_back(make_window(family::Tower{TowerSpec({}, {2})}, 5));
  spaces.push_back(make_window(family::Lattice{2}, 10));
  spaces.push_back(gap_union({3, 4, 5, 6}, {1, 3, 5}));
  for (const auto& s : spaces)
    for (int trial = 0; trial < 8; ++trial) {
      const auto a = gen.subset(s, gen.uniform(1, 9) / 10.0);
      const int r = gen.uniform(0, 3);
      CHECK(boundary(s, a, r) == testing::brute_boundary(s, a, r));
    }
}

TEST_CASE("interval ratios on the line shrink like 4/n") {
  for (int n : {10, 100, 1000}) {
    const auto z = make_window(family::Line{}, n + 4);
    const auto ratio = folner_ratio(z, interval(2, static_cast<Point>(n + 1)), 1);
    CHECK(ratio <= Rational(4, n));
  }
}

TEST_CASE("Folner search") {
  const auto line = folner_search(family::Line{}, 1, Rational(1, 2));
  REQUIRE(line.witness);
  CHECK(line.witness->ratio <= Rational(1, 2));
  CHECK(line.witness->set.size() == 9);

  FolnerSearchOptions balls;
  balls.max_radius = 6;
  const auto tree = folner_search(family::FreeGroup{2}, 1, Rational(1, 10), balls);
  CHECK_FALSE(tree.witness);
  CHECK(tree.best.ratio > 1);
  CHECK(tree.candidates == 7);
  CHECK(tree.note == "window-scale evidence only");

  FolnerSearchOptions exhaustive{FolnerStrategy::Exhaustive, 0, 6};
  // Connected sets of Z through the origin with at most m points: m(m+1)/2.
  const auto z_all = folner_search(family::Line{}, 1, Rational(1, 100), exhaustive);
  CHECK_FALSE(z_all.witness);
  CHECK(z_all.candidates == 21);
  CHECK(z_all.best.ratio == Rational(2, 3));
  // Rooted subtrees of the 4-regular tree with at most 3 vertices: 1 + 4 + 18.
  exhaustive.max_size = 3;
  CHECK(folner_search(family::FreeGroup{2}, 1, Rational(1, 100), exhaustive).candidates == 23);
  exhaustive.max_size = 10;
  const auto z_hit = folner_search(family::Line{}, 1, Rational(1, 2), exhaustive);
  REQUIRE(z_hit.witness);
  CHECK(z_hit.witness->set.size() == 8);

  const auto loose = folner_search(family::Line{}, 1, Rational(3));
  REQUIRE(loose.witness);
  CHECK(loose.witness->set.size() == 1);
  CHECK_THROWS_AS(folner_search(family::Line{}, 1, Rational(0)), ValidationError);
}

TEST_CASE("paradox certificate on the free group ball") {
  const auto f = make_window(family::FreeGroup{2}, 5);
  const auto result = paradox_certificate(f, 1, 1);
  REQUIRE(std::holds_alternative<ParadoxCertificate>(result));
  const auto& cert = std::get<ParadoxCertificate>(result);
  CHECK(cert.interior.size() == 161);
  CHECK_FALSE(verify_certificate(f, cert));
  CHECK(testing::kuhn_matching(f.size(), doubled_graph(f, cert.interior, 1)) == 322);

  auto bad = cert;
  bad.minus_pairs[0].second = bad.plus_pairs[0].second;
  CHECK(verify_certificate(f, bad));
  bad = cert;
  bad.plus_pairs[5].second = f.size() - 1;
  CHECK(verify_certificate(f, bad));
  bad = cert;
  bad.plus_pairs.pop_back();
  CHECK(verify_certificate(f, bad));
}

TEST_CASE("Hall violation on a line window") {
  const auto z = make_window(family::Line{}, 20);
  const auto result = paradox_certificate(z, 1, 1);
  REQUIRE(std::holds_alternative<HallViolation>(result));
  const auto& v = std::get<HallViolation>(result);
  CHECK_FALSE(verify_hall_violation(z, v));
  CHECK(v.neighbourhood.size() < v.set.size());
  CHECK(testing::kuhn_matching(z.size(), doubled_graph(z, z.interior(1), 1)) < 36);

  auto bad = v;
  bad.neighbourhood.pop_back();
  CHECK(verify_hall_violation(z, bad));
  CHECK_THROWS_AS(paradox_certificate(z, 2, 1), ValidationError);

  const auto point = make_window(family::Line{}, 1);
  const auto trivial = paradox_certificate(point, 1, 1);
  REQUIRE(std::holds_alternative<ParadoxCertificate>(trivial));
  CHECK(std::get<ParadoxCertificate>(trivial).interior.empty());
}

TEST_CASE("matching verdicts agree with Kuhn's algorithm") {
  const std::vector<Space> spaces{make_window(family::FreeGroup{2}, 3), make_window(family::FreeGroup{3}, 2),
                                  make_window(family::Line{}, 12), make_window(family::Lattice{2}, 6),
                                  make_window(family::Tower{TowerSpec({}, {3})}, 3)};
  for (const auto& s : spaces)
    for (int r = 1; r <= 2; ++r) {
      const auto result = paradox_certificate(s, r, r);
      const auto interior = s.interior(r);
      const bool full = testing::kuhn_matching(s.size(), doubled_graph(s, interior, r)) == 2 * interior.size();
      CHECK(std::holds_alternative<ParadoxCertificate>(result) == full);
      if (const auto* c = std::get_if<ParadoxCertificate>(&result)) CHECK_FALSE(verify_certificate(s, *c));
      if (const auto* v = std::get_if<HallViolation>(&result)) CHECK_FALSE(verify_hall_violation(s, *v));
    }
}

TEST_CASE("traces") {
  const auto z = make_shared_window(family::Line{}, 100);
  const auto id = SparseOperator::identity(z);
  CHECK(approx_trace(id, interval(3, 50)) == 1);
  CHECK_THROWS_AS(approx_trace(id, {}), ValidationError);
  const auto d1 = SparseOperator::diagonal(z, std::vector<Rational>(100, Rational(3, 7)));
  auto d2 = SparseOperator::indicator(z, interval(0, 40));
  CHECK(trace_defect(d1, d2, interval(10, 89)) == 0);
  CHECK(trace_defect(shift(z, 1), shift(z, -1), interval(10, 89)) <= Rational(2, 80));
  CHECK(trace_defect(shift(z, 1), shift(z, -1), interval(0, 0)) == 1);

  const auto s = make_shared_window(family::Line{}, 7);
  CHECK(normalized_trace(SparseOperator::identity(s)) == 1);
  CHECK(normalized_trace(SparseOperator::matrix_unit(s, 1, 3)) == 0);
  CHECK(normalized_trace(SparseOperator::matrix_unit(s, 4, 4)) == Rational(1, 7));
  Gen gen(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = gen.op(s, 0.5), b = gen.op(s, 0.5);
    CHECK(normalized_trace(a * b) == normalized_trace(b * a));
  }
}

TEST_CASE("trace defects along growing intervals obey the propagation bound") {
  Gen gen(17);
  for (int trial = 0; trial < 10; ++trial) {
    const int prop = gen.uniform(1, 3);
    const auto z = make_shared_window(family::Line{}, 120);
    const auto a = gen.op(z, 0.7, prop), b = gen.op(z, 0.7, prop);
    const Rational m = std::max(a.max_abs_entry(), b.max_abs_entry());
    const Rational c = 2 * prop * (2 * prop + 1) * m * m;
    for (Point half = 5; half <= 50; half += 5) {
      const auto f = interval(60 - half, 59 + half);
      CHECK(trace_defect(a, b, f) <= c / static_cast<long>(f.size()));
    }
  }
}
