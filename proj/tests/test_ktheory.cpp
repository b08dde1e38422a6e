#include <doctest.h>

#include <numeric>

#include "coarsekit/error.hpp"
#include "coarsekit/ktheory.hpp"
#include "support.hpp"

using namespace coarsekit;
using testing::Gen;
using R = Verdict::Result;

namespace {

TowerSpec cyc(std::vector<std::int64_t> c, std::vector<std::int64_t> p = {}) { return {std::move(p), std::move(c)}; }

K0Class seq(std::vector<std::int64_t> pre, std::vector<std::int64_t> period) { return {std::move(pre), std::move(period)}; }

// Least level n <= last with k_n <= horizon / 8 whose explicit k_n-block sums
// over the first `horizon` entries all pass.
std::optional<std::size_t> explicit_level(const K0Class& x, const TowerSpec& t, bool positivity,
                                          std::size_t horizon) {
  const auto v = testing::expand(x, horizon);
  for (std::size_t n = 0; t.order(n) * 8 <= horizon; ++n) {
    const auto sums = testing::explicit_block_sums(v, t.order(n));
    if (std::all_of(sums.begin(), sums.end(), [&](auto s) { return positivity ? s >= 0 : s == 0; }))
      return n;
    if (t.is_finite() && n > t.prefix().size()) break;
  }
  return std::nullopt;
}

const std::vector<TowerSpec>& sample_towers() {
  static const std::vector<TowerSpec> towers{cyc({2}), cyc({3}), cyc({2, 3}), cyc({4}),
                                             cyc({2}, {3}), cyc({1}, {2, 2}), cyc({5})};
  return towers;
}

}  // namespace

TEST_CASE("supernatural numbers") {
  const auto two = supernatural(cyc({2}));
  CHECK(to_string(two) == "2^omega");
  CHECK(to_string(supernatural(cyc({1}, {6}))) == "2 * 3");
  CHECK(to_string(supernatural(cyc({2, 3}))) == "2^omega * 3^omega");
  CHECK(to_string(supernatural(cyc({1}))) == "1");
  CHECK(to_string(supernatural(cyc({3}, {4, 2}))) == "2^3 * 3^omega");
  CHECK(sn_divides(2, 1000, two));
  CHECK_FALSE(sn_divides(3, 1, two));
  CHECK(sn_divides(2, 2, supernatural(cyc({1}, {12}))));
  CHECK_FALSE(sn_divides(2, 3, supernatural(cyc({1}, {12}))));
  // Inserting trivial increments does not change anything.
  CHECK(sn_equal(two, supernatural(cyc({2, 1}, {1, 1}))));
  CHECK(sn_equal(supernatural(cyc({4})), two));
  CHECK_FALSE(sn_equal(supernatural(cyc({6})), two));
}

TEST_CASE("coarse classes and tower comparisons") {
  CHECK(coarse_class(cyc({1}, {4})).finite);
  CHECK(coarse_class(cyc({1}, {4})).order == 4);
  CHECK_FALSE(coarse_class(cyc({2})).finite);
  CHECK(coarse_class(cyc({1})).order == 1);

  const auto all = compare_towers(cyc({2}), cyc({4}));
  CHECK((all.bijectively_coarsely_equivalent && all.coarsely_equivalent && all.ordered_k0_unit_iso && all.k0_iso));
  const auto mixed = compare_towers(cyc({2}), cyc({6}));
  CHECK_FALSE(mixed.bijectively_coarsely_equivalent);
  CHECK_FALSE(mixed.ordered_k0_unit_iso);
  CHECK(mixed.coarsely_equivalent);
  CHECK(mixed.k0_iso);
  const auto none = compare_towers(cyc({1}, {4}), cyc({2}));
  CHECK_FALSE((none.bijectively_coarsely_equivalent || none.coarsely_equivalent || none.ordered_k0_unit_iso ||
               none.k0_iso));
  const auto finite = compare_towers(cyc({1}, {4}), cyc({1}, {2, 3}));
  CHECK(finite.coarsely_equivalent);
  CHECK(finite.k0_iso);
  CHECK_FALSE(finite.ordered_k0_unit_iso);
  CHECK(compare_towers(cyc({1}, {2, 2}), cyc({1}, {4})).ordered_k0_unit_iso);

  const auto& ts = sample_towers();
  for (const auto& a : ts)
    for (const auto& b : ts) {
      const auto ab = compare_towers(a, b), ba = compare_towers(b, a);
      CHECK(ab.bijectively_coarsely_equivalent == ba.bijectively_coarsely_equivalent);
      CHECK(ab.coarsely_equivalent == ba.coarsely_equivalent);
      CHECK(ab.ordered_k0_unit_iso == ba.ordered_k0_unit_iso);
      CHECK(ab.k0_iso == ba.k0_iso);
      CHECK(ab.bijectively_coarsely_equivalent == ab.ordered_k0_unit_iso);
      if (ab.bijectively_coarsely_equivalent) CHECK(ab.coarsely_equivalent);
    }
}

TEST_CASE("class arithmetic") {
  CHECK(canonical(seq({1, 2, 1, 2}, {1, 2})) == seq({}, {1, 2}));
  CHECK(canonical(seq({3}, {1, 1, 1})) == seq({3}, {1}));
  CHECK(canonical(seq({5, 1}, {2, 1})) == seq({5}, {1, 2}));
  CHECK_THROWS_AS(canonical(seq({1}, {})), ValidationError);
  CHECK(class_add(order_unit(), order_unit()) == seq({}, {2}));
  CHECK(class_add(seq({}, {1, 0}), seq({}, {0, 0, 1})).period.size() == 6);

  Gen gen(21);
  for (int trial = 0; trial < 300; ++trial) {
    const auto x = gen.k0(4, 4, 5), y = gen.k0(4, 4, 5);
    CHECK(class_add(x, class_neg(x)) == seq({}, {0}));
    const auto s = class_add(x, y);
    const auto vs = testing::expand(s, 60), vx = testing::expand(x, 60), vy = testing::expand(y, 60);
    for (std::size_t i = 0; i < 60; ++i) CHECK(vs[i] == vx[i] + vy[i]);
    CHECK(testing::expand(canonical(x), 60) == vx);
    CHECK(class_sub(s, y) == canonical(x));
  }
}

TEST_CASE("block sums and alpha") {
  const auto t = cyc({2});
  CHECK(alpha(t, 0, order_unit()) == seq({}, {2}));
  CHECK(alpha(t, 0, seq({}, {1, -1})) == seq({}, {0}));
  CHECK(alpha(t, 0, seq({1}, {1, -1})) == seq({2}, {0}));
  CHECK(prefix_sum(seq({4}, {1, -2}), 5) == 4 + 1 - 2 + 1 - 2);

  Gen gen(3);
  for (int trial = 0; trial < 300; ++trial) {
    const auto x = gen.k0(5, 5, 6);
    const auto& tower = sample_towers()[static_cast<std::size_t>(gen.uniform(0, 6))];
    const auto n = static_cast<std::size_t>(gen.uniform(0, 3));
    const auto rn = static_cast<std::uint64_t>(tower.increment(n));
    const auto rn1 = static_cast<std::uint64_t>(tower.increment(n + 1));
    const auto v = testing::expand(x, 720);
    CHECK(testing::expand(alpha(tower, n, x), 720 / rn) == testing::explicit_block_sums(v, rn));
    // Functoriality: two steps equal one step of the combined width.
    CHECK(alpha(tower, n + 1, alpha(tower, n, x)) == block_sums(x, rn * rn1));
    const auto k = static_cast<std::uint64_t>(gen.uniform(1, 12));
    const auto listed = level_block_sums(x, k);
    const auto sums = testing::explicit_block_sums(v, k);
    std::set<std::int64_t> want(sums.begin(), sums.end());
    std::set<std::int64_t> got;
    for (const auto& z : listed) got.insert(z.get_si());
    CHECK(got == want);
  }
}

TEST_CASE("class_equal and class_positive examples") {
  const auto t = cyc({2});
  const auto yes = class_equal(seq({}, {1, -1}), seq({}, {0}), t, 8);
  CHECK(yes.result == R::Yes);
  CHECK(yes.level == 1u);
  CHECK(class_equal(order_unit(), seq({}, {0}), t, 8).result == R::No);
  CHECK(class_equal(seq({1}, {1, -1}), seq({}, {0}), t, 8).result == R::No);
  CHECK(class_positive(seq({}, {1, -1}), t, 8).level == 1u);
  CHECK(class_positive(seq({}, {-1}), t, 8).result == R::No);
  const auto pos = class_positive(seq({}, {-1, 2}), t, 8);
  CHECK(pos.result == R::Yes);
  CHECK(pos.level == 1u);
  CHECK(class_positive(order_unit(), t, 8).level == 0u);
  CHECK_THROWS_AS(class_equal(order_unit(), order_unit(), t, 0), ValidationError);
  CHECK_THROWS_AS(class_positive(order_unit(), t, 0), ValidationError);
  // Period 3 never divides 2^n: only a scan can answer.
  CHECK(class_equal(seq({}, {1, 1, -2}), seq({}, {0}), t, 6).result == R::Undetermined);
  CHECK(class_equal(seq({}, {1, 1, -2}), seq({}, {0}), cyc({3}), 6).level == 1u);
  CHECK(to_string(R::Undetermined) == "undetermined");
}

TEST_CASE("class verdicts match explicit block sums") {
  Gen gen(5);
  constexpr std::size_t horizon = 8192;
  int decided = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto& tower = sample_towers()[static_cast<std::size_t>(gen.uniform(0, 6))];
    auto x = gen.k0(4, 4, 3);
    if (gen.coin()) {
      // Force a zero period sum so the aligned-level rule is exercised.
      std::int64_t s = 0;
      for (auto v : x.period) s += v;
      x.period.push_back(-s);
    }
    for (bool positivity : {false, true}) {
      const auto v = positivity ? class_positive(x, tower, 6) : class_equal(x, seq({}, {0}), tower, 6);
      const auto want = explicit_level(x, tower, positivity, horizon);
      if (v.result == R::Yes) {
        ++decided;
        CHECK(v.level == want);
      } else if (v.result == R::No) {
        ++decided;
        CHECK_FALSE(want.has_value());
      } else {
        CHECK_FALSE(want.has_value());
      }
    }
    CHECK(class_equal(x, x, tower, 1).result == R::Yes);
  }
  CHECK(decided > 600);
}

TEST_CASE("positivity is the existence of a nonnegative representative") {
  // Moving mass inside a block is an element of H: if all level-n block
  // sums are >= 0, piling each sum onto the block's first entry gives a
  // nonnegative sequence in the same class.
  Gen gen(9);
  for (int trial = 0; trial < 200; ++trial) {
    const auto& tower = sample_towers()[static_cast<std::size_t>(gen.uniform(0, 3))];
    std::vector<std::int64_t> pre = gen.ints(static_cast<std::size_t>(gen.uniform(1, 12)), -3, 3);
    const auto x = seq(pre, {0});
    const auto v = class_positive(x, tower, 8);
    REQUIRE(v.result != R::Undetermined);
    if (v.result != R::Yes) continue;
    const auto k = tower.order(*v.level);
    std::vector<std::int64_t> rep(((pre.size() + k - 1) / k) * k, 0);
    const auto sums = testing::explicit_block_sums(testing::expand(x, rep.size()), k);
    for (std::size_t j = 0; j < sums.size(); ++j) rep[j * k] = sums[j];
    CHECK(std::all_of(rep.begin(), rep.end(), [](auto e) { return e >= 0; }));
    CHECK(class_equal(x, seq(rep, {0}), tower, 8).result == R::Yes);
  }
}

TEST_CASE("truncated limit model") {
  const TruncatedLimit model(cyc({2}), 3, 2);
  CHECK(model.dimension(0) == 16);
  CHECK(model.dimension(3) == 2);
  CHECK(model.map(0).size() == 8);
  CHECK(model.map(0)[1][2] == 1);
  CHECK(model.map(0)[1][4] == 0);
  std::vector<std::int64_t> v(16, 0);
  v[0] = 1;
  v[1] = -1;
  CHECK(model.is_zero(v) == TruncatedLimit::Answer::Yes);
  CHECK(class_equal(seq(v, {0}), seq({}, {0}), cyc({2}), 4).result == R::Yes);
  std::vector<std::int64_t> unit(16, 1);
  CHECK(model.is_zero(unit) == TruncatedLimit::Answer::No);
  CHECK(model.is_positive(unit) == TruncatedLimit::Answer::Yes);
  CHECK(class_positive(seq(unit, {0}), cyc({2}), 4).result == R::Yes);
  std::vector<std::int64_t> split(16, 0);
  split[0] = 1;
  split[15] = -1;
  CHECK(model.is_zero(split) == TruncatedLimit::Answer::OutOfScope);
  CHECK(testing::oracle_answer(cyc({2}), 3, 2, split, false) == TruncatedLimit::Answer::Yes);
  CHECK_THROWS_AS(model.image({1, 2}), ValidationError);
  CHECK_THROWS_AS(TruncatedLimit(cyc({2}), 30, 4), ValidationError);
}

TEST_CASE("class verdicts agree with the truncated limit") {
  Gen gen(17);
  const std::vector<TowerSpec> towers{cyc({2}), cyc({3}), cyc({2, 3}), cyc({4})};
  for (int trial = 0; trial < 300; ++trial) {
    const auto& tower = towers[static_cast<std::size_t>(gen.uniform(0, 3))];
    const auto levels = static_cast<std::size_t>(gen.uniform(1, 3));
    const auto width = static_cast<std::size_t>(gen.uniform(1, 3));
    std::vector<std::int64_t> v(width * tower.order(levels), 0);
    for (auto& e : v)
      if (gen.coin(0.3)) e = gen.uniform(-2, 2);
    const auto x = seq(v, {0});
    const auto eq = class_equal(x, seq({}, {0}), tower, 4);
    const auto pos = class_positive(x, tower, 4);
    CHECK(eq.result != R::Undetermined);
    CHECK(pos.result != R::Undetermined);
    CHECK((eq.result == R::Yes) == (testing::oracle_answer(tower, levels, width, v, false) == TruncatedLimit::Answer::Yes));
    CHECK((pos.result == R::Yes) == (testing::oracle_answer(tower, levels, width, v, true) == TruncatedLimit::Answer::Yes));
    if (eq.result == R::Yes && *eq.level <= levels)
      CHECK(TruncatedLimit(tower, levels, width).is_zero(v) == TruncatedLimit::Answer::Yes);
  }
}

TEST_CASE("finite towers") {
  const auto t = cyc({1}, {2, 3});
  CHECK(class_equal(seq({1, -1}, {0}), seq({}, {0}), t, 1).level == 1u);
  CHECK(class_equal(seq({1, 0, 0, 0, 0, 0, -1}, {0}), seq({}, {0}), t, 1).result == R::No);
  CHECK(class_positive(seq({-1, 1, 1}, {0}), t, 1).result == R::Yes);
  CHECK(class_positive(seq({1, 1, 1, 1, 1, 1, -1}, {0}), t, 1).result == R::No);
}

TEST_CASE("idempotent classes on tower windows") {
  const auto w = make_shared_window(family::Tower{cyc({2})}, 3);
  const auto id = idempotent_class(w, SparseOperator::identity(w), 1);
  CHECK(id.ranks == std::vector<std::int64_t>{2, 2, 2, 2});
  CHECK(id.block_size == 2);
  CHECK(id.level == 1);
  CHECK(id.subtower == cyc({2}));
  const auto unit = idempotent_class(w, SparseOperator::matrix_unit(w, 5, 5), 1);
  CHECK(unit.ranks == std::vector<std::int64_t>{0, 0, 1, 0});

  SparseOperator half(w);
  for (Point b = 0; b < 8; b += 2)
    for (Point i = b; i < b + 2; ++i)
      for (Point j = b; j < b + 2; ++j) half.set(i, j, Rational(1, 2));
  const auto h = idempotent_class(w, half, 1);
  CHECK(h.ranks == std::vector<std::int64_t>{1, 1, 1, 1});
  CHECK(class_equal(seq(h.ranks, {1}), order_unit(), h.subtower, 4).result == R::Yes);
  CHECK(idempotent_class(w, SparseOperator::identity(w), 3).ranks == std::vector<std::int64_t>{8});

  CHECK_THROWS_AS(idempotent_class(w, half * Rational(2), 1), ValidationError);
  CHECK_THROWS_AS(idempotent_class(w, half, 0), ValidationError);
  const auto z = make_shared_window(family::Line{}, 4);
  CHECK_THROWS_AS(idempotent_class(z, SparseOperator::identity(z), 1), ValidationError);
}

TEST_CASE("exact rank") {
  CHECK(exact_rank({}) == 0);
  CHECK(exact_rank({{1, 2}, {2, 4}}) == 1);
  CHECK(exact_rank({{0, 1}, {1, 0}}) == 2);
  CHECK(exact_rank({{Rational(1, 3), 1, 0}, {0, 0, 0}, {1, 3, 1}}) == 2);
}
