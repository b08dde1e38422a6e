#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "coarsekit/sparse_operator.hpp"
#include "coarsekit/space.hpp"
#include "coarsekit/tower.hpp"

namespace coarsekit {

using Integer = mpz_class;

/// Exponent per prime; nullopt stands for omega (unbounded).
using SupernaturalNumber = std::map<std::uint64_t, std::optional<int>>;

SupernaturalNumber supernatural(const TowerSpec& tower);
bool sn_equal(const SupernaturalNumber& a, const SupernaturalNumber& b);
/// prime^power divides s.
bool sn_divides(std::uint64_t prime, int power, const SupernaturalNumber& s);
std::string to_string(const SupernaturalNumber& s);

struct CoarseClass {
  bool finite = false;
  std::uint64_t order = 0;  // meaningful when finite
};

CoarseClass coarse_class(const TowerSpec& tower);

struct TowerComparison {
  bool bijectively_coarsely_equivalent = false;
  bool coarsely_equivalent = false;
  bool ordered_k0_unit_iso = false;
  bool k0_iso = false;
};

TowerComparison compare_towers(const TowerSpec& a, const TowerSpec& b);

/// Eventually periodic integer sequence m_1, m_2, ...: the preperiod
/// followed by the period repeated forever.
struct K0Class {
  std::vector<std::int64_t> preperiod;
  std::vector<std::int64_t> period{0};

  /// Entry at 0-based index i.
  std::int64_t at(std::uint64_t i) const;
  friend bool operator==(const K0Class&, const K0Class&) = default;
};

/// Shortest period, then shortest preperiod. Throws ValidationError for an
/// empty period.
K0Class canonical(K0Class x);

K0Class class_add(const K0Class& x, const K0Class& y);
K0Class class_neg(const K0Class& x);
K0Class class_sub(const K0Class& x, const K0Class& y);
K0Class order_unit();

/// Sums of consecutive blocks of the given width.
K0Class block_sums(const K0Class& x, std::uint64_t width);
/// alpha_n: block sums of width r_n.
K0Class alpha(const TowerSpec& tower, std::size_t n, const K0Class& x);

/// Sum of the entries with 0-based index < t.
Integer prefix_sum(const K0Class& x, std::uint64_t t);

/// All k_n-block sums of x, listed as the finitely many distinct blocks:
/// the blocks touching the preperiod and one full cycle after them.
std::vector<Integer> level_block_sums(const K0Class& x, std::uint64_t k);

struct Verdict {
  enum class Result { Yes, No, Undetermined };
  Result result = Result::Undetermined;
  std::optional<std::size_t> level;
  std::string reason;
};

std::string to_string(Verdict::Result r);

/// Is x - y in H = union over n of {sequences whose k_n-block sums vanish}?
Verdict class_equal(const K0Class& x, const K0Class& y, const TowerSpec& tower,
                    std::size_t level_budget);

/// Does some level have all k_n-block sums of x nonnegative?
Verdict class_positive(const K0Class& x, const TowerSpec& tower, std::size_t level_budget);

/// Finite model: the direct system Z^{L k_N / k_n} (n = 0..N) with block-sum
/// maps, as explicit integer matrices.
class TruncatedLimit {
 public:
  TruncatedLimit(const TowerSpec& tower, std::size_t levels, std::size_t width);

  std::size_t levels() const { return levels_; }
  /// Dimension of the level-n group.
  std::size_t dimension(std::size_t n) const { return dims_.at(n); }
  /// Matrix of the connecting map from level n to level n+1.
  const std::vector<std::vector<std::int64_t>>& map(std::size_t n) const { return maps_.at(n); }

  /// Image in the colimit (the level-N group) of a level-0 vector.
  std::vector<Integer> image(const std::vector<std::int64_t>& level0) const;

  enum class Answer { Yes, No, OutOfScope };
  /// Zero in the limit of the infinite system. Yes when the image vanishes,
  /// No when the total sum is nonzero, otherwise out of scope.
  Answer is_zero(const std::vector<std::int64_t>& level0) const;
  /// Yes when the image is nonnegative, No when the total sum is negative.
  Answer is_positive(const std::vector<std::int64_t>& level0) const;

 private:
  std::size_t levels_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<std::vector<std::int64_t>>> maps_;
};

struct IdempotentClass {
  std::vector<std::int64_t> ranks;  // one per block
  std::uint64_t block_size = 0;
  std::size_t level = 0;  // blocks are the cosets of G_level
  TowerSpec subtower;     // the tower re-based at that level
};

/// Per-block ranks of an exact idempotent on a tower window. Throws
/// ValidationError if e is not idempotent, has propagation > r, the space is
/// not a tower window, or a block trace is not an integer equal to the rank.
IdempotentClass idempotent_class(const SpacePtr& space, const SparseOperator& e, int r);

/// Rank of an exact rational matrix.
std::size_t exact_rank(std::vector<std::vector<Rational>> m);

}  // namespace coarsekit
