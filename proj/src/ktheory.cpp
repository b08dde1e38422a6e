#include "coarsekit/ktheory.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "coarsekit/error.hpp"

namespace coarsekit {

namespace {

std::map<std::uint64_t, int> factorize(std::uint64_t n) {
  std::map<std::uint64_t, int> out;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  if (n > 1) ++out[n];
  return out;
}

Integer to_integer(std::uint64_t v) {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return z;
}

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw ValidationError("sequence entry exceeds 64 bits");
  return z.get_si();
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ValidationError("sequence entry exceeds 64 bits");
  return r;
}

Integer prefix_sum_big(const K0Class& x, const Integer& t) {
  const std::size_t len = x.preperiod.size();
  Integer sum = 0;
  if (t <= static_cast<unsigned long>(len)) {
    const auto n = t.get_ui();
    for (std::size_t i = 0; i < n; ++i) sum += x.preperiod[i];
    return sum;
  }
  for (auto v : x.preperiod) sum += v;
  const std::size_t q = x.period.size();
  Integer period_sum = 0;
  for (auto v : x.period) period_sum += v;
  Integer rest = t - static_cast<unsigned long>(len);
  Integer full = rest / static_cast<unsigned long>(q);
  Integer rem = rest % static_cast<unsigned long>(q);
  sum += full * period_sum;
  for (std::size_t i = 0; i < rem.get_ui(); ++i) sum += x.period[i];
  return sum;
}

Integer period_sum(const K0Class& x) {
  Integer s = 0;
  for (auto v : x.period) s += v;
  return s;
}

std::int64_t max_abs(const K0Class& x) {
  std::int64_t m = 0;
  for (auto v : x.preperiod) m = std::max(m, v < 0 ? -v : v);
  for (auto v : x.period) m = std::max(m, v < 0 ? -v : v);
  return m;
}

enum class LevelTest { Zero, Nonnegative };

bool level_passes(const K0Class& x, std::uint64_t k, LevelTest test) {
  for (const auto& b : level_block_sums(x, k)) {
    if (test == LevelTest::Zero ? b != 0 : b < 0) return false;
  }
  return true;
}

// First level in [0, last] passing the test.
std::optional<std::size_t> scan(const K0Class& x, const TowerSpec& tower, std::size_t last,
                                LevelTest test) {
  for (std::size_t n = 0; n <= last; ++n)
    if (level_passes(x, tower.order(n), test)) return n;
  return std::nullopt;
}

// Least level n with period length | k_n and k_n >= preperiod length, if any.
std::optional<std::size_t> aligned_level(const K0Class& x, const TowerSpec& tower) {
  const std::uint64_t q = x.period.size();
  const std::uint64_t len = x.preperiod.size();
  const auto sn = supernatural(tower);
  for (const auto& [p, e] : factorize(q))
    if (!sn_divides(p, e, sn)) return std::nullopt;
  if (tower.is_finite() && tower.finite_order() < len) return std::nullopt;
  for (std::size_t n = 0;; ++n) {
    const auto k = tower.order(n);
    if (k % q == 0 && k >= len) return n;
  }
}

Verdict make(Verdict::Result r, std::optional<std::size_t> level, std::string reason) {
  return {r, level, std::move(reason)};
}

// Shared decision procedure: equality is "d has an all-zero level",
// positivity "x has an all-nonnegative level".
Verdict decide(const K0Class& d, const TowerSpec& tower, std::size_t budget, LevelTest test) {
  if (budget < 1) throw ValidationError("level budget must be >= 1");
  const Integer sigma = period_sum(d);
  const char* pass_name = test == LevelTest::Zero ? "all block sums vanish" : "all block sums are >= 0";
  try {
    if (test == LevelTest::Zero ? sigma != 0 : sigma < 0)
      return make(Verdict::Result::No, std::nullopt,
                  "period sum is " + sigma.get_str() + ", so every level has a block violating the test");

    if (tower.is_finite()) {
      // Levels stop changing after the prefix.
      const std::size_t last = tower.prefix().size();
      if (auto n = scan(d, tower, last, test))
        return make(Verdict::Result::Yes, n, pass_name);
      return make(Verdict::Result::No, std::nullopt, "finite tower: no level passes");
    }

    if (test == LevelTest::Nonnegative && sigma > 0) {
      const Integer len = static_cast<unsigned long>(d.preperiod.size());
      const Integer q = static_cast<unsigned long>(d.period.size());
      const Integer m = max_abs(d);
      Integer ratio = (len + q) * m;
      mpz_cdiv_q(ratio.get_mpz_t(), ratio.get_mpz_t(), sigma.get_mpz_t());
      const Integer threshold = len + q * (1 + ratio);
      for (std::size_t n = 0;; ++n) {
        const auto k = tower.order(n);
        if (level_passes(d, k, test)) return make(Verdict::Result::Yes, n, pass_name);
        if (to_integer(k) >= threshold)
          throw InvariantViolation("positive period sum but no passing level below the bound");
      }
    }

    if (auto aligned = aligned_level(d, tower)) {
      const Integer c = prefix_sum_big(d, to_integer(tower.order(*aligned)));
      const bool first_ok = test == LevelTest::Zero ? c == 0 : c >= 0;
      if (!first_ok)
        return make(Verdict::Result::No, std::nullopt,
                    "aligned level " + std::to_string(*aligned) + ": initial correction c = " + c.get_str());
      if (auto n = scan(d, tower, *aligned, test)) return make(Verdict::Result::Yes, n, pass_name);
      throw InvariantViolation("aligned level does not pass although c passes");
    }

    if (auto n = scan(d, tower, budget, test)) return make(Verdict::Result::Yes, n, pass_name);
    return make(Verdict::Result::Undetermined, std::nullopt,
                "no aligned level; levels 0.." + std::to_string(budget) + " scanned");
  } catch (const ValidationError& e) {
    return make(Verdict::Result::Undetermined, std::nullopt, e.what());
  }
}

}  // namespace

SupernaturalNumber supernatural(const TowerSpec& tower) {
  SupernaturalNumber out;
  for (auto r : tower.prefix())
    for (const auto& [p, e] : factorize(static_cast<std::uint64_t>(r))) {
      auto& slot = out[p];
      slot = slot.value_or(0) + e;
    }
  for (auto r : tower.cycle())
    for (const auto& [p, e] : factorize(static_cast<std::uint64_t>(r))) {
      (void)e;
      out[p] = std::nullopt;
    }
  return out;
}

bool sn_equal(const SupernaturalNumber& a, const SupernaturalNumber& b) { return a == b; }

bool sn_divides(std::uint64_t prime, int power, const SupernaturalNumber& s) {
  if (power <= 0) return true;
  auto it = s.find(prime);
  if (it == s.end()) return false;
  return !it->second || *it->second >= power;
}

std::string to_string(const SupernaturalNumber& s) {
  if (s.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, e] : s) {
    if (!first) os << " * ";
    first = false;
    os << p;
    if (!e) os << "^omega";
    else if (*e != 1) os << '^' << *e;
  }
  return os.str();
}

CoarseClass coarse_class(const TowerSpec& tower) {
  if (tower.is_finite()) return {true, tower.finite_order()};
  return {false, 0};
}

TowerComparison compare_towers(const TowerSpec& a, const TowerSpec& b) {
  TowerComparison out;
  const bool same_sn = sn_equal(supernatural(a), supernatural(b));
  const bool same_kind = a.is_finite() == b.is_finite();
  out.bijectively_coarsely_equivalent = same_sn;
  out.ordered_k0_unit_iso = same_sn;
  out.coarsely_equivalent = same_kind;
  out.k0_iso = same_kind;
  return out;
}

std::int64_t K0Class::at(std::uint64_t i) const {
  if (i < preperiod.size()) return preperiod[i];
  return period[(i - preperiod.size()) % period.size()];
}

K0Class canonical(K0Class x) {
  if (x.period.empty()) throw ValidationError("period must be nonempty");
  const std::size_t q = x.period.size();
  for (std::size_t d = 1; d <= q; ++d) {
    if (q % d != 0) continue;
    bool repeats = true;
    for (std::size_t i = d; i < q && repeats; ++i) repeats = x.period[i] == x.period[i % d];
    if (repeats) {
      x.period.resize(d);
      break;
    }
  }
  while (!x.preperiod.empty() && x.preperiod.back() == x.period.back()) {
    x.preperiod.pop_back();
    std::rotate(x.period.rbegin(), x.period.rbegin() + 1, x.period.rend());
  }
  return x;
}

K0Class class_add(const K0Class& x, const K0Class& y) {
  if (x.period.empty() || y.period.empty()) throw ValidationError("period must be nonempty");
  const std::size_t len = std::max(x.preperiod.size(), y.preperiod.size());
  const std::size_t q = std::lcm(x.period.size(), y.period.size());
  K0Class out{{}, {}};
  for (std::size_t i = 0; i < len; ++i) out.preperiod.push_back(checked_add(x.at(i), y.at(i)));
  for (std::size_t i = len; i < len + q; ++i) out.period.push_back(checked_add(x.at(i), y.at(i)));
  return canonical(std::move(out));
}

K0Class class_neg(const K0Class& x) {
  K0Class out = x;
  for (auto& v : out.preperiod) v = checked_add(0, -v);
  for (auto& v : out.period) v = checked_add(0, -v);
  return canonical(std::move(out));
}

K0Class class_sub(const K0Class& x, const K0Class& y) { return class_add(x, class_neg(y)); }

K0Class order_unit() { return K0Class{{}, {1}}; }

Integer prefix_sum(const K0Class& x, std::uint64_t t) { return prefix_sum_big(x, to_integer(t)); }

std::vector<Integer> level_block_sums(const K0Class& x, std::uint64_t k) {
  if (k == 0) throw ValidationError("block width must be >= 1");
  if (x.period.empty()) throw ValidationError("period must be nonempty");
  const std::uint64_t len = x.preperiod.size();
  const std::uint64_t q = x.period.size();
  const std::uint64_t head = (len + k - 1) / k;
  const std::uint64_t cycle = q / std::gcd(q, k);
  const Integer width = to_integer(k);
  std::vector<Integer> out;
  Integer start = 0;
  Integer before = 0;
  for (std::uint64_t j = 0; j < head + cycle; ++j) {
    Integer end = start + width;
    Integer after = prefix_sum_big(x, end);
    out.push_back(after - before);
    before = std::move(after);
    start = std::move(end);
  }
  return out;
}

K0Class block_sums(const K0Class& x, std::uint64_t width) {
  const auto sums = level_block_sums(x, width);
  const std::uint64_t head = (x.preperiod.size() + width - 1) / width;
  K0Class out{{}, {}};
  for (std::size_t j = 0; j < sums.size(); ++j)
    (j < head ? out.preperiod : out.period).push_back(to_int64(sums[j]));
  return canonical(std::move(out));
}

K0Class alpha(const TowerSpec& tower, std::size_t n, const K0Class& x) {
  return block_sums(x, static_cast<std::uint64_t>(tower.increment(n)));
}

std::string to_string(Verdict::Result r) {
  switch (r) {
    case Verdict::Result::Yes: return "yes";
    case Verdict::Result::No: return "no";
    case Verdict::Result::Undetermined: return "undetermined";
  }
  return "undetermined";
}

Verdict class_equal(const K0Class& x, const K0Class& y, const TowerSpec& tower,
                    std::size_t level_budget) {
  return decide(class_sub(x, y), tower, level_budget, LevelTest::Zero);
}

Verdict class_positive(const K0Class& x, const TowerSpec& tower, std::size_t level_budget) {
  return decide(canonical(x), tower, level_budget, LevelTest::Nonnegative);
}

TruncatedLimit::TruncatedLimit(const TowerSpec& tower, std::size_t levels, std::size_t width)
    : levels_(levels) {
  if (width < 1) throw ValidationError("oracle width must be >= 1");
  const auto top = tower.order(levels);
  constexpr std::uint64_t kMaxDimension = 1u << 20;
  if (top > kMaxDimension / width) throw ValidationError("oracle dimension too large");
  for (std::size_t n = 0; n <= levels; ++n)
    dims_.push_back(static_cast<std::size_t>(width * (top / tower.order(n))));
  for (std::size_t n = 0; n < levels; ++n) {
    const auto r = static_cast<std::size_t>(tower.increment(n));
    std::vector<std::vector<std::int64_t>> m(dims_[n + 1], std::vector<std::int64_t>(dims_[n], 0));
    for (std::size_t j = 0; j < dims_[n + 1]; ++j)
      for (std::size_t i = j * r; i < (j + 1) * r; ++i) m[j][i] = 1;
    maps_.push_back(std::move(m));
  }
}

std::vector<Integer> TruncatedLimit::image(const std::vector<std::int64_t>& level0) const {
  if (level0.size() != dims_[0]) throw ValidationError("vector length does not match level 0");
  std::vector<Integer> v(level0.begin(), level0.end());
  for (const auto& m : maps_) {
    std::vector<Integer> next(m.size(), 0);
    for (std::size_t j = 0; j < m.size(); ++j)
      for (std::size_t i = 0; i < v.size(); ++i)
        if (m[j][i] != 0) next[j] += m[j][i] * v[i];
    v = std::move(next);
  }
  return v;
}

TruncatedLimit::Answer TruncatedLimit::is_zero(const std::vector<std::int64_t>& level0) const {
  const auto img = image(level0);
  if (std::all_of(img.begin(), img.end(), [](const Integer& z) { return z == 0; })) return Answer::Yes;
  Integer total = 0;
  for (const auto& z : img) total += z;
  return total != 0 ? Answer::No : Answer::OutOfScope;
}

TruncatedLimit::Answer TruncatedLimit::is_positive(const std::vector<std::int64_t>& level0) const {
  const auto img = image(level0);
  if (std::all_of(img.begin(), img.end(), [](const Integer& z) { return z >= 0; })) return Answer::Yes;
  Integer total = 0;
  for (const auto& z : img) total += z;
  return total < 0 ? Answer::No : Answer::OutOfScope;
}

std::size_t exact_rank(std::vector<std::vector<Rational>> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      const Rational factor = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= factor * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

IdempotentClass idempotent_class(const SpacePtr& space, const SparseOperator& e, int r) {
  const auto* fam = std::get_if<family::Tower>(&space->tag().family);
  if (!fam) throw ValidationError("idempotent_class needs a tower window");
  if (e.dim() != space->size()) throw ValidationError("operator lives on another space");
  if (!(e * e == e)) throw ValidationError("operator is not idempotent");
  if (e.propagation() > r) throw ValidationError("operator propagation exceeds r");

  const auto parts = r_components(*space, r);
  const std::uint64_t size = parts.classes.front().size();
  IdempotentClass out;
  out.block_size = size;
  for (const auto& cls : parts.classes) {
    if (cls.size() != size || cls.back() - cls.front() + 1 != cls.size())
      throw ValidationError("r-components are not contiguous cosets of equal size");
  }
  bool found = false;
  for (std::size_t n = 0; n <= static_cast<std::size_t>(space->tag().size); ++n)
    if (fam->tower.order(n) == size) {
      out.level = n;
      found = true;
      break;
    }
  if (!found) throw ValidationError("block size is not a subgroup order");
  out.subtower = fam->tower.shifted(out.level);

  for (const auto& cls : parts.classes) {
    std::vector<std::vector<Rational>> block(cls.size(), std::vector<Rational>(cls.size(), 0));
    Rational trace = 0;
    for (std::size_t i = 0; i < cls.size(); ++i) {
      for (std::size_t j = 0; j < cls.size(); ++j) block[i][j] = e.at(cls[i], cls[j]);
      trace += block[i][i];
    }
    if (trace.get_den() != 1) throw ValidationError("block trace is not an integer");
    const auto rank = exact_rank(std::move(block));
    if (Rational(static_cast<long>(rank)) != trace)
      throw ValidationError("block trace differs from block rank");
    out.ranks.push_back(static_cast<std::int64_t>(rank));
  }
  return out;
}

}  // namespace coarsekit
