#include "coarsekit/sparse_operator.hpp"

#include <algorithm>

#include "coarsekit/error.hpp"

namespace coarsekit {

SparseOperator::SparseOperator(SpacePtr space) : space_(std::move(space)) {
  if (!space_) throw ValidationError("operator needs a space");
  rows_.resize(space_->size());
}

SparseOperator SparseOperator::identity(SpacePtr space) {
  SparseOperator op(std::move(space));
  for (Point x = 0; x < op.dim(); ++x) op.rows_[x].emplace(x, 1);
  return op;
}

SparseOperator SparseOperator::indicator(SpacePtr space, const PointSet& set) {
  SparseOperator op(std::move(space));
  for (Point x : set) op.set(x, x, 1);
  return op;
}

SparseOperator SparseOperator::diagonal(SpacePtr space,
                                        const std::vector<Rational>& values) {
  SparseOperator op(std::move(space));
  if (values.size() != op.dim())
    throw ValidationError("diagonal length does not match space size");
  for (Point x = 0; x < op.dim(); ++x) op.set(x, x, values[x]);
  return op;
}

SparseOperator SparseOperator::matrix_unit(SpacePtr space, Point row, Point col) {
  SparseOperator op(std::move(space));
  op.set(row, col, 1);
  return op;
}

SparseOperator SparseOperator::from_triplets(SpacePtr space,
                                             const std::vector<Triplet>& entries) {
  SparseOperator op(std::move(space));
  for (const auto& t : entries) op.add(t.row, t.col, t.value);
  return op;
}

Rational SparseOperator::at(Point row, Point col) const {
  if (row >= dim() || col >= dim()) throw ValidationError("operator index outside space");
  const auto& r = rows_[row];
  auto it = r.find(col);
  return it == r.end() ? Rational(0) : it->second;
}

void SparseOperator::set(Point row, Point col, const Rational& value) {
  if (row >= dim() || col >= dim()) throw ValidationError("operator index outside space");
  if (value == 0)
    rows_[row].erase(col);
  else
    rows_[row][col] = value;
}

void SparseOperator::add(Point row, Point col, const Rational& value) {
  if (row >= dim() || col >= dim()) throw ValidationError("operator index outside space");
  if (value == 0) return;
  auto& r = rows_[row];
  auto [it, inserted] = r.emplace(col, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) r.erase(it);
  }
}

std::size_t SparseOperator::nnz() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

int SparseOperator::propagation() const {
  int prop = 0;
  for (Point x = 0; x < dim(); ++x)
    for (const auto& [y, v] : rows_[x]) prop = std::max(prop, space_->distance(x, y));
  return prop;
}

std::vector<std::pair<Point, Point>> SparseOperator::support() const {
  std::vector<std::pair<Point, Point>> out;
  for (Point x = 0; x < dim(); ++x)
    for (const auto& [y, v] : rows_[x]) out.emplace_back(x, y);
  return out;
}

std::vector<Triplet> SparseOperator::triplets() const {
  std::vector<Triplet> out;
  for (Point x = 0; x < dim(); ++x)
    for (const auto& [y, v] : rows_[x]) out.push_back({x, y, v});
  return out;
}

bool SparseOperator::is_diagonal() const {
  for (Point x = 0; x < dim(); ++x)
    for (const auto& [y, v] : rows_[x])
      if (y != x) return false;
  return true;
}

Rational SparseOperator::trace() const {
  Rational t = 0;
  for (Point x = 0; x < dim(); ++x) t += at(x, x);
  return t;
}

Rational SparseOperator::max_abs_entry() const {
  Rational m = 0;
  for (const auto& r : rows_)
    for (const auto& [y, v] : r) m = std::max(m, Rational(abs(v)));
  return m;
}

SparseOperator SparseOperator::transpose() const {
  SparseOperator t(space_);
  for (Point x = 0; x < dim(); ++x)
    for (const auto& [y, v] : rows_[x]) t.rows_[y].emplace(x, v);
  return t;
}

SparseOperator SparseOperator::left_restrict(const PointSet& rows) const {
  SparseOperator out(space_);
  for (Point x : rows) {
    if (x >= dim()) throw ValidationError("point index outside space");
    out.rows_[x] = rows_[x];
  }
  return out;
}

SparseOperator SparseOperator::right_restrict(const PointSet& cols) const {
  std::vector<char> keep(dim(), 0);
  for (Point y : cols) {
    if (y >= dim()) throw ValidationError("point index outside space");
    keep[y] = 1;
  }
  SparseOperator out(space_);
  for (Point x = 0; x < dim(); ++x)
    for (const auto& [y, v] : rows_[x])
      if (keep[y]) out.rows_[x].emplace(y, v);
  return out;
}

std::vector<Rational> SparseOperator::column_abs_sums() const {
  std::vector<Rational> sums(dim(), 0);
  for (const auto& r : rows_)
    for (const auto& [y, v] : r) sums[y] += abs(v);
  return sums;
}

std::vector<Rational> SparseOperator::row_abs_sums() const {
  std::vector<Rational> sums(dim(), 0);
  for (Point x = 0; x < dim(); ++x)
    for (const auto& [y, v] : rows_[x]) sums[x] += abs(v);
  return sums;
}

Rational SparseOperator::norm1() const {
  Rational best = 0;
  for (const auto& s : column_abs_sums()) best = std::max(best, s);
  return best;
}

Rational SparseOperator::norm_inf() const {
  Rational best = 0;
  for (const auto& s : row_abs_sums()) best = std::max(best, s);
  return best;
}

std::vector<double> SparseOperator::apply(std::span<const double> v) const {
  if (v.size() != dim()) throw ValidationError("vector length does not match space size");
  std::vector<double> out(dim(), 0.0);
  for (Point x = 0; x < dim(); ++x) {
    double acc = 0.0;
    for (const auto& [y, a] : rows_[x]) acc += a.get_d() * v[y];
    out[x] = acc;
  }
  return out;
}

std::vector<double> SparseOperator::apply_transpose(std::span<const double> v) const {
  if (v.size() != dim()) throw ValidationError("vector length does not match space size");
  std::vector<double> out(dim(), 0.0);
  for (Point x = 0; x < dim(); ++x)
    for (const auto& [y, a] : rows_[x]) out[y] += a.get_d() * v[x];
  return out;
}

void SparseOperator::check_compatible(const SparseOperator& other) const {
  if (other.dim() != dim())
    throw ValidationError("operators live on spaces of different size");
}

SparseOperator& SparseOperator::operator+=(const SparseOperator& other) {
  check_compatible(other);
  for (Point x = 0; x < dim(); ++x)
    for (const auto& [y, v] : other.rows_[x]) add(x, y, v);
  return *this;
}

SparseOperator& SparseOperator::operator-=(const SparseOperator& other) {
  check_compatible(other);
  for (Point x = 0; x < dim(); ++x)
    for (const auto& [y, v] : other.rows_[x]) add(x, y, -v);
  return *this;
}

SparseOperator& SparseOperator::operator*=(const Rational& s) {
  if (s == 0) {
    for (auto& r : rows_) r.clear();
    return *this;
  }
  for (auto& r : rows_)
    for (auto& [y, v] : r) v *= s;
  return *this;
}

SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
  a.check_compatible(b);
  SparseOperator out(a.space_);
  for (Point x = 0; x < a.dim(); ++x) {
    auto& dst = out.rows_[x];
    for (const auto& [k, av] : a.rows_[x])
      for (const auto& [y, bv] : b.rows_[k]) dst[y] += av * bv;
    std::erase_if(dst, [](const auto& kv) { return kv.second == 0; });
  }
  return out;
}

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) {
  return a * b - b * a;
}

}  // namespace coarsekit
