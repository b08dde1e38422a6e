#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "coarsekit/rational.hpp"
#include "coarsekit/space.hpp"

namespace coarsekit {

struct Triplet {
  Point row = 0;
  Point col = 0;
  Rational value;
};

/// Exact sparse matrix on l^p(X) for a finite window X, indexed by points.
/// Entry (x, y) is T_{xy} = (T delta_y)(x). Zero entries are never stored.
class SparseOperator {
 public:
  explicit SparseOperator(SpacePtr space);

  static SparseOperator identity(SpacePtr space);
  /// Diagonal 0/1 operator 1_Y.
  static SparseOperator indicator(SpacePtr space, const PointSet& set);
  static SparseOperator diagonal(SpacePtr space, const std::vector<Rational>& values);
  /// e_{row,col}.
  static SparseOperator matrix_unit(SpacePtr space, Point row, Point col);
  /// Duplicate positions are summed. Throws ValidationError on an index
  /// outside the space.
  static SparseOperator from_triplets(SpacePtr space, const std::vector<Triplet>& entries);

  const SpacePtr& space() const { return space_; }
  std::size_t dim() const { return rows_.size(); }

  Rational at(Point row, Point col) const;
  void set(Point row, Point col, const Rational& value);
  void add(Point row, Point col, const Rational& value);
  const std::map<Point, Rational>& row(Point r) const { return rows_.at(r); }

  std::size_t nnz() const;
  /// max d(x,y) over nonzero entries; 0 for the zero operator.
  int propagation() const;
  std::vector<std::pair<Point, Point>> support() const;
  std::vector<Triplet> triplets() const;

  bool is_zero() const { return nnz() == 0; }
  bool is_diagonal() const;
  Rational trace() const;
  Rational max_abs_entry() const;

  SparseOperator transpose() const;
  /// 1_Y * this.
  SparseOperator left_restrict(const PointSet& rows) const;
  /// this * 1_Y.
  SparseOperator right_restrict(const PointSet& cols) const;

  /// Absolute column sums; the l^1 operator norm is their max.
  std::vector<Rational> column_abs_sums() const;
  std::vector<Rational> row_abs_sums() const;
  Rational norm1() const;
  Rational norm_inf() const;

  std::vector<double> apply(std::span<const double> v) const;
  std::vector<double> apply_transpose(std::span<const double> v) const;

  SparseOperator& operator+=(const SparseOperator& other);
  SparseOperator& operator-=(const SparseOperator& other);
  SparseOperator& operator*=(const Rational& s);

  friend SparseOperator operator+(SparseOperator a, const SparseOperator& b) { return a += b; }
  friend SparseOperator operator-(SparseOperator a, const SparseOperator& b) { return a -= b; }
  friend SparseOperator operator*(SparseOperator a, const Rational& s) { return a *= s; }
  friend SparseOperator operator*(const Rational& s, SparseOperator a) { return a *= s; }
  friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b);
  friend bool operator==(const SparseOperator& a, const SparseOperator& b) {
    return a.rows_ == b.rows_;
  }

 private:
  void check_compatible(const SparseOperator& other) const;

  SpacePtr space_;
  std::vector<std::map<Point, Rational>> rows_;
};

/// a*b - b*a.
SparseOperator commutator(const SparseOperator& a, const SparseOperator& b);

}  // namespace coarsekit
