#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "coarsekit/amen.hpp"
#include "coarsekit/rational.hpp"
#include "coarsekit/space.hpp"
#include "coarsekit/sparse_operator.hpp"
#include "coarsekit/translations.hpp"

namespace coarsekit {

/// Diagonal part of a: E(a)_xx = a_xx.
SparseOperator cond_expectation(const SparseOperator& a);

/// Truncated unilateral shift along a ray x_1..x_m: S fixes every point off
/// the ray, sends delta_{x_n} to delta_{x_{n+1}} and kills delta_{x_m}.
struct RayShift {
  SparseOperator s;
  SparseOperator t;  // transpose of s
  std::vector<Point> ray;
};

/// Throws ValidationError for an empty ray, repeated points, or consecutive
/// points further apart than `radius`.
RayShift shift_from_ray(const SpacePtr& space, const std::vector<Point>& ray, int radius);

/// Checks TS = 1 - e_{x_m x_m} and that no column of S touches x_1.
std::optional<std::string> check_ray_shift(const RayShift& shift);

using SparseVector = std::vector<std::pair<Point, Rational>>;

struct QdProjection {
  int blocks = 0;  // n
  PointSet support;
  SparseOperator projection;
};

/// Least n such that P_n = 1 on the first n blocks of a gap window commutes
/// exactly with every operator and ||P_n xi - xi||_p < epsilon for every
/// vector. p is 1 or inf for an exact comparison; other p are compared in
/// floating point. Throws ValidationError for a window without blocks or a
/// vector index outside the window.
QdProjection qd_projection(const SpacePtr& gap_space, const std::vector<SparseOperator>& ops,
                           const std::vector<SparseVector>& vectors, const Rational& epsilon,
                           double p = 1);

struct IdealWitness {
  SparseOperator f;       // diagonal, 1/count on A
  SparseOperator counts;  // sum_ij T_ji 1_B T_ij
  TijFamily family;
};

/// Builds the witness for 1_A = f 1_A sum_ij T_ji 1_B T_ij and verifies it
/// exactly. Throws PreconditionError if some x in A has d(x, B) > R.
IdealWitness ideal_witness(const SpacePtr& space, const PointSet& a, const PointSet& b, int radius);

struct MvSplit {
  SparseOperator x1;  // 1_U a
  SparseOperator x2;  // 1_V a
};

/// Requires U and V (the unions of the pieces) to partition the space.
/// Verifies x1 + x2 = a and ||x_i||_p <= ||a||_p at p = 1, inf exactly.
MvSplit mv_split(const SparseOperator& a, const UVDecomposition& uv);

struct MvGlue {
  SparseOperator c;
  PointSet chi;        // union of the r-neighbourhoods of the U pieces
  PointSet chi_prime;  // same for V
  // Exact distances at p = 1 and p = inf.
  Rational a_b_1, a_c_1, b_c_1;
  Rational a_b_inf, a_c_inf, b_c_inf;
  /// For p in {1, inf}: ||a-b||_p < eps implies both other distances are
  /// < 5/2 eps.
  bool within_bound = false;
};

/// c = (a chi' + b chi) / 2. Throws ValidationError unless a = chi a chi and
/// b = chi' b chi'.
MvGlue mv_glue(const SparseOperator& a, const SparseOperator& b, const UVDecomposition& uv,
               int r, const Rational& epsilon);

struct BlockDecomposition {
  Partition classes;
  std::vector<SparseOperator> blocks;  // 1_C a 1_C, one per class
  SparseOperator residue;              // a - sum of blocks
};

BlockDecomposition block_decompose(const SparseOperator& a, int r);

struct CuntzFamily {
  SparseOperator s1, s2, t1, t2;
  PointSet interior;
  PointSet range;  // images of both branches
};

/// Throws ValidationError if the certificate does not re-verify.
CuntzFamily cuntz_build(const SpacePtr& space, const ParadoxCertificate& cert);

struct LeavittReport {
  bool t1s1 = false;  // T1 S1 = 1_I
  bool t2s2 = false;
  bool t1s2 = false;  // T1 S2 = 0
  bool t2s1 = false;
  bool sum = false;   // S1 T1 + S2 T2 = 1_range
  PointSet boundary;  // window points outside the matched range

  bool ok() const { return t1s1 && t2s2 && t1s2 && t2s1 && sum; }
};

LeavittReport leavitt_verify(const CuntzFamily& family);

/// e ~ f through e = xy, f = yx.
struct EquivWitness {
  SparseOperator e, f, x, y;
};

struct EquivFailure {
  std::string identity;  // first violated identity, e.g. "xy = e"
};

/// Checks e^2 = e, f^2 = f, xy = e, yx = f in that order; on success the
/// witnesses are normalized to x = exf, y = fye.
std::variant<EquivWitness, EquivFailure> alg_equiv_check(const SparseOperator& e,
                                                         const SparseOperator& f,
                                                         const SparseOperator& x,
                                                         const SparseOperator& y);

/// e = S1 T1 together with e ~ 1_I (via S1, T1) and (1_range - e) ~ 1_I
/// (via S2, T2).
struct StandardForm {
  SparseOperator e;
  EquivWitness e_to_unit;
  EquivWitness complement_to_unit;
};

/// Throws InvariantViolation if either equivalence fails.
StandardForm standard_form_witness(const CuntzFamily& family);

struct NonCancellation {
  SparseOperator p, q, v, w;
  PointSet last_points;   // support of 1 - p
  PointSet first_points;  // support of 1 - q
};

/// v shifts each ray forward (killing its last point), w backward; both are
/// the identity off the rays. Verifies wv = p and vw = q exactly. Throws
/// ValidationError when the rays break the spacing conditions: consecutive
/// points within 2r, d(x_1, x_{i+1}) in [ir, (i+1)r], strictly increasing
/// lengths, and positive non-decreasing distances to the other rays.
NonCancellation noncancellation_witness(const SpacePtr& space, int r,
                                        const std::vector<std::vector<Point>>& rays);

}  // namespace coarsekit
