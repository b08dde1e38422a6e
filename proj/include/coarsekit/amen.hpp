#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "coarsekit/rational.hpp"
#include "coarsekit/space.hpp"
#include "coarsekit/sparse_operator.hpp"

namespace coarsekit {

/// {x : d(x, A) <= R and d(x, X \ A) <= R}, computed literally inside the
/// window (so A = X gives the empty set).
PointSet boundary(const Space& space, const PointSet& a, int radius);

/// |boundary(A, R)| / |A|. Throws ValidationError for empty A.
Rational folner_ratio(const Space& space, const PointSet& a, int radius);

struct FolnerWitness {
  SpacePtr window;
  PointSet set;
  int radius = 0;
  Rational ratio;
};

enum class FolnerStrategy { Balls, Exhaustive };

struct FolnerSearchOptions {
  FolnerStrategy strategy = FolnerStrategy::Balls;
  int max_radius = 6;  // balls
  int max_size = 8;    // exhaustive
};

/// Outcome of a bounded search. Failing to find a witness at window scale is
/// evidence against amenability, never a proof; `note` says so.
struct FolnerSearchReport {
  std::optional<FolnerWitness> witness;  // first set with ratio <= epsilon
  FolnerWitness best;                    // smallest ratio seen
  std::size_t candidates = 0;
  std::string note;
};

/// Balls: B_rho(origin) for rho = 0..max_radius, each inside the smallest
/// window that contains B_{rho+R}(origin). Exhaustive: every 1-connected set
/// containing the origin with at most max_size points. Ratios are computed
/// in a window wide enough that they equal the ratios in the infinite space.
FolnerSearchReport folner_search(const FamilySpec& family, int radius, const Rational& epsilon,
                                 const FolnerSearchOptions& options = {});

/// Finite shadow of a paradoxical decomposition: each interior point x has a
/// "+" image and a "-" image within distance R, all images distinct.
struct ParadoxCertificate {
  int radius = 1;
  int collar = 1;
  PointSet interior;
  std::vector<std::pair<Point, Point>> plus_pairs;
  std::vector<std::pair<Point, Point>> minus_pairs;
};

/// A set of signed interior points (sign +1 / -1) whose R-neighbourhood in
/// the window is smaller than the set.
struct HallViolation {
  int radius = 1;
  int collar = 1;
  std::vector<std::pair<Point, int>> set;
  PointSet neighbourhood;
};

using ParadoxResult = std::variant<ParadoxCertificate, HallViolation>;

/// Maximum matching of interior(collar) x {+,-} into the window along edges
/// of length <= R. Throws ValidationError when collar < R or R < 0.
ParadoxResult paradox_certificate(const Space& space, int radius, int collar);

/// Independent re-checks. Return the first problem found, or nullopt.
std::optional<std::string> verify_certificate(const Space& space, const ParadoxCertificate& cert);
std::optional<std::string> verify_hall_violation(const Space& space, const HallViolation& v);

/// (1/|F|) sum_{x in F} a_xx. Throws ValidationError for empty F.
Rational approx_trace(const SparseOperator& a, const PointSet& f);
/// |approx_trace(ab - ba, F)|.
Rational trace_defect(const SparseOperator& a, const SparseOperator& b, const PointSet& f);
/// (1/|X|) trace(a).
Rational normalized_trace(const SparseOperator& a);

}  // namespace coarsekit
