#include "coarsekit/amen.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "coarsekit/error.hpp"
#include "coarsekit/matching.hpp"

namespace coarsekit {

namespace {

std::vector<char> membership(const Space& space, const PointSet& a) {
  std::vector<char> in(space.size(), 0);
  for (auto x : a) in.at(x) = 1;
  return in;
}

// Smallest window of the family whose interior at `reach` contains the origin.
// Explicit tables are their own ambient space.
SpacePtr window_containing(const FamilySpec& family, int reach) {
  if (const auto* e = std::get_if<family::Explicit>(&family))
    return make_shared_window(family, static_cast<int>(e->labels.size()));
  for (int size = 1;; ++size) {
    auto w = make_shared_window(family, size);
    auto in = w->interior(reach);
    if (std::binary_search(in.begin(), in.end(), w->origin())) return w;
  }
}

}  // namespace

PointSet boundary(const Space& space, const PointSet& a, int radius) {
  const auto in = membership(space, a);
  PointSet out;
  for (Point x = 0; x < space.size(); ++x) {
    bool near_a = false, near_rest = false;
    for (Point y = 0; y < space.size() && !(near_a && near_rest); ++y) {
      if (space.distance(x, y) > radius) continue;
      (in[y] ? near_a : near_rest) = true;
    }
    if (near_a && near_rest) out.push_back(x);
  }
  return out;
}

Rational folner_ratio(const Space& space, const PointSet& a, int radius) {
  if (a.empty()) throw ValidationError("folner_ratio of the empty set");
  Rational r(static_cast<long>(boundary(space, a, radius).size()), static_cast<long>(a.size()));
  r.canonicalize();
  return r;
}

FolnerSearchReport folner_search(const FamilySpec& family, int radius, const Rational& epsilon,
                                 const FolnerSearchOptions& options) {
  if (epsilon <= 0) throw ValidationError("epsilon must be positive");
  if (radius < 0) throw ValidationError("R must be >= 0");
  FolnerSearchReport report;
  report.note = "window-scale evidence only";
  bool have_best = false;

  auto consider = [&](const SpacePtr& window, const PointSet& set) {
    ++report.candidates;
    auto ratio = folner_ratio(*window, set, radius);
    if (!have_best || ratio < report.best.ratio) {
      report.best = {window, set, radius, ratio};
      have_best = true;
    }
    if (!report.witness && ratio <= epsilon) report.witness = FolnerWitness{window, set, radius, ratio};
    return report.witness.has_value();
  };

  if (options.strategy == FolnerStrategy::Balls) {
    for (int rho = 0; rho <= options.max_radius; ++rho) {
      auto window = window_containing(family, rho + radius);
      if (consider(window, window->ball(window->origin(), rho))) break;
    }
    return report;
  }

  if (options.max_size < 1) throw ValidationError("max_size must be >= 1");
  auto window = window_containing(family, options.max_size + radius);
  const Space& w = *window;
  std::vector<PointSet> neighbours(w.size());
  for (Point x = 0; x < w.size(); ++x)
    for (auto y : w.ball(x, 1))
      if (y != x) neighbours[x].push_back(y);

  // Each connected set containing the root is produced exactly once: a
  // candidate is excluded from every later branch once it has been tried.
  std::vector<char> in_set(w.size(), 0), blocked(w.size(), 0);
  std::vector<Point> current;
  bool done = false;
  std::function<void(std::vector<Point>)> extend = [&](std::vector<Point> frontier) {
    PointSet sorted(current.begin(), current.end());
    std::sort(sorted.begin(), sorted.end());
    if (consider(window, sorted)) {
      done = true;
      return;
    }
    if (static_cast<int>(current.size()) == options.max_size) return;
    std::vector<Point> tried;
    for (std::size_t i = 0; i < frontier.size() && !done; ++i) {
      const Point v = frontier[i];
      std::vector<Point> next(frontier.begin() + static_cast<long>(i) + 1, frontier.end());
      for (auto u : neighbours[v]) {
        if (in_set[u] || blocked[u] || u == v) continue;
        if (std::find(frontier.begin(), frontier.end(), u) != frontier.end()) continue;
        next.push_back(u);
      }
      in_set[v] = 1;
      current.push_back(v);
      extend(std::move(next));
      current.pop_back();
      in_set[v] = 0;
      blocked[v] = 1;
      tried.push_back(v);
    }
    for (auto v : tried) blocked[v] = 0;
  };
  const Point root = w.origin();
  in_set[root] = 1;
  current.push_back(root);
  std::vector<Point> frontier;
  for (auto u : neighbours[root]) frontier.push_back(u);
  extend(frontier);
  return report;
}

ParadoxResult paradox_certificate(const Space& space, int radius, int collar) {
  if (radius < 0) throw ValidationError("R must be >= 0");
  if (collar < radius) throw ValidationError("collar must be >= R");
  const PointSet interior = space.interior(collar);

  std::vector<std::vector<std::size_t>> adjacency(2 * interior.size());
  for (std::size_t i = 0; i < interior.size(); ++i) {
    auto ball = space.ball(interior[i], radius);
    adjacency[2 * i].assign(ball.begin(), ball.end());
    adjacency[2 * i + 1].assign(ball.begin(), ball.end());
  }
  const auto matching = hopcroft_karp(space.size(), adjacency);

  if (matching.saturates_left()) {
    ParadoxCertificate cert{radius, collar, interior, {}, {}};
    for (std::size_t i = 0; i < interior.size(); ++i) {
      cert.plus_pairs.emplace_back(interior[i], matching.left_to_right[2 * i]);
      cert.minus_pairs.emplace_back(interior[i], matching.left_to_right[2 * i + 1]);
    }
    if (auto problem = verify_certificate(space, cert))
      throw InvariantViolation("matching produced an invalid certificate: " + *problem);
    return cert;
  }

  HallViolation v{radius, collar, {}, {}};
  const auto left = hall_violator(matching, adjacency);
  for (auto u : left) v.set.emplace_back(interior[u / 2], u % 2 == 0 ? 1 : -1);
  for (auto y : neighbourhood(left, adjacency)) v.neighbourhood.push_back(y);
  if (auto problem = verify_hall_violation(space, v))
    throw InvariantViolation("matching produced an invalid Hall violator: " + *problem);
  return v;
}

std::optional<std::string> verify_certificate(const Space& space, const ParadoxCertificate& cert) {
  if (cert.radius < 0 || cert.collar < cert.radius) return "collar must be >= R >= 0";
  if (cert.interior != space.interior(cert.collar)) return "interior does not match the collar";
  std::set<Point> images;
  for (const auto* branch : {&cert.plus_pairs, &cert.minus_pairs}) {
    if (branch->size() != cert.interior.size()) return "a branch does not cover the interior";
    std::set<Point> sources;
    for (const auto& [x, y] : *branch) {
      if (x >= space.size() || y >= space.size()) return "point outside the window";
      if (!std::binary_search(cert.interior.begin(), cert.interior.end(), x))
        return "source " + space.label(x) + " is not interior";
      if (!sources.insert(x).second) return "source " + space.label(x) + " repeats";
      if (space.distance(x, y) > cert.radius)
        return "pair " + space.label(x) + " -> " + space.label(y) + " exceeds R";
      if (!images.insert(y).second) return "image " + space.label(y) + " is used twice";
    }
  }
  return std::nullopt;
}

std::optional<std::string> verify_hall_violation(const Space& space, const HallViolation& v) {
  if (v.radius < 0 || v.collar < v.radius) return "collar must be >= R >= 0";
  const auto interior = space.interior(v.collar);
  std::set<std::pair<Point, int>> seen;
  std::set<Point> nbhd;
  for (const auto& [x, sign] : v.set) {
    if (sign != 1 && sign != -1) return "sign must be +1 or -1";
    if (x >= space.size() || !std::binary_search(interior.begin(), interior.end(), x))
      return "violator point is not interior";
    if (!seen.insert({x, sign}).second) return "violator element repeats";
    for (Point y = 0; y < space.size(); ++y)
      if (space.distance(x, y) <= v.radius) nbhd.insert(y);
  }
  if (PointSet(nbhd.begin(), nbhd.end()) != v.neighbourhood) return "neighbourhood is wrong";
  if (nbhd.size() >= v.set.size()) return "neighbourhood is not smaller than the set";
  return std::nullopt;
}

Rational approx_trace(const SparseOperator& a, const PointSet& f) {
  if (f.empty()) throw ValidationError("approx_trace over the empty set");
  Rational sum = 0;
  for (auto x : f) sum += a.at(x, x);
  sum /= static_cast<long>(f.size());
  return sum;
}

Rational trace_defect(const SparseOperator& a, const SparseOperator& b, const PointSet& f) {
  return abs_value(approx_trace(commutator(a, b), f));
}

Rational normalized_trace(const SparseOperator& a) {
  if (a.dim() == 0) throw ValidationError("normalized trace on an empty space");
  Rational t = a.trace();
  t /= static_cast<long>(a.dim());
  return t;
}

}  // namespace coarsekit
