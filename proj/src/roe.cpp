#include "coarsekit/roe.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "coarsekit/error.hpp"

namespace coarsekit {

namespace {

PointSet set_union(const std::vector<PointSet>& pieces) {
  PointSet out;
  for (const auto& piece : pieces) out.insert(out.end(), piece.begin(), piece.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PointSet complement(const Space& space, const PointSet& set) {
  PointSet out;
  for (Point x = 0; x < space.size(); ++x)
    if (!std::binary_search(set.begin(), set.end(), x)) out.push_back(x);
  return out;
}

PointSet neighbourhood_of(const Space& space, const PointSet& set, int r) {
  PointSet out;
  for (Point x = 0; x < space.size(); ++x) {
    auto d = space.distance(x, set);
    if (d && *d <= r) out.push_back(x);
  }
  return out;
}

void check_points(const Space& space, const std::vector<Point>& points, const char* what) {
  for (auto x : points)
    if (x >= space.size()) throw ValidationError(std::string(what) + " has a point outside the window");
}

}  // namespace

SparseOperator cond_expectation(const SparseOperator& a) {
  SparseOperator out(a.space());
  for (Point x = 0; x < a.dim(); ++x) out.set(x, x, a.at(x, x));
  return out;
}

RayShift shift_from_ray(const SpacePtr& space, const std::vector<Point>& ray, int radius) {
  if (ray.empty()) throw ValidationError("ray is empty");
  check_points(*space, ray, "ray");
  if (std::set<Point>(ray.begin(), ray.end()).size() != ray.size())
    throw ValidationError("ray repeats a point");
  for (std::size_t i = 0; i + 1 < ray.size(); ++i)
    if (space->distance(ray[i], ray[i + 1]) > radius)
      throw ValidationError("ray is not " + std::to_string(radius) + "-connected at " +
                            space->label(ray[i]));
  std::vector<char> on_ray(space->size(), 0);
  for (auto x : ray) on_ray[x] = 1;
  SparseOperator s(space);
  for (Point x = 0; x < space->size(); ++x)
    if (!on_ray[x]) s.set(x, x, 1);
  for (std::size_t i = 0; i + 1 < ray.size(); ++i) s.set(ray[i + 1], ray[i], 1);
  auto t = s.transpose();
  return {std::move(s), std::move(t), ray};
}

std::optional<std::string> check_ray_shift(const RayShift& shift) {
  const auto& space = shift.s.space();
  auto expected = SparseOperator::identity(space);
  expected.set(shift.ray.back(), shift.ray.back(), 0);
  if (!(shift.t * shift.s == expected)) return "TS is not 1 - e_last";
  if (!shift.s.row(shift.ray.front()).empty()) return "a column of S touches the first ray point";
  return std::nullopt;
}

QdProjection qd_projection(const SpacePtr& gap_space, const std::vector<SparseOperator>& ops,
                           const std::vector<SparseVector>& vectors, const Rational& epsilon,
                           double p) {
  const auto& blocks = gap_space->blocks();
  if (blocks.empty()) throw ValidationError("qd_projection needs a window with blocks");
  if (epsilon <= 0) throw ValidationError("epsilon must be positive");
  if (std::isnan(p) || p < 1) throw ValidationError("norm exponent p must be >= 1");
  for (const auto& op : ops)
    if (op.dim() != gap_space->size()) throw ValidationError("operator lives on another space");
  for (const auto& v : vectors)
    for (const auto& [x, value] : v) {
      (void)value;
      if (x >= gap_space->size()) throw ValidationError("vector is supported outside the window");
    }

  auto tail_small = [&](const std::vector<char>& inside) {
    for (const auto& v : vectors) {
      Rational sum1 = 0, max = 0;
      double sum_p = 0;
      for (const auto& [x, value] : v) {
        if (inside[x]) continue;
        auto m = abs_value(value);
        sum1 += m;
        max = std::max(max, m);
        sum_p += std::pow(to_double(m), p);
      }
      bool small;
      if (p == 1) small = sum1 < epsilon;
      else if (std::isinf(p)) small = max < epsilon;
      else small = std::pow(sum_p, 1.0 / p) < to_double(epsilon);
      if (!small) return false;
    }
    return true;
  };

  std::vector<char> inside(gap_space->size(), 0);
  PointSet support;
  for (std::size_t n = 1; n <= blocks.size(); ++n) {
    for (auto x : blocks[n - 1]) {
      inside[x] = 1;
      support.push_back(x);
    }
    std::sort(support.begin(), support.end());
    auto proj = SparseOperator::indicator(gap_space, support);
    bool commutes = std::all_of(ops.begin(), ops.end(),
                                [&](const SparseOperator& t) { return commutator(t, proj).is_zero(); });
    if (commutes && tail_small(inside)) {
      if (proj.norm1() != 1 || proj.norm_inf() != 1)
        throw InvariantViolation("projection onto blocks does not have norm one");
      return {static_cast<int>(n), support, std::move(proj)};
    }
  }
  throw InvariantViolation("the identity on the whole window failed the projection test");
}

IdealWitness ideal_witness(const SpacePtr& space, const PointSet& a, const PointSet& b, int radius) {
  if (radius < 0) throw ValidationError("R must be >= 0");
  check_points(*space, a, "A");
  check_points(*space, b, "B");
  for (auto x : a) {
    auto d = space->distance(x, b);
    if (!d || *d > radius)
      throw PreconditionError("point " + space->label(x) + " of A is further than R from B");
  }
  auto family = tij_family(space, radius);
  const auto one_b = SparseOperator::indicator(space, b);
  SparseOperator counts(space);
  const std::size_t n = family.classes();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto tij = to_operator(family.at(i, j));
      auto tji = to_operator(family.at(j, i));
      counts += tji * one_b * tij;
    }
  if (!counts.is_diagonal()) throw InvariantViolation("count operator is not diagonal");

  SparseOperator f(space);
  for (auto y : a) {
    const Rational c = counts.at(y, y);
    if (c < 1 || c > static_cast<long>(n) || c.get_den() != 1)
      throw InvariantViolation("count at " + space->label(y) + " is outside {1..n}");
    f.set(y, y, 1 / c);
  }
  const auto one_a = SparseOperator::indicator(space, a);
  if (!(f * one_a * counts == one_a)) throw InvariantViolation("ideal witness identity fails");
  return {std::move(f), std::move(counts), std::move(family)};
}

MvSplit mv_split(const SparseOperator& a, const UVDecomposition& uv) {
  const Space& space = *a.space();
  const auto u = set_union(uv.u_pieces);
  const auto v = set_union(uv.v_pieces);
  check_points(space, u, "U");
  check_points(space, v, "V");
  std::vector<char> seen(space.size(), 0);
  for (auto x : u) seen[x] = 1;
  for (auto x : v) {
    if (seen[x]) throw ValidationError("U and V overlap at " + space.label(x));
    seen[x] = 1;
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw ValidationError("U and V do not cover the space");

  MvSplit out{a.left_restrict(u), a.left_restrict(v)};
  if (!(out.x1 + out.x2 == a)) throw InvariantViolation("split does not sum to a");
  const auto n1 = a.norm1(), ninf = a.norm_inf();
  for (const auto* x : {&out.x1, &out.x2})
    if (x->norm1() > n1 || x->norm_inf() > ninf)
      throw InvariantViolation("split piece has larger norm than a");
  return out;
}

MvGlue mv_glue(const SparseOperator& a, const SparseOperator& b, const UVDecomposition& uv, int r,
               const Rational& epsilon) {
  if (r < 0) throw ValidationError("r must be >= 0");
  const Space& space = *a.space();
  if (b.dim() != a.dim()) throw ValidationError("a and b live on different spaces");
  MvGlue out{SparseOperator(a.space()), {}, {}, 0, 0, 0, 0, 0, 0, false};
  std::vector<PointSet> u_nbhd, v_nbhd;
  for (const auto& piece : uv.u_pieces) u_nbhd.push_back(neighbourhood_of(space, piece, r));
  for (const auto& piece : uv.v_pieces) v_nbhd.push_back(neighbourhood_of(space, piece, r));
  out.chi = set_union(u_nbhd);
  out.chi_prime = set_union(v_nbhd);

  if (!(a.left_restrict(out.chi).right_restrict(out.chi) == a))
    throw ValidationError("a is not supported on the neighbourhood of U");
  if (!(b.left_restrict(out.chi_prime).right_restrict(out.chi_prime) == b))
    throw ValidationError("b is not supported on the neighbourhood of V");

  out.c = (a.right_restrict(out.chi_prime) + b.right_restrict(out.chi)) * Rational(1, 2);
  const auto ab = a - b, ac = a - out.c, bc = b - out.c;
  out.a_b_1 = ab.norm1();
  out.a_c_1 = ac.norm1();
  out.b_c_1 = bc.norm1();
  out.a_b_inf = ab.norm_inf();
  out.a_c_inf = ac.norm_inf();
  out.b_c_inf = bc.norm_inf();
  const Rational bound = Rational(5, 2) * epsilon;
  const bool ok1 = !(out.a_b_1 < epsilon) || (out.a_c_1 < bound && out.b_c_1 < bound);
  const bool okinf = !(out.a_b_inf < epsilon) || (out.a_c_inf < bound && out.b_c_inf < bound);
  out.within_bound = ok1 && okinf;
  return out;
}

BlockDecomposition block_decompose(const SparseOperator& a, int r) {
  const Space& space = *a.space();
  BlockDecomposition out{r_components(space, r), {}, a};
  for (const auto& cls : out.classes.classes) {
    auto block = a.left_restrict(cls).right_restrict(cls);
    out.residue -= block;
    out.blocks.push_back(std::move(block));
  }
  return out;
}

CuntzFamily cuntz_build(const SpacePtr& space, const ParadoxCertificate& cert) {
  if (auto problem = verify_certificate(*space, cert))
    throw ValidationError("certificate does not verify: " + *problem);
  auto plus = PartialTranslation::from_pairs(space, cert.plus_pairs);
  auto minus = PartialTranslation::from_pairs(space, cert.minus_pairs);
  auto s1 = to_operator(plus);
  auto s2 = to_operator(minus);
  auto t1 = s1.transpose();
  auto t2 = s2.transpose();
  auto range = plus.range();
  auto r2 = minus.range();
  range.insert(range.end(), r2.begin(), r2.end());
  std::sort(range.begin(), range.end());
  return {std::move(s1), std::move(s2), std::move(t1), std::move(t2), cert.interior, std::move(range)};
}

LeavittReport leavitt_verify(const CuntzFamily& fam) {
  const auto& space = fam.s1.space();
  const auto unit = SparseOperator::indicator(space, fam.interior);
  const SparseOperator zero(space);
  LeavittReport r;
  r.t1s1 = fam.t1 * fam.s1 == unit;
  r.t2s2 = fam.t2 * fam.s2 == unit;
  r.t1s2 = fam.t1 * fam.s2 == zero;
  r.t2s1 = fam.t2 * fam.s1 == zero;
  r.sum = fam.s1 * fam.t1 + fam.s2 * fam.t2 == SparseOperator::indicator(space, fam.range);
  r.boundary = complement(*space, fam.range);
  return r;
}

std::variant<EquivWitness, EquivFailure> alg_equiv_check(const SparseOperator& e,
                                                         const SparseOperator& f,
                                                         const SparseOperator& x,
                                                         const SparseOperator& y) {
  if (!(e * e == e)) return EquivFailure{"e^2 = e"};
  if (!(f * f == f)) return EquivFailure{"f^2 = f"};
  if (!(x * y == e)) return EquivFailure{"xy = e"};
  if (!(y * x == f)) return EquivFailure{"yx = f"};
  auto xn = e * x * f;
  auto yn = f * y * e;
  if (!(xn * yn == e) || !(yn * xn == f))
    throw InvariantViolation("normalized witnesses fail");
  return EquivWitness{e, f, std::move(xn), std::move(yn)};
}

StandardForm standard_form_witness(const CuntzFamily& fam) {
  const auto& space = fam.s1.space();
  const auto unit = SparseOperator::indicator(space, fam.interior);
  auto e = fam.s1 * fam.t1;
  auto rest = SparseOperator::indicator(space, fam.range) - e;
  auto first = alg_equiv_check(e, unit, fam.s1, fam.t1);
  auto second = alg_equiv_check(rest, unit, fam.s2, fam.t2);
  if (auto* fail = std::get_if<EquivFailure>(&first))
    throw InvariantViolation("e ~ 1 fails at " + fail->identity);
  if (auto* fail = std::get_if<EquivFailure>(&second))
    throw InvariantViolation("1 - e ~ 1 fails at " + fail->identity);
  return {std::move(e), std::get<EquivWitness>(std::move(first)),
          std::get<EquivWitness>(std::move(second))};
}

NonCancellation noncancellation_witness(const SpacePtr& space, int r,
                                        const std::vector<std::vector<Point>>& rays) {
  if (r < 1) throw ValidationError("r must be >= 1");
  const Space& sp = *space;
  std::vector<char> used(sp.size(), 0);
  for (std::size_t n = 0; n < rays.size(); ++n) {
    const auto& ray = rays[n];
    if (ray.empty()) throw ValidationError("ray is empty");
    check_points(sp, ray, "ray");
    if (n > 0 && ray.size() <= rays[n - 1].size())
      throw ValidationError("ray lengths must strictly increase");
    for (auto x : ray) {
      if (used[x]) throw ValidationError("rays overlap at " + sp.label(x));
      used[x] = 1;
    }
    for (std::size_t i = 0; i + 1 < ray.size(); ++i) {
      if (sp.distance(ray[i], ray[i + 1]) > 2 * r)
        throw ValidationError("consecutive ray points further than 2r apart");
      const long d = sp.distance(ray[0], ray[i + 1]);
      const long k = static_cast<long>(i) + 1;
      if (d < k * r || d > (k + 1) * r)
        throw ValidationError("ray point " + sp.label(ray[i + 1]) + " breaks d(x_1, x_{i+1}) in [ir,(i+1)r]");
    }
  }
  if (rays.size() > 1) {
    std::vector<PointSet> sets;
    for (const auto& ray : rays) sets.push_back(make_point_set(sp, ray));
    int previous = 0;
    for (std::size_t n = 0; n < sets.size(); ++n) {
      std::optional<int> gap;
      for (std::size_t m = 0; m < sets.size(); ++m) {
        if (m == n) continue;
        int d = *sp.distance(sets[n], sets[m]);
        gap = gap ? std::min(*gap, d) : d;
      }
      if (*gap <= 0 || *gap < previous)
        throw ValidationError("distances between rays must be positive and non-decreasing");
      previous = *gap;
    }
  }

  NonCancellation out{SparseOperator(space), SparseOperator(space), SparseOperator(space),
                      SparseOperator(space), {}, {}};
  for (Point x = 0; x < sp.size(); ++x)
    if (!used[x]) {
      out.v.set(x, x, 1);
      out.w.set(x, x, 1);
    }
  for (const auto& ray : rays) {
    for (std::size_t i = 0; i + 1 < ray.size(); ++i) {
      out.v.set(ray[i + 1], ray[i], 1);
      out.w.set(ray[i], ray[i + 1], 1);
    }
    out.last_points.push_back(ray.back());
    out.first_points.push_back(ray.front());
  }
  std::sort(out.last_points.begin(), out.last_points.end());
  std::sort(out.first_points.begin(), out.first_points.end());
  const auto one = SparseOperator::identity(space);
  out.p = one - SparseOperator::indicator(space, out.last_points);
  out.q = one - SparseOperator::indicator(space, out.first_points);
  if (!(out.w * out.v == out.p)) throw InvariantViolation("wv != p");
  if (!(out.v * out.w == out.q)) throw InvariantViolation("vw != q");
  return out;
}

}  // namespace coarsekit
