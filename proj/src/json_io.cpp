#include "coarsekit/json_io.hpp"

#include <cmath>

namespace coarsekit {

namespace {

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw JsonError(path, "expected an array");
  return j;
}

int small_int(const Json& j, const std::string& path) {
  const auto v = int_from_json(j, path);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    throw JsonError(path, "integer out of range");
  return static_cast<int>(v);
}

std::vector<int> small_int_array(const Json& j, const std::string& path) {
  std::vector<int> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(small_int(j[i], at(path, i)));
  return out;
}

Point point_from_json(const Json& j, const std::string& path) {
  const auto v = int_from_json(j, path);
  if (v < 0) throw JsonError(path, "point id must be >= 0");
  return static_cast<Point>(v);
}

std::vector<std::pair<Point, Point>> pairs_from_json(const Json& j, const std::string& path) {
  std::vector<std::pair<Point, Point>> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) {
    const auto p = at(path, i);
    if (!j[i].is_array() || j[i].size() != 2) throw JsonError(p, "expected [src, dst]");
    out.emplace_back(point_from_json(j[i][0], at(p, 0)), point_from_json(j[i][1], at(p, 1)));
  }
  return out;
}

PointSet point_array(const Json& j, const std::string& path) {
  PointSet out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(point_from_json(j[i], at(path, i)));
  return out;
}

Json pairs_json(const std::vector<std::pair<Point, Point>>& pairs) {
  Json out = Json::array();
  for (const auto& [x, y] : pairs) out.push_back({x, y});
  return out;
}

Json labelled_classes(const std::vector<PointSet>& classes) {
  Json out = Json::array();
  for (const auto& c : classes) out.push_back(c);
  return out;
}

Json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

mpz_class integer_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return mpz_class(j.get<long>());
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw JsonError(path, "expected an integer");
    return z;
  }
  throw JsonError(path, "expected an integer");
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw JsonError("", std::string("malformed JSON: ") + e.what());
  }
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw JsonError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw JsonError(at(path, key), "missing field");
  return *it;
}

std::int64_t int_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw JsonError(path, "expected an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
    throw JsonError(path, "integer out of range");
  return j.get<std::int64_t>();
}

std::vector<std::int64_t> int_array_from_json(const Json& j, const std::string& path) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(int_from_json(j[i], at(path, i)));
  return out;
}

Json to_json(const Rational& q) {
  if (q.get_den() == 1) return integer_json(q.get_num());
  return Json(q.get_str());
}

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const ValidationError&) {
      throw JsonError(path, "expected a rational such as \"-3/4\"");
    }
  }
  throw JsonError(path, "expected an integer or a rational string");
}

Json to_json(const FamilyTag& tag) {
  Json out = Json::object();
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, family::Line>) {
          out["family"] = "z";
        } else if constexpr (std::is_same_v<F, family::Lattice>) {
          out["family"] = "zd";
          out["dim"] = f.dim;
        } else if constexpr (std::is_same_v<F, family::FreeGroup>) {
          out["family"] = "free";
          out["rank"] = f.rank;
        } else if constexpr (std::is_same_v<F, family::Tower>) {
          out["family"] = "tower";
          out["tower"] = to_json(f.tower);
        } else if constexpr (std::is_same_v<F, family::Gaps>) {
          out["family"] = "gap";
          out["sizes"] = f.sizes;
          out["gaps"] = f.gaps;
        } else {
          out["family"] = "table";
          out["labels"] = f.labels;
          out["table"] = f.table;
        }
      },
      tag.family);
  out["size"] = tag.size;
  return out;
}

FamilyTag family_from_json(const Json& j, const std::string& path) {
  const auto& name_json = field(j, "family", path);
  if (!name_json.is_string()) throw JsonError(at(path, "family"), "expected a string");
  const auto name = name_json.get<std::string>();
  FamilyTag tag;
  tag.size = small_int(field(j, "size", path), at(path, "size"));
  if (name == "z") {
    tag.family = family::Line{};
  } else if (name == "zd") {
    tag.family = family::Lattice{small_int(field(j, "dim", path), at(path, "dim"))};
  } else if (name == "free" || name == "f2") {
    int rank = 2;
    if (j.contains("rank")) rank = small_int(j["rank"], at(path, "rank"));
    tag.family = family::FreeGroup{rank};
  } else if (name == "tower") {
    tag.family = family::Tower{tower_from_json(field(j, "tower", path), at(path, "tower"))};
  } else if (name == "gap") {
    family::Gaps g;
    g.sizes = small_int_array(field(j, "sizes", path), at(path, "sizes"));
    g.gaps = small_int_array(field(j, "gaps", path), at(path, "gaps"));
    tag.family = std::move(g);
  } else if (name == "table") {
    family::Explicit e;
    const auto& labels = array(field(j, "labels", path), at(path, "labels"));
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (!labels[i].is_string()) throw JsonError(at(at(path, "labels"), i), "expected a string");
      e.labels.push_back(labels[i].get<std::string>());
    }
    const auto& table = array(field(j, "table", path), at(path, "table"));
    for (std::size_t i = 0; i < table.size(); ++i)
      e.table.push_back(small_int_array(table[i], at(at(path, "table"), i)));
    tag.family = std::move(e);
  } else {
    throw JsonError(at(path, "family"), "unknown family '" + name + "'");
  }
  return tag;
}

Json to_json(const Space& space) {
  Json metric = Json::array();
  for (Point x = 0; x < space.size(); ++x) {
    Json row = Json::array();
    for (Point y = 0; y <= x; ++y) row.push_back(space.distance(x, y));
    metric.push_back(std::move(row));
  }
  return Json{{"family_tag", to_json(space.tag())}, {"points", space.labels()}, {"metric", metric}};
}

SpacePtr space_from_json(const Json& j, const std::string& path) {
  if (j.is_object() && j.contains("family_tag")) {
    const auto tag = family_from_json(j["family_tag"], at(path, "family_tag"));
    try {
      return make_shared_window(tag.family, tag.size);
    } catch (const ValidationError& e) {
      throw JsonError(at(path, "family_tag"), e.what());
    }
  }
  family::Explicit e;
  const auto& points = array(field(j, "points", path), at(path, "points"));
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!points[i].is_string()) throw JsonError(at(at(path, "points"), i), "expected a string");
    e.labels.push_back(points[i].get<std::string>());
  }
  const auto& metric = array(field(j, "metric", path), at(path, "metric"));
  const std::size_t n = e.labels.size();
  if (metric.size() != n) throw JsonError(at(path, "metric"), "metric needs one row per point");
  e.table.assign(n, std::vector<int>(n, 0));
  for (std::size_t x = 0; x < n; ++x) {
    const auto p = at(at(path, "metric"), x);
    const auto row = small_int_array(metric[x], p);
    if (row.size() != x + 1) throw JsonError(p, "lower-triangular row " + std::to_string(x) + " needs " + std::to_string(x + 1) + " entries");
    for (std::size_t y = 0; y <= x; ++y) e.table[x][y] = e.table[y][x] = row[y];
  }
  try {
    return make_shared_window(e, static_cast<int>(n));
  } catch (const ValidationError& err) {
    throw JsonError(at(path, "metric"), err.what());
  }
}

Json to_json(const Partition& p) {
  return Json{{"parameter", p.parameter}, {"classes", labelled_classes(p.classes)}};
}

Json to_json(const SeparatedPartition& p) {
  return Json{{"parameter", p.separation}, {"classes", labelled_classes(p.classes)}};
}

Json to_json(const UVDecomposition& uv) {
  return Json{{"r", uv.r},
              {"bound", uv.bound},
              {"u_pieces", labelled_classes(uv.u_pieces)},
              {"v_pieces", labelled_classes(uv.v_pieces)}};
}

Json to_json(const PartialTranslation& t) {
  return Json{{"pairs", pairs_json(t.pairs())}, {"displacement", t.displacement()}};
}

Json to_json(const ParadoxCertificate& c) {
  return Json{{"R", c.radius},
              {"collar", c.collar},
              {"interior", c.interior},
              {"plus_pairs", pairs_json(c.plus_pairs)},
              {"minus_pairs", pairs_json(c.minus_pairs)}};
}

ParadoxCertificate certificate_from_json(const Json& j, const std::string& path) {
  ParadoxCertificate c;
  c.radius = small_int(field(j, "R", path), at(path, "R"));
  c.collar = small_int(field(j, "collar", path), at(path, "collar"));
  c.interior = point_array(field(j, "interior", path), at(path, "interior"));
  c.plus_pairs = pairs_from_json(field(j, "plus_pairs", path), at(path, "plus_pairs"));
  c.minus_pairs = pairs_from_json(field(j, "minus_pairs", path), at(path, "minus_pairs"));
  return c;
}

Json to_json(const HallViolation& v) {
  Json set = Json::array();
  for (const auto& [x, sign] : v.set) set.push_back({x, sign});
  return Json{{"R", v.radius}, {"collar", v.collar}, {"set", set}, {"neighbourhood", v.neighbourhood}};
}

HallViolation hall_violation_from_json(const Json& j, const std::string& path) {
  HallViolation v;
  v.radius = small_int(field(j, "R", path), at(path, "R"));
  v.collar = small_int(field(j, "collar", path), at(path, "collar"));
  const auto sp = at(path, "set");
  const auto& set = array(field(j, "set", path), sp);
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto p = at(sp, i);
    if (!set[i].is_array() || set[i].size() != 2) throw JsonError(p, "expected [point, sign]");
    v.set.emplace_back(point_from_json(set[i][0], at(p, 0)), small_int(set[i][1], at(p, 1)));
  }
  v.neighbourhood = point_array(field(j, "neighbourhood", path), at(path, "neighbourhood"));
  return v;
}

Json to_json(const SparseOperator& a) {
  Json triplets = Json::array();
  for (const auto& t : a.triplets())
    triplets.push_back({t.row, t.col, integer_json(t.value.get_num()), integer_json(t.value.get_den())});
  return Json{{"space_id", to_json(a.space()->tag()).dump()}, {"triplets", triplets}};
}

namespace {

// space_id is the compact family tag, either as a string or inline.
FamilyTag family_from_space_id(const Json& id, const std::string& p) {
  Json tag_json;
  if (id.is_string()) {
    try {
      tag_json = Json::parse(id.get<std::string>());
    } catch (const Json::parse_error&) {
      throw JsonError(p, "space_id is not a family tag");
    }
  } else {
    tag_json = id;
  }
  return family_from_json(tag_json, p);
}

}  // namespace

SparseOperator operator_from_json(const Json& j, const std::string& path) {
  const auto p = at(path, "space_id");
  const auto tag = family_from_space_id(field(j, "space_id", path), p);
  SpacePtr space;
  try {
    space = make_shared_window(tag.family, tag.size);
  } catch (const ValidationError& e) {
    throw JsonError(p, e.what());
  }
  return operator_from_json(j, space, path);
}

SparseOperator operator_from_json(const Json& j, const SpacePtr& space, const std::string& path) {
  if (j.is_object() && j.contains("space_id")) {
    const auto p = at(path, "space_id");
    if (to_json(family_from_space_id(j["space_id"], p)).dump() != to_json(space->tag()).dump())
      throw JsonError(p, "space_id does not match the window");
  }
  const auto tp = at(path, "triplets");
  const auto& triplets = array(field(j, "triplets", path), tp);
  std::vector<Triplet> entries;
  for (std::size_t i = 0; i < triplets.size(); ++i) {
    const auto p = at(tp, i);
    const auto& t = triplets[i];
    if (!t.is_array() || t.size() != 4) throw JsonError(p, "expected [row, col, num, den]");
    const Point row = point_from_json(t[0], at(p, 0));
    const Point col = point_from_json(t[1], at(p, 1));
    if (row >= space->size()) throw JsonError(at(p, 0), "row outside the space");
    if (col >= space->size()) throw JsonError(at(p, 1), "column outside the space");
    const auto num = integer_from_json(t[2], at(p, 2));
    const auto den = integer_from_json(t[3], at(p, 3));
    if (den == 0) throw JsonError(at(p, 3), "zero denominator");
    Rational v(num, den);
    v.canonicalize();
    entries.push_back({row, col, v});
  }
  return SparseOperator::from_triplets(space, entries);
}

Json to_json(const NormEstimate& e) {
  Json p = std::isinf(e.p) ? Json("inf") : Json(e.p);
  return Json{{"p", p}, {"lower", e.lower}, {"upper", e.upper}, {"methods", e.methods}};
}

Json to_json(const TowerSpec& t) { return Json{{"prefix", t.prefix()}, {"cycle", t.cycle()}}; }

TowerSpec tower_from_json(const Json& j, const std::string& path) {
  auto prefix = int_array_from_json(field(j, "prefix", path), at(path, "prefix"));
  auto cycle = int_array_from_json(field(j, "cycle", path), at(path, "cycle"));
  if (cycle.empty()) throw JsonError(at(path, "cycle"), "cycle must be nonempty");
  try {
    return TowerSpec(std::move(prefix), std::move(cycle));
  } catch (const ValidationError& e) {
    throw JsonError(path, e.what());
  }
}

Json to_json(const K0Class& x) { return Json{{"preperiod", x.preperiod}, {"period", x.period}}; }

K0Class k0_from_json(const Json& j, const std::string& path) {
  K0Class x;
  x.preperiod = j.contains("preperiod") ? int_array_from_json(j["preperiod"], at(path, "preperiod"))
                                        : std::vector<std::int64_t>{};
  x.period = int_array_from_json(field(j, "period", path), at(path, "period"));
  if (x.period.empty()) throw JsonError(at(path, "period"), "period must be nonempty");
  return canonical(std::move(x));
}

Json to_json(const Verdict& v) {
  return Json{{"result", to_string(v.result)},
              {"level", v.level ? Json(*v.level) : Json(nullptr)},
              {"reason", v.reason}};
}

Json to_json(const SupernaturalNumber& s) {
  Json out = Json::object();
  for (const auto& [p, e] : s) out[std::to_string(p)] = e ? Json(*e) : Json("omega");
  return out;
}

Json to_json(const TowerComparison& c) {
  return Json{{"bijectively_coarsely_equivalent", c.bijectively_coarsely_equivalent},
              {"coarsely_equivalent", c.coarsely_equivalent},
              {"ordered_K0_unit_iso", c.ordered_k0_unit_iso},
              {"K0_iso", c.k0_iso}};
}

}  // namespace coarsekit
