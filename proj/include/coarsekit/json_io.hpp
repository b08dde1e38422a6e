#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "coarsekit/amen.hpp"
#include "coarsekit/error.hpp"
#include "coarsekit/ktheory.hpp"
#include "coarsekit/norm.hpp"
#include "coarsekit/roe.hpp"
#include "coarsekit/space.hpp"
#include "coarsekit/sparse_operator.hpp"
#include "coarsekit/translations.hpp"

namespace coarsekit {

using Json = nlohmann::ordered_json;

/// Malformed JSON input; `pointer` names the offending field (RFC 6901).
class JsonError : public ValidationError {
 public:
  JsonError(std::string pointer, const std::string& what)
      : ValidationError(what + " at " + (pointer.empty() ? std::string("/") : pointer)),
        pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

Json parse_json(std::string_view text);

Json to_json(const FamilyTag& tag);
FamilyTag family_from_json(const Json& j, const std::string& path = "");

/// {family_tag, points, metric}; metric is the lower triangle row by row.
Json to_json(const Space& space);
/// Rebuilds from family_tag when present, otherwise from points + metric.
SpacePtr space_from_json(const Json& j, const std::string& path = "");

Json to_json(const Partition& p);
Json to_json(const SeparatedPartition& p);
Json to_json(const UVDecomposition& uv);
Json to_json(const PartialTranslation& t);

Json to_json(const ParadoxCertificate& c);
ParadoxCertificate certificate_from_json(const Json& j, const std::string& path = "");
Json to_json(const HallViolation& v);
HallViolation hall_violation_from_json(const Json& j, const std::string& path = "");

/// {space_id, triplets: [[row, col, num, den]]}; space_id is the compact
/// family tag.
Json to_json(const SparseOperator& a);
SparseOperator operator_from_json(const Json& j, const std::string& path = "");
/// Like operator_from_json but on a given space; a space_id, if present,
/// must describe the same window.
SparseOperator operator_from_json(const Json& j, const SpacePtr& space, const std::string& path = "");

Json to_json(const NormEstimate& e);

Json to_json(const TowerSpec& t);
TowerSpec tower_from_json(const Json& j, const std::string& path = "");
Json to_json(const K0Class& x);
K0Class k0_from_json(const Json& j, const std::string& path = "");
Json to_json(const Verdict& v);
Json to_json(const SupernaturalNumber& s);
Json to_json(const TowerComparison& c);

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j, const std::string& path = "");
std::int64_t int_from_json(const Json& j, const std::string& path = "");
std::vector<std::int64_t> int_array_from_json(const Json& j, const std::string& path = "");
const Json& field(const Json& j, const char* key, const std::string& path);

}  // namespace coarsekit
