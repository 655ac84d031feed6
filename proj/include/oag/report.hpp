#pragma once

#include <nlohmann/json_fwd.hpp>

#include "oag/field.hpp"
#include "oag/rank.hpp"

// Single-header nlohmann/json lives in vendor/json.hpp; the cpp includes it.
#include <string>

namespace oag {

using Json = nlohmann::json;

inline constexpr int kReportSchemaVersion = 1;

// JSON building blocks. Exact integers are emitted as JSON integers when
// they fit 64 bits and as decimal strings otherwise; the two infinities are
// the strings "inf" (moduli, exponents, indices) and "aleph0" (ranks).
Json extnat_to_json(const ExtNat& v);
Json rank_value_to_json(const RankValue& v);
Json cut_to_json(const Presentation& pres, const Cut& c);
Cut cut_from_json(const Presentation& pres, const Json& j);
Json ladder_to_json(const LadderSubgroup& a);
LadderSubgroup ladder_from_json(const PresentationPtr& pres, const Json& j);
Json rank_report_to_json(const Presentation& pres, const RankReport& rep);

Json kaplansky_to_json(const KaplanskyReport& rep);
Json transfer_to_json(const TransferVerdict& v);

FieldDescriptor field_descriptor_from_json(const Json& j);
ValuedFieldDescriptor valued_field_from_json(const Json& j);

// A full analysis report: input text, normalized form, rank data plus the
// witnesses. Loading re-verifies every witness through the exact index op
// and rejects the document when a witness fails its criterion.
struct Report {
  std::string input;
  std::string normalized;
  PresentationPtr pres;
  RankReport rank;
};

Report analyze(const std::string& input_text);
Json report_to_json(const Report& r);
Report report_from_json(const Json& j);

std::string report_text(const Report& r);  // human-readable rendering

}  // namespace oag
