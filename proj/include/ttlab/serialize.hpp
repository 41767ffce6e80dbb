#pragma once

#include <json.hpp>

#include "ttlab/pingpong.hpp"
#include "ttlab/stallings.hpp"
#include "ttlab/strata.hpp"

namespace ttlab {

using Json = nlohmann::json;

Json to_json(const EGCertificate& c);
Json to_json(const Containment& c);
Json to_json(const PingPongCertificate& c);
Json to_json(const FailureTrace& f);
Json to_json(const FreenessReport& r);
Json to_json(const PeriodicClassReport& r);
Json to_json(const EvidenceReport& r);
Json to_json(const SubgroupGraph& s);
Json to_json(const EdgeletDecomposition& d);
Json to_json(const Filtration& filt, const GraphMap& f);

/// Reads what to_json(PingPongCertificate) writes. Throws ParseError on
/// missing or mistyped fields.
PingPongCertificate pingpong_from_json(const Json& j);

}  // namespace ttlab
