#pragma once

#include "boundinfo/dist.hpp"
#include "boundinfo/measures.hpp"
#include "boundinfo/protocols.hpp"
#include "boundinfo/quantum.hpp"

#include <json.hpp>

#include <string>

namespace boundinfo::io {

using nlohmann::json;

json dist_to_json(const dist::JointDistribution& d);
dist::JointDistribution dist_from_json(const json& j);

/// One column per register plus "p"; rows in lexicographic symbol order.
std::string dist_to_csv(const dist::JointDistribution& d);

/// Fixed-width text table, same row order as the CSV.
std::string dist_to_text(const dist::JointDistribution& d);

json channel_to_json(const measures::EveChannel& ch);
measures::EveChannel channel_from_json(const json& j);

json measure_report(const measures::MeasureValue& v);
json search_report(const measures::SearchResult& r);

json state_to_json(const quantum::DensityOperator& rho);
quantum::DensityOperator state_from_json(const json& j);

json transcript_to_json(const proto::Transcript& t);

}  // namespace boundinfo::io
