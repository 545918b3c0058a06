#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "whichwhen/ingest.hpp"
#include "whichwhen/pipeline.hpp"

namespace whichwhen::wire {

using nlohmann::json;

/// Decodes a request body. Structural problems (wrong types, unknown enum
/// names) throw ParseError("bad-request"); semantic checks are left to
/// validate_request.
QueryRequest request_from_json(const json& body);
json to_json(const QueryRequest& request);

/// The response document. Keys are emitted in sorted order, so identical
/// inputs serialize to identical bytes.
json response_to_json(const Dataset& dataset, const QueryResult& result);

/// Inverse of the organized part of response_to_json.
OrganizedResult organized_from_json(const json& response);

json report_to_json(const IngestReport& report);
json metadata_to_json(const Dataset& dataset);
/// Raw value arrays keyed by case id; null for missing. Empty `case_ids`
/// means every case. Throws NotFound("unknown-case").
json series_to_json(const Dataset& dataset, std::span<const std::string> case_ids);

/// One row per display segment of every visible case, in display order:
/// `case_id,start_label,end_label,color`.
std::string segments_to_csv(const Dataset& dataset, const QueryResult& result);

/// Two-space indented dump with a trailing newline.
std::string dump(const json& document);

}  // namespace whichwhen::wire
