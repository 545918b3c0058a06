#pragma once

#include <vector>

#include "whichwhen/model.hpp"
#include "whichwhen/organize.hpp"
#include "whichwhen/query.hpp"

namespace whichwhen {

/// Everything needed to go from a dataset to what the views draw.
struct QueryRequest {
  QuerySpec query;
  ColorAssignment colors;
  SegmentFilter filter;
  SortSpec sort;

  bool operator==(const QueryRequest&) const = default;
};

struct QueryResult {
  /// Request with defaults filled in (sort color, irrelevant criterion params).
  QueryRequest resolved;
  OrganizedResult organized;
  /// Threshold curves in original-value space for the line chart. Equal to
  /// the threshold curves for the value criterion; the rank envelope for the
  /// rank criterion; empty for the other derived criteria.
  std::vector<Series> chart_curves;
};

/// Rejects invalid requests before any computation. Returns the request with
/// defaults resolved.
QueryRequest validate_request(const Dataset& dataset, const QueryRequest& request);

/// derive -> resolve thresholds -> classify -> segment -> color/filter -> sort.
QueryResult run_query(const Dataset& dataset, const QueryRequest& request);

}  // namespace whichwhen
