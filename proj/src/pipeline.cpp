#include "whichwhen/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "whichwhen/error.hpp"

namespace whichwhen {
namespace {

// Parameters that the criterion kind ignores are reset so that equivalent
// requests echo identically.
Criterion normalized(Criterion c) {
  if (c.kind != CriterionKind::NetChange && c.kind != CriterionKind::PctChange) c.delta = 1;
  if (c.kind != CriterionKind::Variance) c.window = 1;
  return c;
}

ThresholdSpec normalized(ThresholdSpec s) {
  if (s.kind == ThresholdKind::Constant) {
    s.offset = 0.0;
    s.ego_id.clear();
  } else {
    s.value = 0.0;
    if (s.kind == ThresholdKind::AggregateOffset) s.ego_id.clear();
  }
  return s;
}

Series rank_envelope(const Dataset& dataset, const Series& rank_threshold) {
  Series out(dataset.timestep_count());
  // Constant rank thresholds only: rank <= 10.5 selects the same cases as rank <= 10.
  const Value& first = rank_threshold.front();
  if (!first || *first < 1.0) return out;
  const double n = std::floor(*first);
  if (n > static_cast<double>(dataset.case_count())) return out;
  return rank_threshold_curve(dataset, static_cast<int>(n));
}

}  // namespace

QueryRequest validate_request(const Dataset& dataset, const QueryRequest& request) {
  QueryRequest out = request;
  out.query.criterion = normalized(out.query.criterion);
  if (auto* two = std::get_if<TwoRange>(&out.query.mode)) {
    two->threshold = normalized(two->threshold);
  } else {
    auto& three = std::get<ThreeRange>(out.query.mode);
    three.lower = normalized(three.lower);
    three.upper = normalized(three.upper);
  }

  validate_query(dataset, out.query);
  out.colors.validate(out.query.is_three_range());
  out.filter.validate();
  validate_window(out.sort.window, dataset.timestep_count());

  const std::vector<ColorToken> tokens = out.colors.tokens();
  if (!out.sort.color) {
    out.sort.color = tokens.front();
  } else if (std::find(tokens.begin(), tokens.end(), *out.sort.color) == tokens.end()) {
    throw Error(ErrorKind::Invalid, "unassigned-sort-color",
                "sort color '" + *out.sort.color + "' is not assigned to any range");
  }
  return out;
}

QueryResult run_query(const Dataset& dataset, const QueryRequest& request) {
  QueryResult result;
  result.resolved = validate_request(dataset, request);
  const QueryRequest& req = result.resolved;

  LabelMatrix labels = classify(dataset, req.query);

  std::vector<ColoredCase> colored;
  colored.reserve(dataset.case_count());
  for (std::size_t c = 0; c < dataset.case_count(); ++c) {
    const DataCase& dc = dataset.cases()[c];
    const std::vector<Segment> segments = segment_labels(dc.id, labels.rows[c]);
    colored.push_back(ColoredCase{dc.id, std::string(dc.category_or_default()),
                                  apply_colors_and_filter(segments, req.colors, req.filter)});
  }

  const std::vector<ColorToken> tokens = req.colors.tokens();
  result.organized = sort_cases(std::move(colored), tokens, req.sort);

  switch (req.query.criterion.kind) {
    case CriterionKind::Value:
      result.chart_curves = labels.thresholds;
      break;
    case CriterionKind::Rank:
      for (const Series& threshold : labels.thresholds) {
        result.chart_curves.push_back(rank_envelope(dataset, threshold));
      }
      break;
    default:
      break;
  }
  result.organized.threshold_curves = std::move(labels.thresholds);
  return result;
}

}  // namespace whichwhen
