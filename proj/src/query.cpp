#include "whichwhen/query.hpp"

#include <algorithm>
#include <cmath>

#include "whichwhen/error.hpp"

namespace whichwhen {

std::string_view to_string(RangeLabel label) {
  switch (label) {
    case RangeLabel::Low: return "low";
    case RangeLabel::Mid: return "mid";
    case RangeLabel::High: return "high";
    case RangeLabel::Undefined: return "undefined";
  }
  return "undefined";
}

Series resolve_threshold(const Dataset& dataset, const ThresholdSpec& spec) {
  switch (spec.kind) {
    case ThresholdKind::Constant:
      return Series(dataset.timestep_count(), spec.value);
    case ThresholdKind::AggregateOffset:
    case ThresholdKind::EgoOffset: {
      Series base = spec.kind == ThresholdKind::EgoOffset ? ego_series(dataset, spec.ego_id)
                                                          : compute_aggregate_series(dataset);
      for (Value& v : base) {
        if (v) *v += spec.offset;
      }
      return base;
    }
  }
  return Series(dataset.timestep_count());
}

Series rank_threshold_curve(const Dataset& dataset, int n) {
  if (n < 1) {
    throw Error(ErrorKind::Invalid, "invalid-rank-n",
                "rank threshold n must be >= 1, got " + std::to_string(n));
  }
  const auto wanted = static_cast<std::size_t>(n);
  Series curve(dataset.timestep_count());
  std::vector<double> column;
  column.reserve(dataset.case_count());
  for (TimeIndex t = 0; t < curve.size(); ++t) {
    column.clear();
    for (const DataCase& c : dataset.cases()) {
      if (c.values[t]) column.push_back(*c.values[t]);
    }
    if (column.size() < wanted) continue;
    auto nth = column.begin() + static_cast<std::ptrdiff_t>(wanted - 1);
    std::nth_element(column.begin(), nth, column.end(), std::greater<>());
    curve[t] = *nth;
  }
  return curve;
}

namespace {

void validate_threshold(const Dataset& dataset, const QuerySpec& query, const ThresholdSpec& spec) {
  if (spec.kind == ThresholdKind::Constant && !std::isfinite(spec.value)) {
    throw Error(ErrorKind::Invalid, "invalid-threshold", "constant threshold must be finite");
  }
  if (spec.is_variable()) {
    if (!std::isfinite(spec.offset)) {
      throw Error(ErrorKind::Invalid, "invalid-threshold", "threshold offset must be finite");
    }
    if (query.criterion.kind != CriterionKind::Value) {
      throw Error(ErrorKind::Invalid, "invalid-criterion-threshold",
                  "variable thresholds require criterion 'value', got '" +
                      std::string(to_string(query.criterion.kind)) + "'");
    }
  }
  if (spec.kind == ThresholdKind::EgoOffset && !dataset.index_of(spec.ego_id)) {
    throw Error(ErrorKind::Invalid, "unknown-ego", "unknown ego case '" + spec.ego_id + "'");
  }
}

void validate_spec(const Dataset& dataset, const QuerySpec& query) {
  query.criterion.validate(dataset.timestep_count());
  if (const auto* two = std::get_if<TwoRange>(&query.mode)) {
    validate_threshold(dataset, query, two->threshold);
  } else {
    const auto& three = std::get<ThreeRange>(query.mode);
    validate_threshold(dataset, query, three.lower);
    validate_threshold(dataset, query, three.upper);
  }
}

std::vector<Series> resolve_all(const Dataset& dataset, const QuerySpec& query) {
  std::vector<Series> curves;
  if (const auto* two = std::get_if<TwoRange>(&query.mode)) {
    curves.push_back(resolve_threshold(dataset, two->threshold));
    return curves;
  }
  const auto& three = std::get<ThreeRange>(query.mode);
  curves.push_back(resolve_threshold(dataset, three.lower));
  curves.push_back(resolve_threshold(dataset, three.upper));
  for (TimeIndex t = 0; t < dataset.timestep_count(); ++t) {
    const Value& lo = curves[0][t];
    const Value& hi = curves[1][t];
    if (lo && hi && *lo > *hi) {
      throw Error(ErrorKind::Invalid, "crossed-thresholds",
                  "lower threshold exceeds upper threshold at timestep " + std::to_string(t) +
                      " ('" + dataset.axis().label(t) + "')");
    }
  }
  return curves;
}

}  // namespace

void validate_query(const Dataset& dataset, const QuerySpec& query) {
  validate_spec(dataset, query);
  resolve_all(dataset, query);
}

LabelMatrix classify(const Dataset& dataset, const QuerySpec& query) {
  validate_spec(dataset, query);

  LabelMatrix out;
  out.thresholds = resolve_all(dataset, query);
  const DerivedMatrix derived = derive(dataset, query.criterion);
  const bool three = query.is_three_range();
  const std::size_t steps = dataset.timestep_count();

  out.rows.assign(dataset.case_count(), std::vector<RangeLabel>(steps, RangeLabel::Undefined));
  for (std::size_t c = 0; c < derived.rows.size(); ++c) {
    const Series& x = derived.rows[c];
    auto& row = out.rows[c];
    for (TimeIndex t = 0; t < steps; ++t) {
      const Value& lo = out.thresholds[0][t];
      if (!x[t] || !lo) continue;
      if (!three) {
        row[t] = *x[t] <= *lo ? RangeLabel::Low : RangeLabel::High;
        continue;
      }
      const Value& hi = out.thresholds[1][t];
      if (!hi) continue;
      if (*x[t] <= *lo) {
        row[t] = RangeLabel::Low;
      } else if (*x[t] >= *hi) {
        row[t] = RangeLabel::High;
      } else {
        row[t] = RangeLabel::Mid;
      }
    }
  }
  return out;
}

std::vector<Segment> segment_labels(std::string_view case_id, std::span<const RangeLabel> labels) {
  std::vector<Segment> segments;
  for (const Run<RangeLabel>& run : run_length_encode(labels)) {
    segments.push_back(Segment{std::string(case_id), run.start, run.end, run.value});
  }
  return segments;
}

}  // namespace whichwhen
