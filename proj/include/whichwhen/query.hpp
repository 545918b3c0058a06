#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "whichwhen/derived.hpp"
#include "whichwhen/model.hpp"
#include "whichwhen/runs.hpp"

namespace whichwhen {

enum class ThresholdKind { Constant, AggregateOffset, EgoOffset };

/// A threshold that is either fixed or follows another series (the mean over
/// all cases, or one "ego" case) plus an offset.
struct ThresholdSpec {
  ThresholdKind kind = ThresholdKind::Constant;
  double value = 0.0;
  double offset = 0.0;
  std::string ego_id;

  static ThresholdSpec constant(double v) { return {ThresholdKind::Constant, v, 0.0, {}}; }
  static ThresholdSpec aggregate_offset(double off) {
    return {ThresholdKind::AggregateOffset, 0.0, off, {}};
  }
  static ThresholdSpec ego_offset(std::string ego, double off) {
    return {ThresholdKind::EgoOffset, 0.0, off, std::move(ego)};
  }

  bool is_variable() const noexcept { return kind != ThresholdKind::Constant; }
  bool operator==(const ThresholdSpec&) const = default;
};

struct TwoRange {
  ThresholdSpec threshold;
  bool operator==(const TwoRange&) const = default;
};

struct ThreeRange {
  ThresholdSpec lower;
  ThresholdSpec upper;
  bool operator==(const ThreeRange&) const = default;
};

struct QuerySpec {
  Criterion criterion;
  std::variant<TwoRange, ThreeRange> mode;

  bool is_three_range() const noexcept { return std::holds_alternative<ThreeRange>(mode); }
  bool operator==(const QuerySpec&) const = default;
};

enum class RangeLabel : std::uint8_t { Low, Mid, High, Undefined };

std::string_view to_string(RangeLabel label);

/// Per-case label rows (dataset case order) plus the resolved threshold
/// curves: one for a two-range query, lower then upper for three ranges.
struct LabelMatrix {
  std::vector<std::vector<RangeLabel>> rows;
  std::vector<Series> thresholds;
};

struct Segment {
  std::string case_id;
  TimeIndex start = 0;
  TimeIndex end = 0;  // inclusive
  RangeLabel label = RangeLabel::Undefined;

  std::size_t length() const noexcept { return end - start + 1; }
  bool operator==(const Segment&) const = default;
};

/// Per-timestep threshold values; missing values of the followed series
/// propagate. Throws Invalid("unknown-ego").
Series resolve_threshold(const Dataset& dataset, const ThresholdSpec& spec);

/// Value of the n-th largest present value at each timestep (counting
/// duplicates), so that rank <= n iff value >= curve. Missing when fewer than
/// n values are present. Throws Invalid("invalid-rank-n") for n < 1.
Series rank_threshold_curve(const Dataset& dataset, int n);

/// Checks everything classify() would reject, without computing labels.
void validate_query(const Dataset& dataset, const QuerySpec& query);

/// Labels every (case, timestep). Two ranges: Low iff x <= t, High iff x > t.
/// Three ranges: Low iff x <= lower, High iff x >= upper, Mid otherwise.
/// Undefined when the criterion value or a needed threshold is missing.
LabelMatrix classify(const Dataset& dataset, const QuerySpec& query);

std::vector<Segment> segment_labels(std::string_view case_id, std::span<const RangeLabel> labels);

}  // namespace whichwhen
