#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "whichwhen/model.hpp"
#include "whichwhen/query.hpp"

namespace whichwhen {

/// Opaque color name chosen by the client ("green", "#1b9e77", ...).
using ColorToken = std::string;

/// What a range label is drawn as: a color, neutral gray context, or hidden.
/// Hidden renders like context; it only matters for the hide-uncolored rule.
struct ColorChoice {
  enum class Kind { Token, Context, Hidden };

  Kind kind = Kind::Context;
  ColorToken token;

  static ColorChoice color(ColorToken t) { return {Kind::Token, std::move(t)}; }
  static ColorChoice context() { return {}; }
  static ColorChoice hidden() { return {Kind::Hidden, {}}; }

  bool is_color() const noexcept { return kind == Kind::Token; }
  bool operator==(const ColorChoice&) const = default;
};

/// Range-to-color map. Undefined always maps to context.
struct ColorAssignment {
  ColorChoice low;
  ColorChoice mid;
  ColorChoice high;

  const ColorChoice& choice_for(RangeLabel label) const;
  /// Distinct tokens in Low, Mid, High order.
  std::vector<ColorToken> tokens() const;
  /// Throws Invalid("invalid-color-assignment") when no label carries a
  /// color, a token uses a reserved name, or Mid is colored in a two-range query.
  void validate(bool three_range) const;

  bool operator==(const ColorAssignment&) const = default;
};

/// Colored segments shorter than min_len or longer than max_len are demoted
/// to context.
struct SegmentFilter {
  std::optional<std::size_t> min_len;
  std::optional<std::size_t> max_len;

  void validate() const;
  bool operator==(const SegmentFilter&) const = default;
};

/// Inclusive timestep range.
struct TimeWindow {
  TimeIndex start = 0;
  TimeIndex end = 0;

  std::size_t length() const noexcept { return end - start + 1; }
  bool operator==(const TimeWindow&) const = default;
};

struct SortSpec {
  std::optional<ColorToken> color;  // defaults to the first assigned token
  std::optional<TimeWindow> window;
  bool group_mode = false;
  bool hide_uncolored = false;

  bool operator==(const SortSpec&) const = default;
};

/// A drawn interval: a color token, or nullopt for gray context.
struct DisplaySegment {
  TimeIndex start = 0;
  TimeIndex end = 0;
  std::optional<ColorToken> color;

  std::size_t length() const noexcept { return end - start + 1; }
  bool operator==(const DisplaySegment&) const = default;
};

/// Display segments of one case, as input to sort_cases.
struct ColoredCase {
  std::string id;
  std::string category;
  std::vector<DisplaySegment> segments;
};

struct OrganizedCase {
  std::string id;
  std::string category;
  std::vector<DisplaySegment> segments;
  /// Full-axis colored length for every assigned token.
  std::map<ColorToken, std::size_t> colored_lengths;
  /// Colored length of the sort color within the sort window.
  std::size_t sort_key = 0;

  bool operator==(const OrganizedCase&) const = default;
};

struct CaseGroup {
  std::optional<std::string> category;  // nullopt when group mode is off
  std::vector<std::string> case_ids;

  bool operator==(const CaseGroup&) const = default;
};

struct OrganizedResult {
  bool grouped = false;
  std::vector<CaseGroup> groups;
  /// Visible cases in display order (groups concatenated).
  std::vector<OrganizedCase> cases;
  std::vector<Series> threshold_curves;

  bool operator==(const OrganizedResult&) const = default;
};

std::vector<DisplaySegment> apply_colors_and_filter(std::span<const Segment> segments,
                                                    const ColorAssignment& colors,
                                                    const SegmentFilter& filter);

/// Timesteps of `color` inside `window` (the whole axis when absent).
std::size_t colored_length(std::span<const DisplaySegment> segments, const ColorToken& color,
                           const std::optional<TimeWindow>& window = std::nullopt);

/// Orders cases by sort key descending, ties by id. In group mode, categories
/// come first ordered by mean key descending (ties by name). `tokens` are the
/// assigned color tokens; `sort.color` must be one of them.
/// Throws Invalid("unassigned-sort-color").
OrganizedResult sort_cases(std::vector<ColoredCase> cases, std::span<const ColorToken> tokens,
                           const SortSpec& sort);

void validate_window(const std::optional<TimeWindow>& window, std::size_t timestep_count);

}  // namespace whichwhen
