#include "whichwhen/organize.hpp"

#include <algorithm>
#include <numeric>

#include "whichwhen/error.hpp"

namespace whichwhen {

const ColorChoice& ColorAssignment::choice_for(RangeLabel label) const {
  static const ColorChoice context = ColorChoice::context();
  switch (label) {
    case RangeLabel::Low: return low;
    case RangeLabel::Mid: return mid;
    case RangeLabel::High: return high;
    case RangeLabel::Undefined: return context;
  }
  return context;
}

std::vector<ColorToken> ColorAssignment::tokens() const {
  std::vector<ColorToken> out;
  for (const ColorChoice* choice : {&low, &mid, &high}) {
    if (choice->is_color() && std::find(out.begin(), out.end(), choice->token) == out.end()) {
      out.push_back(choice->token);
    }
  }
  return out;
}

void ColorAssignment::validate(bool three_range) const {
  for (const ColorChoice* choice : {&low, &mid, &high}) {
    if (!choice->is_color()) continue;
    if (choice->token.empty() || choice->token == "context" || choice->token == "hidden") {
      throw Error(ErrorKind::Invalid, "invalid-color-assignment",
                  "color token '" + choice->token + "' is empty or reserved");
    }
  }
  if (!three_range && mid.is_color()) {
    throw Error(ErrorKind::Invalid, "invalid-color-assignment",
                "two-range queries have no 'mid' range to color");
  }
  if (tokens().empty()) {
    throw Error(ErrorKind::Invalid, "invalid-color-assignment",
                "at least one range must be assigned a color");
  }
}

void SegmentFilter::validate() const {
  if ((min_len && *min_len < 1) || (max_len && *max_len < 1)) {
    throw Error(ErrorKind::Invalid, "invalid-filter", "segment length limits must be >= 1");
  }
  if (min_len && max_len && *min_len > *max_len) {
    throw Error(ErrorKind::Invalid, "invalid-filter",
                "min_len " + std::to_string(*min_len) + " exceeds max_len " +
                    std::to_string(*max_len));
  }
}

void validate_window(const std::optional<TimeWindow>& window, std::size_t timestep_count) {
  if (!window) return;
  if (window->start > window->end || window->end >= timestep_count) {
    throw Error(ErrorKind::Invalid, "invalid-window",
                "time window [" + std::to_string(window->start) + ", " +
                    std::to_string(window->end) + "] outside [0, " +
                    std::to_string(timestep_count - 1) + "]");
  }
}

namespace {

using ColorRun = Run<std::optional<ColorToken>>;

std::vector<DisplaySegment> to_display(std::vector<ColorRun> runs) {
  std::vector<DisplaySegment> out;
  out.reserve(runs.size());
  for (ColorRun& r : runs) out.push_back(DisplaySegment{r.start, r.end, std::move(r.value)});
  return out;
}

}  // namespace

std::vector<DisplaySegment> apply_colors_and_filter(std::span<const Segment> segments,
                                                    const ColorAssignment& colors,
                                                    const SegmentFilter& filter) {
  std::vector<ColorRun> runs;
  runs.reserve(segments.size());
  for (const Segment& s : segments) {
    const ColorChoice& choice = colors.choice_for(s.label);
    std::optional<ColorToken> color;
    if (choice.is_color()) color = choice.token;
    runs.push_back(ColorRun{s.start, s.end, std::move(color)});
  }
  // Two labels may share one color; the length limits apply to what is drawn.
  merge_adjacent(runs);
  for (ColorRun& r : runs) {
    if (!r.value) continue;
    const std::size_t len = r.length();
    if ((filter.min_len && len < *filter.min_len) || (filter.max_len && len > *filter.max_len)) {
      r.value.reset();
    }
  }
  merge_adjacent(runs);
  return to_display(std::move(runs));
}

std::size_t colored_length(std::span<const DisplaySegment> segments, const ColorToken& color,
                           const std::optional<TimeWindow>& window) {
  std::size_t total = 0;
  for (const DisplaySegment& s : segments) {
    if (s.color != color) continue;
    TimeIndex lo = s.start;
    TimeIndex hi = s.end;
    if (window) {
      lo = std::max(lo, window->start);
      hi = std::min(hi, window->end);
      if (lo > hi) continue;
    }
    total += hi - lo + 1;
  }
  return total;
}

OrganizedResult sort_cases(std::vector<ColoredCase> cases, std::span<const ColorToken> tokens,
                           const SortSpec& sort) {
  if (tokens.empty()) {
    throw Error(ErrorKind::Invalid, "invalid-color-assignment", "no color tokens assigned");
  }
  const ColorToken sort_color = sort.color.value_or(tokens.front());
  if (std::find(tokens.begin(), tokens.end(), sort_color) == tokens.end()) {
    throw Error(ErrorKind::Invalid, "unassigned-sort-color",
                "sort color '" + sort_color + "' is not assigned to any range");
  }

  std::vector<OrganizedCase> visible;
  visible.reserve(cases.size());
  for (ColoredCase& c : cases) {
    OrganizedCase o;
    bool any_color = false;
    for (const ColorToken& token : tokens) {
      const std::size_t len = colored_length(c.segments, token);
      o.colored_lengths.emplace(token, len);
      any_color = any_color || len > 0;
    }
    if (sort.hide_uncolored && !any_color) continue;
    o.sort_key = colored_length(c.segments, sort_color, sort.window);
    o.id = std::move(c.id);
    o.category = std::move(c.category);
    o.segments = std::move(c.segments);
    visible.push_back(std::move(o));
  }

  auto by_key = [](const OrganizedCase& a, const OrganizedCase& b) {
    if (a.sort_key != b.sort_key) return a.sort_key > b.sort_key;
    return a.id < b.id;
  };

  OrganizedResult out;
  out.grouped = sort.group_mode;
  if (!sort.group_mode) {
    std::sort(visible.begin(), visible.end(), by_key);
    CaseGroup all;
    for (const OrganizedCase& c : visible) all.case_ids.push_back(c.id);
    out.groups.push_back(std::move(all));
    out.cases = std::move(visible);
    return out;
  }

  struct Bucket {
    std::string category;
    std::size_t key_sum = 0;
    std::vector<OrganizedCase> members;
  };
  std::map<std::string, Bucket> buckets;
  for (OrganizedCase& c : visible) {
    Bucket& b = buckets[c.category];
    b.category = c.category;
    b.key_sum += c.sort_key;
    b.members.push_back(std::move(c));
  }
  std::vector<Bucket> ordered;
  ordered.reserve(buckets.size());
  for (auto& [name, bucket] : buckets) ordered.push_back(std::move(bucket));
  // Means compared as exact fractions: sum_a / n_a > sum_b / n_b.
  std::sort(ordered.begin(), ordered.end(), [](const Bucket& a, const Bucket& b) {
    const auto lhs = a.key_sum * b.members.size();
    const auto rhs = b.key_sum * a.members.size();
    if (lhs != rhs) return lhs > rhs;
    return a.category < b.category;
  });
  for (Bucket& b : ordered) {
    std::sort(b.members.begin(), b.members.end(), by_key);
    CaseGroup group{b.category, {}};
    for (OrganizedCase& c : b.members) {
      group.case_ids.push_back(c.id);
      out.cases.push_back(std::move(c));
    }
    out.groups.push_back(std::move(group));
  }
  return out;
}

}  // namespace whichwhen
