#include "cli_request.hpp"

#include "whichwhen/error.hpp"
#include "whichwhen/ingest.hpp"

namespace whichwhen::cli {
namespace {

[[noreturn]] void bad_flag(const std::string& reason, const std::string& message) {
  throw ParseError(reason, message);
}

double parse_offset(const std::string& text, const std::string& whole) {
  if (text.empty()) return 0.0;
  if (text.front() != '+' && text.front() != '-') {
    bad_flag("bad-threshold", "threshold '" + whole + "': expected +N or -N after the base");
  }
  auto v = parse_number(text);
  if (!v) bad_flag("bad-threshold", "threshold '" + whole + "': offset is not a number");
  return *v;
}

}  // namespace

ThresholdSpec parse_threshold(const std::string& text) {
  if (text.rfind("avg", 0) == 0) {
    return ThresholdSpec::aggregate_offset(parse_offset(text.substr(3), text));
  }
  if (text.rfind("ego:", 0) == 0) {
    const std::string rest = text.substr(4);
    // The id ends at the last sign that starts a parseable offset.
    for (std::size_t i = rest.size(); i-- > 0;) {
      if ((rest[i] == '+' || rest[i] == '-') && i > 0 && parse_number(rest.substr(i))) {
        return ThresholdSpec::ego_offset(rest.substr(0, i), parse_offset(rest.substr(i), text));
      }
    }
    if (rest.empty()) bad_flag("bad-threshold", "threshold '" + text + "': missing ego id");
    return ThresholdSpec::ego_offset(rest, 0.0);
  }
  auto v = parse_number(text);
  if (!v) bad_flag("bad-threshold", "threshold '" + text + "' is not a number, avg[+-N] or ego:ID[+-N]");
  return ThresholdSpec::constant(*v);
}

QueryRequest build_request(const QueryFlags& flags, const Dataset& dataset) {
  QueryRequest req;
  Criterion& c = req.query.criterion;
  try {
    c.kind = criterion_kind_from_string(flags.criterion);
  } catch (const Error& e) {
    bad_flag("bad-criterion", e.what());
  }
  c.delta = flags.delta;
  c.window = flags.variance_window;

  if (flags.two_range == flags.three_range) {
    bad_flag("bad-mode", "choose exactly one of --two-range or --three-range");
  }
  if (flags.two_range) {
    if (!flags.threshold) bad_flag("bad-mode", "--two-range needs --threshold");
    req.query.mode = TwoRange{parse_threshold(*flags.threshold)};
  } else {
    if (!flags.lower || !flags.upper) bad_flag("bad-mode", "--three-range needs --lower and --upper");
    req.query.mode = ThreeRange{parse_threshold(*flags.lower), parse_threshold(*flags.upper)};
  }

  for (const std::string& entry : flags.colors) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos) bad_flag("bad-color", "--color expects RANGE=COLOR, got '" + entry + "'");
    const std::string range = entry.substr(0, eq);
    const std::string value = entry.substr(eq + 1);
    ColorChoice choice = value == "context"  ? ColorChoice::context()
                         : value == "hidden" ? ColorChoice::hidden()
                                             : ColorChoice::color(value);
    if (range == "low") {
      req.colors.low = std::move(choice);
    } else if (range == "mid") {
      req.colors.mid = std::move(choice);
    } else if (range == "high") {
      req.colors.high = std::move(choice);
    } else {
      bad_flag("bad-color", "unknown range '" + range + "' in --color (low, mid, high)");
    }
  }

  req.filter.min_len = flags.min_len;
  req.filter.max_len = flags.max_len;
  req.sort.color = flags.sort_color;
  req.sort.group_mode = flags.group;
  req.sort.hide_uncolored = flags.hide_uncolored;
  if (flags.time_window) {
    const std::string& w = *flags.time_window;
    const auto colon = w.find(':');
    if (colon == std::string::npos) bad_flag("bad-window", "--time-window expects START:END labels");
    const TimeAxis& axis = dataset.axis();
    auto start = axis.find(w.substr(0, colon));
    auto end = axis.find(w.substr(colon + 1));
    if (!start || !end) bad_flag("bad-window", "--time-window '" + w + "' names an unknown time label");
    req.sort.window = TimeWindow{*start, *end};
  }
  return req;
}

}  // namespace whichwhen::cli
