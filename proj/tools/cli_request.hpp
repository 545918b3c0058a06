#pragma once

#include <optional>
#include <string>
#include <vector>

#include "whichwhen/model.hpp"
#include "whichwhen/pipeline.hpp"

namespace whichwhen::cli {

/// Raw query flags as typed on the command line.
struct QueryFlags {
  std::string criterion = "value";
  int delta = 1;
  int variance_window = 1;
  bool two_range = false;
  bool three_range = false;
  std::optional<std::string> threshold;
  std::optional<std::string> lower;
  std::optional<std::string> upper;
  std::vector<std::string> colors;  // "low=green", "mid=hidden", ...
  std::optional<std::size_t> min_len;
  std::optional<std::size_t> max_len;
  std::optional<std::string> sort_color;
  std::optional<std::string> time_window;  // "2000:2012" (labels)
  bool group = false;
  bool hide_uncolored = false;
};

/// "50", "-3.5", "avg", "avg+10", "avg-10", "ego:IRL", "ego:IRL+1", "ego:IRL-1".
/// Throws ParseError("bad-threshold").
ThresholdSpec parse_threshold(const std::string& text);

/// Translates flags into the same request the HTTP API would receive. Labels
/// in --time-window are resolved against the dataset axis.
QueryRequest build_request(const QueryFlags& flags, const Dataset& dataset);

}  // namespace whichwhen::cli
