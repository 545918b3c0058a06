#include <gtest/gtest.h>

#include "cli_request.hpp"
#include "whichwhen/error.hpp"

namespace whichwhen::cli {
namespace {

TEST(ParseThresholdTest, AcceptedForms) {
  EXPECT_EQ(parse_threshold("50"), ThresholdSpec::constant(50));
  EXPECT_EQ(parse_threshold("-3.5"), ThresholdSpec::constant(-3.5));
  EXPECT_EQ(parse_threshold("avg"), ThresholdSpec::aggregate_offset(0));
  EXPECT_EQ(parse_threshold("avg+10"), ThresholdSpec::aggregate_offset(10));
  EXPECT_EQ(parse_threshold("avg-2.5"), ThresholdSpec::aggregate_offset(-2.5));
  EXPECT_EQ(parse_threshold("ego:IRL"), ThresholdSpec::ego_offset("IRL", 0));
  EXPECT_EQ(parse_threshold("ego:IRL+1"), ThresholdSpec::ego_offset("IRL", 1));
  EXPECT_EQ(parse_threshold("ego:IRL-1"), ThresholdSpec::ego_offset("IRL", -1));
  EXPECT_EQ(parse_threshold("ego:GB-SCT-2"), ThresholdSpec::ego_offset("GB-SCT", -2));
}

TEST(ParseThresholdTest, RejectedForms) {
  for (const char* text : {"abc", "", "avg10", "avg+x", "ego:", "1,000"}) {
    try {
      parse_threshold(text);
      ADD_FAILURE() << "accepted '" << text << "'";
    } catch (const ParseError& e) {
      EXPECT_EQ(e.reason(), "bad-threshold") << text;
    }
  }
}

Dataset tiny() {
  return Dataset("t", TimeAxis({"2000", "2001", "2002"}),
                 {DataCase{"A", "A", {}, {1.0, 2.0, 3.0}}, DataCase{"B", "B", {}, {3.0, 2.0, 1.0}}});
}

std::string reason_of(const QueryFlags& f) {
  try {
    build_request(f, tiny());
  } catch (const Error& e) {
    return e.reason();
  }
  return "none";
}

TEST(BuildRequestTest, MapsFlags) {
  QueryFlags f;
  f.criterion = "net_change";
  f.delta = 2;
  f.three_range = true;
  f.lower = "-1";
  f.upper = "ego:B";
  f.colors = {"low=red", "mid=hidden", "high=green"};
  f.min_len = 2;
  f.sort_color = "green";
  f.time_window = "2001:2002";
  f.group = true;
  const QueryRequest r = build_request(f, tiny());
  EXPECT_EQ(r.query.criterion, Criterion::net_change(2));
  EXPECT_EQ(std::get<ThreeRange>(r.query.mode).upper, ThresholdSpec::ego_offset("B", 0));
  EXPECT_EQ(r.colors.mid, ColorChoice::hidden());
  EXPECT_EQ(r.colors.high, ColorChoice::color("green"));
  EXPECT_EQ(r.filter.min_len, 2u);
  EXPECT_EQ(r.sort.window, (TimeWindow{1, 2}));
  EXPECT_TRUE(r.sort.group_mode);
}

TEST(BuildRequestTest, Errors) {
  QueryFlags none;
  EXPECT_EQ(reason_of(none), "bad-mode");
  QueryFlags both;
  both.two_range = both.three_range = true;
  EXPECT_EQ(reason_of(both), "bad-mode");
  QueryFlags crit;
  crit.criterion = "median";
  crit.two_range = true;
  crit.threshold = "1";
  EXPECT_EQ(reason_of(crit), "bad-criterion");
  QueryFlags color = crit;
  color.criterion = "value";
  color.colors = {"top=red"};
  EXPECT_EQ(reason_of(color), "bad-color");
  QueryFlags window = crit;
  window.criterion = "value";
  window.time_window = "1999:2001";
  EXPECT_EQ(reason_of(window), "bad-window");
}

}  // namespace
}  // namespace whichwhen::cli
