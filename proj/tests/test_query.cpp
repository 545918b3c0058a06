#include <gtest/gtest.h>

#include <random>
#include <set>

#include "support/oracles.hpp"
#include "whichwhen/error.hpp"
#include "whichwhen/query.hpp"

namespace whichwhen {
namespace {

using L = RangeLabel;
const Value kNone = std::nullopt;

Dataset small() {
  // IRL is the ego; AVG of {IRL, X} at t0 = (70+60)/2 = 65.
  return Dataset("d", TimeAxis({"1900", "1901", "1902"}),
                 {DataCase{"IRL", "IRL", std::nullopt, {70.0, kNone, 72.0}},
                  DataCase{"X", "X", std::nullopt, {60.0, 50.0, 73.0}},
                  DataCase{"Y", "Y", std::nullopt, {50.0, 49.0, kNone}}});
}

std::string reason_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.reason();
  }
  return "no error";
}

TEST(ResolveThresholdTest, Examples) {
  const Dataset d = small();
  EXPECT_EQ(resolve_threshold(d, ThresholdSpec::constant(50)), (Series{50.0, 50.0, 50.0}));
  EXPECT_EQ(resolve_threshold(d, ThresholdSpec::ego_offset("IRL", 1)), (Series{71.0, kNone, 73.0}));
  EXPECT_EQ(resolve_threshold(d, ThresholdSpec::aggregate_offset(10)), (Series{70.0, 59.5, 82.5}));
  EXPECT_EQ(reason_of([&] { resolve_threshold(d, ThresholdSpec::ego_offset("ZZZ", 0)); }), "unknown-ego");
}

TEST(RankThresholdCurveTest, Examples) {
  const Dataset d("d", TimeAxis({"t"}),
                  {DataCase{"A", "A", {}, {3.0}}, DataCase{"B", "B", {}, {1.0}},
                   DataCase{"C", "C", {}, {2.0}}});
  EXPECT_EQ(rank_threshold_curve(d, 2), (Series{2.0}));
  EXPECT_EQ(rank_threshold_curve(d, 5), (Series{kNone}));
  EXPECT_EQ(reason_of([&] { rank_threshold_curve(d, 0); }), "invalid-rank-n");
}

TEST(RankThresholdCurveTest, TopNIsValueAtLeastCurveEvenWithTies) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const Dataset d = testing::random_dataset(rng, {.cases = 20, .steps = 1, .missing_rate = 0.1,
                                                    .lo = 0, .hi = 5});
    const auto ranks = testing::oracle_rank(d);
    for (int n : {1, 5, 10}) {
      const Series curve = rank_threshold_curve(d, n);
      std::size_t present = 0;
      for (const DataCase& c : d.cases()) present += c.values[0] ? 1 : 0;
      ASSERT_EQ(curve[0].has_value(), present >= static_cast<std::size_t>(n));
      if (!curve[0]) continue;
      for (std::size_t c = 0; c < d.case_count(); ++c) {
        const Value& v = d.cases()[c].values[0];
        if (!v) continue;
        EXPECT_EQ(*ranks[c][0] <= n, *v >= *curve[0]);
      }
    }
  }
}

TEST(ClassifyTest, RankTopTenIncludesRankTen) {
  std::vector<DataCase> cases;
  for (int i = 0; i < 12; ++i) {
    cases.push_back(DataCase{"c" + std::to_string(i), "", {}, {100.0 - i}});
  }
  const Dataset d("d", TimeAxis({"t"}), cases);
  const LabelMatrix m = classify(d, {Criterion::rank(), TwoRange{ThresholdSpec::constant(10)}});
  EXPECT_EQ(m.rows[9][0], L::Low);   // rank 10
  EXPECT_EQ(m.rows[10][0], L::High); // rank 11
}

TEST(ClassifyTest, ValueBoundaryIsInclusiveLow) {
  const Dataset d("d", TimeAxis({"t"}),
                  {DataCase{"A", "", {}, {50.0}}, DataCase{"B", "", {}, {50.1}},
                   DataCase{"C", "", {}, {kNone}}});
  const LabelMatrix m = classify(d, {Criterion::value(), TwoRange{ThresholdSpec::constant(50)}});
  EXPECT_EQ(m.rows[0][0], L::Low);
  EXPECT_EQ(m.rows[1][0], L::High);
  EXPECT_EQ(m.rows[2][0], L::Undefined);
  ASSERT_EQ(m.thresholds.size(), 1u);
}

TEST(ClassifyTest, ThreeRangeBoundaries) {
  const Dataset d("d", TimeAxis({"t"}),
                  {DataCase{"A", "", {}, {10.0}}, DataCase{"B", "", {}, {15.0}},
                   DataCase{"C", "", {}, {20.0}}, DataCase{"D", "", {}, {25.0}}});
  const LabelMatrix m = classify(
      d, {Criterion::value(), ThreeRange{ThresholdSpec::constant(10), ThresholdSpec::constant(20)}});
  EXPECT_EQ(m.rows[0][0], L::Low);
  EXPECT_EQ(m.rows[1][0], L::Mid);
  EXPECT_EQ(m.rows[2][0], L::High);
  EXPECT_EQ(m.rows[3][0], L::High);
  EXPECT_EQ(m.thresholds.size(), 2u);
}

TEST(ClassifyTest, EgoIsMidWhereverPresent) {
  const Dataset d = small();
  const LabelMatrix m = classify(d, {Criterion::value(), ThreeRange{ThresholdSpec::ego_offset("IRL", -1),
                                                                    ThresholdSpec::ego_offset("IRL", 1)}});
  EXPECT_EQ(m.rows[0], (std::vector<L>{L::Mid, L::Undefined, L::Mid}));
  // X at 1902 is 73 >= 72 + 1.
  EXPECT_EQ(m.rows[1], (std::vector<L>{L::Low, L::Undefined, L::High}));
}

TEST(ClassifyTest, ValidationErrors) {
  const Dataset d = small();
  EXPECT_EQ(reason_of([&] {
              classify(d, {Criterion::value(),
                           ThreeRange{ThresholdSpec::constant(10), ThresholdSpec::constant(5)}});
            }),
            "crossed-thresholds");
  EXPECT_EQ(reason_of([&] {
              classify(d, {Criterion::rank(), TwoRange{ThresholdSpec::aggregate_offset(1)}});
            }),
            "invalid-criterion-threshold");
  EXPECT_EQ(reason_of([&] {
              classify(d, {Criterion::value(), TwoRange{ThresholdSpec::ego_offset("nope", 1)}});
            }),
            "unknown-ego");
  EXPECT_EQ(reason_of([&] {
              classify(d, {Criterion::net_change(3), TwoRange{ThresholdSpec::constant(0)}});
            }),
            "delta-out-of-range");
  EXPECT_EQ(reason_of([&] {
              classify(d, {Criterion::value(), TwoRange{ThresholdSpec::constant(std::nan(""))}});
            }),
            "invalid-threshold");
  // Crossing only where both thresholds are present counts.
  EXPECT_EQ(reason_of([&] {
              classify(d, {Criterion::value(), ThreeRange{ThresholdSpec::ego_offset("IRL", 0),
                                                          ThresholdSpec::constant(71)}});
            }),
            "crossed-thresholds");
}

TEST(ClassifyTest, CrossingErrorNamesFirstTimestep) {
  const Dataset d = small();
  try {
    classify(d, {Criterion::value(), ThreeRange{ThresholdSpec::ego_offset("X", 0),
                                                ThresholdSpec::constant(55)}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("timestep 0"), std::string::npos) << e.what();
  }
}

TEST(ClassifyTest, ExhaustiveAndMonotoneInThreshold) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> theta(0.0, 100.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Dataset d = testing::random_dataset(rng);
    double a = theta(rng), b = theta(rng);
    if (a > b) std::swap(a, b);
    const auto lo = classify(d, {Criterion::value(), TwoRange{ThresholdSpec::constant(a)}});
    const auto hi = classify(d, {Criterion::value(), TwoRange{ThresholdSpec::constant(b)}});
    for (std::size_t c = 0; c < d.case_count(); ++c) {
      for (TimeIndex t = 0; t < d.timestep_count(); ++t) {
        EXPECT_EQ(lo.rows[c][t] == L::Undefined, !d.cases()[c].values[t].has_value());
        EXPECT_NE(lo.rows[c][t], L::Mid);
        if (lo.rows[c][t] == L::Low) EXPECT_EQ(hi.rows[c][t], L::Low);
      }
    }
  }
}

TEST(SegmentTest, Examples) {
  const std::vector<L> row{L::Low, L::Low, L::High, L::High, L::High, L::Undefined};
  EXPECT_EQ(segment_labels("A", row),
            (std::vector<Segment>{{"A", 0, 1, L::Low}, {"A", 2, 4, L::High}, {"A", 5, 5, L::Undefined}}));
  const std::vector<L> one{L::High};
  EXPECT_EQ(segment_labels("A", one), (std::vector<Segment>{{"A", 0, 0, L::High}}));
}

TEST(SegmentTest, RoundTripAndMaximality) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::size_t> len(1, 200);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto row = testing::random_label_row(rng, len(rng));
    const auto segments = segment_labels("x", row);
    EXPECT_EQ(testing::expand(segments), row);
    ASSERT_FALSE(segments.empty());
    EXPECT_EQ(segments.front().start, 0u);
    EXPECT_EQ(segments.back().end, row.size() - 1);
    for (std::size_t i = 1; i < segments.size(); ++i) {
      EXPECT_NE(segments[i].label, segments[i - 1].label);
      EXPECT_EQ(segments[i].start, segments[i - 1].end + 1);
    }
  }
}

}  // namespace
}  // namespace whichwhen
