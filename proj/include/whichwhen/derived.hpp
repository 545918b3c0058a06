#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "whichwhen/model.hpp"

namespace whichwhen {

enum class CriterionKind { Value, Rank, NetChange, PctChange, Variance };

std::string_view to_string(CriterionKind kind);
/// Accepts "value", "rank", "net_change", "pct_change", "variance".
CriterionKind criterion_kind_from_string(std::string_view name);

/// Which per-timestep series a query evaluates. `delta` applies to the change
/// criteria, `window` to Variance; both are in timesteps.
struct Criterion {
  CriterionKind kind = CriterionKind::Value;
  int delta = 1;
  int window = 1;

  static Criterion value() { return {CriterionKind::Value}; }
  static Criterion rank() { return {CriterionKind::Rank}; }
  static Criterion net_change(int delta) { return {CriterionKind::NetChange, delta}; }
  static Criterion pct_change(int delta) { return {CriterionKind::PctChange, delta}; }
  static Criterion variance(int window) { return {CriterionKind::Variance, 1, window}; }

  /// Throws Invalid("delta-out-of-range" / "window-invalid") for an axis of
  /// `timestep_count` steps.
  void validate(std::size_t timestep_count) const;

  bool operator==(const Criterion&) const = default;
};

/// Rows follow dataset case order; every row has the axis length.
struct DerivedMatrix {
  Criterion criterion;
  std::vector<Series> rows;
};

/// Competition ranking per timestep, rank 1 = largest value; ties share the
/// smallest rank (5,5,2 -> 1,1,3). Missing values stay missing.
DerivedMatrix compute_rank_matrix(const Dataset& dataset);

/// v[t] - v[t - delta].
DerivedMatrix compute_net_change(const Dataset& dataset, int delta);

/// 100 * (v[t] - v[t - delta]) / |v[t - delta]|, missing when the base is 0.
DerivedMatrix compute_pct_change(const Dataset& dataset, int delta);

/// Population variance over the centered window [t-h, t+h], h = (window-1)/2,
/// truncated at the series edges and using only present values.
DerivedMatrix compute_windowed_variance(const Dataset& dataset, int window);

/// Mean of present values at each timestep.
Series compute_aggregate_series(const Dataset& dataset);

/// The ego case's values verbatim. Throws Invalid("unknown-ego").
Series ego_series(const Dataset& dataset, std::string_view ego_id);

DerivedMatrix derive(const Dataset& dataset, const Criterion& criterion);

}  // namespace whichwhen
