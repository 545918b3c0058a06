#include "whichwhen/derived.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "whichwhen/error.hpp"

namespace whichwhen {

std::string_view to_string(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::Value: return "value";
    case CriterionKind::Rank: return "rank";
    case CriterionKind::NetChange: return "net_change";
    case CriterionKind::PctChange: return "pct_change";
    case CriterionKind::Variance: return "variance";
  }
  return "value";
}

CriterionKind criterion_kind_from_string(std::string_view name) {
  for (auto kind : {CriterionKind::Value, CriterionKind::Rank, CriterionKind::NetChange,
                    CriterionKind::PctChange, CriterionKind::Variance}) {
    if (to_string(kind) == name) return kind;
  }
  throw Error(ErrorKind::Invalid, "invalid-criterion",
              "unknown criterion '" + std::string(name) + "'");
}

void Criterion::validate(std::size_t timestep_count) const {
  const auto steps = static_cast<long long>(timestep_count);
  switch (kind) {
    case CriterionKind::NetChange:
    case CriterionKind::PctChange:
      if (delta < 1 || delta >= steps) {
        throw Error(ErrorKind::Invalid, "delta-out-of-range",
                    "delta " + std::to_string(delta) + " must satisfy 1 <= delta < " +
                        std::to_string(timestep_count));
      }
      break;
    case CriterionKind::Variance:
      if (window < 1 || window % 2 == 0 || window > steps) {
        throw Error(ErrorKind::Invalid, "window-invalid",
                    "variance window " + std::to_string(window) + " must be odd and in [1, " +
                        std::to_string(timestep_count) + "]");
      }
      break;
    case CriterionKind::Value:
    case CriterionKind::Rank:
      break;
  }
}

namespace {

std::vector<Series> empty_rows(const Dataset& dataset) {
  return std::vector<Series>(dataset.case_count(), Series(dataset.timestep_count()));
}

}  // namespace

DerivedMatrix compute_rank_matrix(const Dataset& dataset) {
  DerivedMatrix out{Criterion::rank(), empty_rows(dataset)};
  const auto& cases = dataset.cases();
  std::vector<std::pair<double, std::size_t>> column;
  column.reserve(cases.size());

  for (TimeIndex t = 0; t < dataset.timestep_count(); ++t) {
    column.clear();
    for (std::size_t c = 0; c < cases.size(); ++c) {
      if (const Value& v = cases[c].values[t]) column.emplace_back(*v, c);
    }
    std::sort(column.begin(), column.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    std::size_t rank = 1;
    for (std::size_t i = 0; i < column.size(); ++i) {
      if (i > 0 && column[i].first < column[i - 1].first) rank = i + 1;
      out.rows[column[i].second][t] = static_cast<double>(rank);
    }
  }
  return out;
}

namespace {

template <typename Fn>
DerivedMatrix lagged(const Dataset& dataset, Criterion criterion, Fn&& combine) {
  criterion.validate(dataset.timestep_count());
  DerivedMatrix out{criterion, empty_rows(dataset)};
  const auto lag = static_cast<std::size_t>(criterion.delta);
  for (std::size_t c = 0; c < dataset.case_count(); ++c) {
    const Series& in = dataset.cases()[c].values;
    Series& row = out.rows[c];
    for (TimeIndex t = lag; t < in.size(); ++t) {
      if (in[t] && in[t - lag]) row[t] = combine(*in[t], *in[t - lag]);
    }
  }
  return out;
}

}  // namespace

DerivedMatrix compute_net_change(const Dataset& dataset, int delta) {
  return lagged(dataset, Criterion::net_change(delta),
                [](double now, double before) -> Value { return now - before; });
}

DerivedMatrix compute_pct_change(const Dataset& dataset, int delta) {
  return lagged(dataset, Criterion::pct_change(delta), [](double now, double before) -> Value {
    if (before == 0.0) return std::nullopt;
    return 100.0 * (now - before) / std::abs(before);
  });
}

DerivedMatrix compute_windowed_variance(const Dataset& dataset, int window) {
  const Criterion criterion = Criterion::variance(window);
  criterion.validate(dataset.timestep_count());
  DerivedMatrix out{criterion, empty_rows(dataset)};
  const auto half = static_cast<std::size_t>((window - 1) / 2);
  const std::size_t steps = dataset.timestep_count();

  // Two passes per window keep constant windows at exactly zero; windows are
  // short enough that a running-sum update buys nothing.
  for (std::size_t c = 0; c < dataset.case_count(); ++c) {
    const Series& in = dataset.cases()[c].values;
    Series& row = out.rows[c];
    for (TimeIndex t = 0; t < steps; ++t) {
      const TimeIndex lo = t >= half ? t - half : 0;
      const TimeIndex hi = std::min(steps - 1, t + half);
      double sum = 0.0;
      std::size_t n = 0;
      for (TimeIndex i = lo; i <= hi; ++i) {
        if (in[i]) {
          sum += *in[i];
          ++n;
        }
      }
      if (n == 0) continue;
      const double mean = sum / static_cast<double>(n);
      double squares = 0.0;
      for (TimeIndex i = lo; i <= hi; ++i) {
        if (in[i]) squares += (*in[i] - mean) * (*in[i] - mean);
      }
      row[t] = squares / static_cast<double>(n);
    }
  }
  return out;
}

Series compute_aggregate_series(const Dataset& dataset) {
  Series out(dataset.timestep_count());
  for (TimeIndex t = 0; t < out.size(); ++t) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const DataCase& c : dataset.cases()) {
      if (c.values[t]) {
        sum += *c.values[t];
        ++n;
      }
    }
    if (n > 0) out[t] = sum / static_cast<double>(n);
  }
  return out;
}

Series ego_series(const Dataset& dataset, std::string_view ego_id) {
  auto index = dataset.index_of(ego_id);
  if (!index) {
    throw Error(ErrorKind::Invalid, "unknown-ego", "unknown ego case '" + std::string(ego_id) + "'");
  }
  return dataset.cases()[*index].values;
}

DerivedMatrix derive(const Dataset& dataset, const Criterion& criterion) {
  criterion.validate(dataset.timestep_count());
  switch (criterion.kind) {
    case CriterionKind::Value: {
      DerivedMatrix out{criterion, {}};
      out.rows.reserve(dataset.case_count());
      for (const DataCase& c : dataset.cases()) out.rows.push_back(c.values);
      return out;
    }
    case CriterionKind::Rank: return compute_rank_matrix(dataset);
    case CriterionKind::NetChange: return compute_net_change(dataset, criterion.delta);
    case CriterionKind::PctChange: return compute_pct_change(dataset, criterion.delta);
    case CriterionKind::Variance: return compute_windowed_variance(dataset, criterion.window);
  }
  throw Error(ErrorKind::Invalid, "invalid-criterion", "unknown criterion kind");
}

}  // namespace whichwhen
