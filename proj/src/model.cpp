#include "whichwhen/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "whichwhen/error.hpp"

namespace whichwhen {

TimeAxis::TimeAxis(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) {
    throw Error(ErrorKind::Invalid, "empty-axis", "time axis needs at least one label");
  }
  index_.reserve(labels_.size());
  for (TimeIndex t = 0; t < labels_.size(); ++t) {
    if (!index_.emplace(labels_[t], t).second) {
      throw Error(ErrorKind::Invalid, "duplicate-time-label",
                  "duplicate time label '" + labels_[t] + "'");
    }
  }
}

const std::string& TimeAxis::label(TimeIndex t) const {
  if (t >= labels_.size()) {
    throw Error(ErrorKind::Invalid, "index-out-of-range",
                "timestep " + std::to_string(t) + " outside axis of length " +
                    std::to_string(labels_.size()));
  }
  return labels_[t];
}

std::optional<TimeIndex> TimeAxis::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TimeIndex TimeAxis::index_of(std::string_view label) const {
  if (auto t = find(label)) return *t;
  throw Error(ErrorKind::NotFound, "unknown-label",
              "unknown time label '" + std::string(label) + "'");
}

Dataset::Dataset(std::string id, TimeAxis axis, std::vector<DataCase> cases)
    : id_(std::move(id)), axis_(std::move(axis)), cases_(std::move(cases)) {
  if (cases_.empty()) {
    throw Error(ErrorKind::Invalid, "no-cases", "dataset needs at least one case");
  }
  std::set<std::string> categories;
  index_.reserve(cases_.size());
  for (std::size_t i = 0; i < cases_.size(); ++i) {
    const DataCase& c = cases_[i];
    if (!index_.emplace(c.id, i).second) {
      throw Error(ErrorKind::Invalid, "duplicate-case-id", "duplicate case id '" + c.id + "'");
    }
    if (c.values.size() != axis_.size()) {
      throw Error(ErrorKind::Invalid, "shape-mismatch",
                  "case '" + c.id + "' has " + std::to_string(c.values.size()) +
                      " values, axis has " + std::to_string(axis_.size()));
    }
    for (const Value& v : c.values) {
      if (v && !std::isfinite(*v)) {
        throw Error(ErrorKind::Invalid, "non-finite-value",
                    "case '" + c.id + "' contains a non-finite value");
      }
    }
    categories.emplace(c.category_or_default());
  }
  categories_.assign(categories.begin(), categories.end());
}

std::optional<std::size_t> Dataset::index_of(std::string_view case_id) const {
  auto it = index_.find(std::string(case_id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const DataCase& Dataset::find(std::string_view case_id) const {
  if (auto i = index_of(case_id)) return cases_[*i];
  throw Error(ErrorKind::NotFound, "unknown-case",
              "unknown case id '" + std::string(case_id) + "'");
}

Value Dataset::value_at(std::string_view case_id, TimeIndex t) const {
  const DataCase& c = find(case_id);
  if (t >= c.values.size()) {
    throw Error(ErrorKind::Invalid, "index-out-of-range",
                "timestep " + std::to_string(t) + " outside axis of length " +
                    std::to_string(c.values.size()));
  }
  return c.values[t];
}

Dataset Dataset::renamed(std::string id) const {
  Dataset copy = *this;
  copy.id_ = std::move(id);
  return copy;
}

}  // namespace whichwhen
