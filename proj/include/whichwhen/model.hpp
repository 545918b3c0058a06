#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace whichwhen {

/// One cell of a series; absent means the source had no value.
using Value = std::optional<double>;
using Series = std::vector<Value>;
using TimeIndex = std::size_t;

/// Category reported for cases ingested without a category column.
inline constexpr std::string_view kNoCategory = "(none)";

/// Ordered, unique timestep labels. The engine only reasons in indices;
/// labels are for presentation and for translating user input.
class TimeAxis {
 public:
  explicit TimeAxis(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(TimeIndex t) const;
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Throws NotFound("unknown-label").
  TimeIndex index_of(std::string_view label) const;
  std::optional<TimeIndex> find(std::string_view label) const;

  friend bool operator==(const TimeAxis& a, const TimeAxis& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, TimeIndex> index_;
};

struct DataCase {
  std::string id;
  std::string name;
  std::optional<std::string> category;
  Series values;

  std::string_view category_or_default() const {
    return category ? std::string_view(*category) : kNoCategory;
  }

  friend bool operator==(const DataCase&, const DataCase&) = default;
};

/// Immutable collection of cases over a shared axis.
class Dataset {
 public:
  Dataset(std::string id, TimeAxis axis, std::vector<DataCase> cases);

  const std::string& id() const noexcept { return id_; }
  const TimeAxis& axis() const noexcept { return axis_; }
  const std::vector<DataCase>& cases() const noexcept { return cases_; }
  std::size_t case_count() const noexcept { return cases_.size(); }
  std::size_t timestep_count() const noexcept { return axis_.size(); }

  /// Distinct categories (implicit "(none)" included), sorted by name.
  const std::vector<std::string>& categories() const noexcept { return categories_; }

  std::optional<std::size_t> index_of(std::string_view case_id) const;
  /// Throws NotFound("unknown-case").
  const DataCase& find(std::string_view case_id) const;

  /// Throws NotFound("unknown-case") or Invalid("index-out-of-range").
  Value value_at(std::string_view case_id, TimeIndex t) const;

  Dataset renamed(std::string id) const;

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.axis_ == b.axis_ && a.cases_ == b.cases_;
  }

 private:
  std::string id_;
  TimeAxis axis_;
  std::vector<DataCase> cases_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::string> categories_;
};

inline Value value_at(const Dataset& dataset, std::string_view case_id, TimeIndex t) {
  return dataset.value_at(case_id, t);
}

inline TimeIndex time_index_of(const TimeAxis& axis, std::string_view label) {
  return axis.index_of(label);
}

}  // namespace whichwhen
