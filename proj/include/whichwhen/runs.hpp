#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace whichwhen {

/// Maximal run of equal values over the inclusive index range [start, end].
template <typename T>
struct Run {
  std::size_t start = 0;
  std::size_t end = 0;
  T value{};

  std::size_t length() const noexcept { return end - start + 1; }
  bool operator==(const Run&) const = default;
};

template <typename T>
std::vector<Run<T>> run_length_encode(std::span<const T> row) {
  std::vector<Run<T>> runs;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (!runs.empty() && runs.back().value == row[i]) {
      runs.back().end = i;
    } else {
      runs.push_back(Run<T>{i, i, row[i]});
    }
  }
  return runs;
}

/// Joins neighbouring runs that carry equal values, in place.
template <typename T>
void merge_adjacent(std::vector<Run<T>>& runs) {
  std::size_t out = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (out > 0 && runs[out - 1].value == runs[i].value && runs[out - 1].end + 1 == runs[i].start) {
      runs[out - 1].end = runs[i].end;
    } else {
      if (out != i) runs[out] = std::move(runs[i]);  // self-move would clear strings
      ++out;
    }
  }
  runs.resize(out);
}

}  // namespace whichwhen
