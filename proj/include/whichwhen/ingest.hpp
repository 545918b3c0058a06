#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "whichwhen/model.hpp"

namespace whichwhen {

struct CsvOptions {
  bool has_category_column = false;
  std::string dataset_id = "dataset";
};

struct IngestReport {
  std::size_t case_count = 0;
  std::size_t timestep_count = 0;
  std::size_t missing_cell_count = 0;
  std::size_t category_count = 0;
  std::vector<std::string> warnings;
};

struct IngestResult {
  Dataset dataset;
  IngestReport report;
};

/// Parses a wide CSV document: header `id[,category],t0,t1,...`, one case per
/// row, empty cells are missing values. Throws ParseError with row/column on
/// malformed input.
IngestResult parse_wide_csv(std::string_view text, const CsvOptions& options = {});

/// Reads `path` and delegates to parse_wide_csv. Throws Error(Io) when the
/// file cannot be read.
IngestResult load_dataset_file(const std::filesystem::path& path, const CsvOptions& options = {});

/// Serializes back to the wide format accepted by parse_wide_csv. A category
/// column is written when any case carries a category.
std::string to_wide_csv(const Dataset& dataset);

/// Appends `field`, quoting it when it holds a delimiter, quote, or newline.
void append_csv_field(std::string& out, std::string_view field);

/// Strict decimal parse (optional sign and exponent, no thousands separators,
/// finite only).
std::optional<double> parse_number(std::string_view text);

/// Shortest text that parses back to exactly `value`.
std::string format_number(double value);

}  // namespace whichwhen
