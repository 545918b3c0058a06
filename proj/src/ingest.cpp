#include "whichwhen/ingest.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "whichwhen/error.hpp"

namespace whichwhen {
namespace {

struct Record {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based physical line where the record starts
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

bool is_blank(const Record& r) {
  return r.fields.size() == 1 && trim(r.fields[0]).empty();
}

// RFC 4180 style tokenizer: optional double quotes around fields, "" escapes
// a quote inside a quoted field, \n or \r\n record terminators.
std::vector<Record> tokenize(std::string_view text) {
  std::vector<Record> records;
  Record current;
  current.line = 1;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  std::size_t line = 1;

  auto end_field = [&] {
    current.fields.push_back(field_was_quoted ? field : std::string(trim(field)));
    field.clear();
    field_was_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(current));
    current = Record{};
    current.line = line;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (!trim(field).empty()) {
          throw ParseError("bad-quote", "unexpected quote inside unquoted field on line " +
                                            std::to_string(line));
        }
        field.clear();
        in_quotes = true;
        field_was_quoted = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        field.push_back(ch);
        break;
      case '\n':
        ++line;
        end_record();
        break;
      default:
        if (field_was_quoted && ch != ' ' && ch != '\t') {
          throw ParseError("bad-quote", "text after closing quote on line " +
                                            std::to_string(line));
        }
        if (!field_was_quoted) field.push_back(ch);
        break;
    }
  }
  if (in_quotes) {
    throw ParseError("bad-quote", "unterminated quoted field");
  }
  if (!field.empty() || field_was_quoted || !current.fields.empty()) {
    end_record();
  }
  return records;
}

}  // namespace

std::optional<double> parse_number(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::string_view body = text;
  if (body.front() == '+') {
    body.remove_prefix(1);
    if (body.empty() || body.front() == '-' || body.front() == '+') return std::nullopt;
  }
  // from_chars accepts "inf"/"nan" spellings; only digits, '.', sign, and
  // exponent markers are allowed here.
  for (char ch : body) {
    const bool ok = (ch >= '0' && ch <= '9') || ch == '.' || ch == '-' || ch == '+' ||
                    ch == 'e' || ch == 'E';
    if (!ok) return std::nullopt;
  }
  double value = 0.0;
  const auto* first = body.data();
  const auto* last = body.data() + body.size();
  auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

IngestResult parse_wide_csv(std::string_view text, const CsvOptions& options) {
  IngestReport report;
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") {
    text.remove_prefix(3);
    report.warnings.emplace_back("stripped UTF-8 byte order mark");
  }

  std::vector<Record> records = tokenize(text);
  while (!records.empty() && is_blank(records.back())) records.pop_back();
  if (records.empty() || is_blank(records.front())) {
    throw ParseError("missing-header", "input has no header row", 0);
  }

  const Record& header = records.front();
  const std::size_t lead = options.has_category_column ? 2 : 1;
  if (header.fields.size() <= lead) {
    throw ParseError("missing-time-columns", "header has no time columns", 0);
  }
  std::vector<std::string> labels(header.fields.begin() + static_cast<std::ptrdiff_t>(lead),
                                  header.fields.end());
  std::set<std::string> seen_labels;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].empty()) {
      throw ParseError("empty-time-label", "empty time label in header", 0,
                       "#" + std::to_string(lead + i + 1));
    }
    if (!seen_labels.insert(labels[i]).second) {
      throw ParseError("duplicate-time-label", "duplicate time label '" + labels[i] + "'", 0,
                       labels[i]);
    }
  }

  std::vector<DataCase> cases;
  std::set<std::string> ids;
  std::size_t row = 0;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const Record& rec = records[r];
    if (is_blank(rec)) {
      report.warnings.push_back("skipped blank line " + std::to_string(rec.line));
      continue;
    }
    ++row;
    if (rec.fields.size() != header.fields.size()) {
      throw ParseError("ragged-rows",
                       "row " + std::to_string(row) + " has " + std::to_string(rec.fields.size()) +
                           " fields, header has " + std::to_string(header.fields.size()),
                       row);
    }
    DataCase c;
    c.id = rec.fields[0];
    if (c.id.empty()) {
      throw ParseError("empty-case-id", "row " + std::to_string(row) + " has an empty id", row,
                       header.fields[0]);
    }
    if (!ids.insert(c.id).second) {
      throw ParseError("duplicate-case-id", "duplicate case id '" + c.id + "' in row " +
                                                std::to_string(row),
                       row, header.fields[0]);
    }
    c.name = c.id;
    if (options.has_category_column && !rec.fields[1].empty()) c.category = rec.fields[1];

    c.values.reserve(labels.size());
    std::size_t present = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const std::string& cell = rec.fields[lead + i];
      if (cell.empty()) {
        c.values.emplace_back();
        ++report.missing_cell_count;
        continue;
      }
      auto v = parse_number(cell);
      if (!v) {
        throw ParseError("non-numeric-cell",
                         "non-numeric cell '" + cell + "' at row " + std::to_string(row) +
                             ", column '" + labels[i] + "'",
                         row, labels[i]);
      }
      c.values.emplace_back(*v);
      ++present;
    }
    if (present == 0) report.warnings.push_back("case '" + c.id + "' has no values");
    cases.push_back(std::move(c));
  }
  if (cases.empty()) {
    throw ParseError("no-data-rows", "input has a header but no data rows");
  }

  Dataset dataset(options.dataset_id, TimeAxis(std::move(labels)), std::move(cases));
  report.case_count = dataset.case_count();
  report.timestep_count = dataset.timestep_count();
  report.category_count = dataset.categories().size();
  return IngestResult{std::move(dataset), std::move(report)};
}

IngestResult load_dataset_file(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::Io, "io-error", "cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw Error(ErrorKind::Io, "io-error", "failed reading '" + path.string() + "'");
  }
  return parse_wide_csv(buffer.str(), options);
}

void append_csv_field(std::string& out, std::string_view field) {
  const bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos ||
                            (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!needs_quotes) {
    out.append(field);
    return;
  }
  out.push_back('"');
  for (char ch : field) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
}

std::string to_wide_csv(const Dataset& dataset) {
  bool with_category = false;
  for (const DataCase& c : dataset.cases()) with_category = with_category || c.category.has_value();

  std::string out = "id";
  if (with_category) out += ",category";
  for (const std::string& label : dataset.axis().labels()) {
    out.push_back(',');
    append_csv_field(out, label);
  }
  out.push_back('\n');
  for (const DataCase& c : dataset.cases()) {
    append_csv_field(out, c.id);
    if (with_category) {
      out.push_back(',');
      append_csv_field(out, c.category.value_or(""));
    }
    for (const Value& v : c.values) {
      out.push_back(',');
      if (v) out += format_number(*v);
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace whichwhen
