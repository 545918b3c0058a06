#include "whichwhen/wire.hpp"

#include "whichwhen/error.hpp"

namespace whichwhen::wire {
namespace {

[[noreturn]] void bad_request(const std::string& message) {
  throw ParseError("bad-request", message);
}

const json& require(const json& obj, const char* key, const char* where) {
  if (!obj.is_object()) bad_request(std::string(where) + " must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) bad_request(std::string(where) + "." + key + " is required");
  return *it;
}

const json* optional_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return nullptr;
  return &*it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) bad_request(where + " must be a number");
  return v.get<double>();
}

long long integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) bad_request(where + " must be an integer");
  return v.get<long long>();
}

std::string string(const json& v, const std::string& where) {
  if (!v.is_string()) bad_request(where + " must be a string");
  return v.get<std::string>();
}

bool boolean(const json& v, const std::string& where) {
  if (!v.is_boolean()) bad_request(where + " must be a boolean");
  return v.get<bool>();
}

int small_int(const json& v, const std::string& where) {
  const long long n = integer(v, where);
  if (n < -1000000000LL || n > 1000000000LL) bad_request(where + " out of range");
  return static_cast<int>(n);
}

std::size_t count(const json& v, const std::string& where) {
  const long long n = integer(v, where);
  if (n < 0) {
    throw Error(ErrorKind::Invalid, where == "sort.window" ? "invalid-window" : "invalid-filter",
                where + " must be non-negative");
  }
  return static_cast<std::size_t>(n);
}

Criterion criterion_from_json(const json& j) {
  Criterion c;
  try {
    c.kind = criterion_kind_from_string(string(require(j, "kind", "criterion"), "criterion.kind"));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    bad_request(e.what());
  }
  if (const json* d = optional_field(j, "delta")) c.delta = small_int(*d, "criterion.delta");
  if (const json* w = optional_field(j, "window")) c.window = small_int(*w, "criterion.window");
  return c;
}

json to_json(const Criterion& c) {
  json j{{"kind", to_string(c.kind)}};
  if (c.kind == CriterionKind::NetChange || c.kind == CriterionKind::PctChange) j["delta"] = c.delta;
  if (c.kind == CriterionKind::Variance) j["window"] = c.window;
  return j;
}

ThresholdSpec threshold_from_json(const json& j, const char* where) {
  const std::string kind = string(require(j, "kind", where), std::string(where) + ".kind");
  const std::string w(where);
  if (kind == "constant") {
    return ThresholdSpec::constant(number(require(j, "value", where), w + ".value"));
  }
  if (kind == "aggregate_offset") {
    const json* off = optional_field(j, "offset");
    return ThresholdSpec::aggregate_offset(off ? number(*off, w + ".offset") : 0.0);
  }
  if (kind == "ego_offset") {
    const json* off = optional_field(j, "offset");
    return ThresholdSpec::ego_offset(string(require(j, "ego", where), w + ".ego"),
                                     off ? number(*off, w + ".offset") : 0.0);
  }
  bad_request(w + ".kind '" + kind + "' is not one of constant, aggregate_offset, ego_offset");
}

json to_json(const ThresholdSpec& s) {
  switch (s.kind) {
    case ThresholdKind::Constant: return {{"kind", "constant"}, {"value", s.value}};
    case ThresholdKind::AggregateOffset: return {{"kind", "aggregate_offset"}, {"offset", s.offset}};
    case ThresholdKind::EgoOffset:
      return {{"kind", "ego_offset"}, {"ego", s.ego_id}, {"offset", s.offset}};
  }
  return {};
}

ColorChoice choice_from_json(const json& v, const std::string& where) {
  const std::string s = string(v, where);
  if (s == "context") return ColorChoice::context();
  if (s == "hidden") return ColorChoice::hidden();
  return ColorChoice::color(s);
}

json to_json(const ColorChoice& c) {
  switch (c.kind) {
    case ColorChoice::Kind::Token: return c.token;
    case ColorChoice::Kind::Context: return "context";
    case ColorChoice::Kind::Hidden: return "hidden";
  }
  return "context";
}

json optional_count(const std::optional<std::size_t>& v) {
  return v ? json(*v) : json(nullptr);
}

json to_json(const Series& series) {
  json arr = json::array();
  for (const Value& v : series) arr.push_back(v ? json(*v) : json(nullptr));
  return arr;
}

json to_json(const DisplaySegment& s) {
  return {{"start", s.start}, {"end", s.end}, {"color", s.color ? *s.color : "context"}};
}

}  // namespace

QueryRequest request_from_json(const json& body) {
  if (!body.is_object()) bad_request("request body must be a JSON object");
  QueryRequest req;
  req.query.criterion = criterion_from_json(require(body, "criterion", "request"));

  const json& mode = require(body, "mode", "request");
  const std::string type = string(require(mode, "type", "mode"), "mode.type");
  if (type == "two_range") {
    req.query.mode = TwoRange{threshold_from_json(require(mode, "threshold", "mode"), "mode.threshold")};
  } else if (type == "three_range") {
    req.query.mode = ThreeRange{threshold_from_json(require(mode, "lower", "mode"), "mode.lower"),
                                threshold_from_json(require(mode, "upper", "mode"), "mode.upper")};
  } else {
    bad_request("mode.type '" + type + "' is not one of two_range, three_range");
  }

  const json& colors = require(body, "colors", "request");
  if (!colors.is_object()) bad_request("colors must be an object");
  for (const auto& [key, value] : colors.items()) {
    ColorChoice choice = choice_from_json(value, "colors." + key);
    if (key == "low") {
      req.colors.low = std::move(choice);
    } else if (key == "mid") {
      req.colors.mid = std::move(choice);
    } else if (key == "high") {
      req.colors.high = std::move(choice);
    } else {
      bad_request("colors." + key + " is not a range (low, mid, high)");
    }
  }

  if (const json* filter = optional_field(body, "filter")) {
    if (!filter->is_object()) bad_request("filter must be an object");
    if (const json* v = optional_field(*filter, "min_len")) req.filter.min_len = count(*v, "filter.min_len");
    if (const json* v = optional_field(*filter, "max_len")) req.filter.max_len = count(*v, "filter.max_len");
  }

  if (const json* sort = optional_field(body, "sort")) {
    if (!sort->is_object()) bad_request("sort must be an object");
    if (const json* v = optional_field(*sort, "color")) req.sort.color = string(*v, "sort.color");
    if (const json* v = optional_field(*sort, "window")) {
      if (!v->is_array() || v->size() != 2) bad_request("sort.window must be [start, end]");
      req.sort.window = TimeWindow{count((*v)[0], "sort.window"), count((*v)[1], "sort.window")};
    }
    if (const json* v = optional_field(*sort, "group_mode")) req.sort.group_mode = boolean(*v, "sort.group_mode");
    if (const json* v = optional_field(*sort, "hide_uncolored")) {
      req.sort.hide_uncolored = boolean(*v, "sort.hide_uncolored");
    }
  }
  return req;
}

json to_json(const QueryRequest& request) {
  json mode;
  json colors{{"low", to_json(request.colors.low)}, {"high", to_json(request.colors.high)}};
  if (const auto* two = std::get_if<TwoRange>(&request.query.mode)) {
    mode = {{"type", "two_range"}, {"threshold", to_json(two->threshold)}};
  } else {
    const auto& three = std::get<ThreeRange>(request.query.mode);
    mode = {{"type", "three_range"}, {"lower", to_json(three.lower)}, {"upper", to_json(three.upper)}};
    colors["mid"] = to_json(request.colors.mid);
  }
  json window = nullptr;
  if (request.sort.window) window = json::array({request.sort.window->start, request.sort.window->end});
  return {
      {"criterion", to_json(request.query.criterion)},
      {"mode", std::move(mode)},
      {"colors", std::move(colors)},
      {"filter",
       {{"min_len", optional_count(request.filter.min_len)},
        {"max_len", optional_count(request.filter.max_len)}}},
      {"sort",
       {{"color", request.sort.color ? json(*request.sort.color) : json(nullptr)},
        {"window", std::move(window)},
        {"group_mode", request.sort.group_mode},
        {"hide_uncolored", request.sort.hide_uncolored}}},
  };
}

json response_to_json(const Dataset& dataset, const QueryResult& result) {
  const OrganizedResult& org = result.organized;
  json groups = json::array();
  for (const CaseGroup& g : org.groups) {
    groups.push_back({{"category", g.category ? json(*g.category) : json(nullptr)},
                      {"cases", g.case_ids}});
  }
  json cases = json::array();
  for (const OrganizedCase& c : org.cases) {
    json segments = json::array();
    for (const DisplaySegment& s : c.segments) segments.push_back(to_json(s));
    json lengths = json::object();
    for (const auto& [token, len] : c.colored_lengths) lengths[token] = len;
    cases.push_back({{"id", c.id},
                     {"category", c.category},
                     {"segments", std::move(segments)},
                     {"colored_lengths", std::move(lengths)},
                     {"sort_key", c.sort_key}});
  }
  json thresholds = json::array();
  for (const Series& s : org.threshold_curves) thresholds.push_back(to_json(s));
  json chart = json::array();
  for (const Series& s : result.chart_curves) chart.push_back(to_json(s));

  return {
      {"timestep_count", dataset.timestep_count()},
      {"grouped", org.grouped},
      {"groups", std::move(groups)},
      {"cases", std::move(cases)},
      {"threshold_curves", std::move(thresholds)},
      {"chart_curves", std::move(chart)},
      {"request", to_json(result.resolved)},
  };
}

OrganizedResult organized_from_json(const json& response) {
  OrganizedResult out;
  out.grouped = response.at("grouped").get<bool>();
  for (const json& g : response.at("groups")) {
    CaseGroup group;
    if (!g.at("category").is_null()) group.category = g.at("category").get<std::string>();
    group.case_ids = g.at("cases").get<std::vector<std::string>>();
    out.groups.push_back(std::move(group));
  }
  for (const json& c : response.at("cases")) {
    OrganizedCase oc;
    oc.id = c.at("id").get<std::string>();
    oc.category = c.at("category").get<std::string>();
    oc.sort_key = c.at("sort_key").get<std::size_t>();
    for (const auto& [token, len] : c.at("colored_lengths").items()) {
      oc.colored_lengths.emplace(token, len.get<std::size_t>());
    }
    for (const json& s : c.at("segments")) {
      DisplaySegment seg{s.at("start").get<std::size_t>(), s.at("end").get<std::size_t>(), {}};
      const auto color = s.at("color").get<std::string>();
      if (color != "context") seg.color = color;
      oc.segments.push_back(std::move(seg));
    }
    out.cases.push_back(std::move(oc));
  }
  for (const json& curve : response.at("threshold_curves")) {
    Series s;
    for (const json& v : curve) s.push_back(v.is_null() ? Value{} : Value{v.get<double>()});
    out.threshold_curves.push_back(std::move(s));
  }
  return out;
}

json report_to_json(const IngestReport& report) {
  return {{"case_count", report.case_count},
          {"timestep_count", report.timestep_count},
          {"missing_cell_count", report.missing_cell_count},
          {"category_count", report.category_count},
          {"warnings", report.warnings}};
}

json metadata_to_json(const Dataset& dataset) {
  json cases = json::array();
  std::size_t missing = 0;
  for (const DataCase& c : dataset.cases()) {
    cases.push_back({{"id", c.id}, {"name", c.name}, {"category", c.category_or_default()}});
    for (const Value& v : c.values) missing += v ? 0 : 1;
  }
  return {{"dataset_id", dataset.id()},
          {"time_labels", dataset.axis().labels()},
          {"categories", dataset.categories()},
          {"cases", std::move(cases)},
          {"case_count", dataset.case_count()},
          {"timestep_count", dataset.timestep_count()},
          {"missing_cell_count", missing}};
}

json series_to_json(const Dataset& dataset, std::span<const std::string> case_ids) {
  json series = json::object();
  if (case_ids.empty()) {
    for (const DataCase& c : dataset.cases()) series[c.id] = to_json(c.values);
  } else {
    for (const std::string& id : case_ids) series[id] = to_json(dataset.find(id).values);
  }
  return {{"dataset_id", dataset.id()}, {"time_labels", dataset.axis().labels()}, {"series", series}};
}

std::string segments_to_csv(const Dataset& dataset, const QueryResult& result) {
  std::string out = "case_id,start_label,end_label,color\n";
  const TimeAxis& axis = dataset.axis();
  for (const OrganizedCase& c : result.organized.cases) {
    for (const DisplaySegment& s : c.segments) {
      append_csv_field(out, c.id);
      out.push_back(',');
      append_csv_field(out, axis.label(s.start));
      out.push_back(',');
      append_csv_field(out, axis.label(s.end));
      out.push_back(',');
      append_csv_field(out, s.color ? *s.color : "context");
      out.push_back('\n');
    }
  }
  return out;
}

std::string dump(const json& document) { return document.dump(2) + "\n"; }

}  // namespace whichwhen::wire
