#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "whichwhen/derived.hpp"
#include "whichwhen/error.hpp"
#include "whichwhen/ingest.hpp"
#include "whichwhen/pipeline.hpp"
#include "whichwhen/query.hpp"
#include "whichwhen/wire.hpp"

namespace py = pybind11;
using namespace whichwhen;

namespace {

py::dict report_dict(const IngestReport& r) {
  py::dict d;
  d["case_count"] = r.case_count;
  d["timestep_count"] = r.timestep_count;
  d["missing_cell_count"] = r.missing_cell_count;
  d["category_count"] = r.category_count;
  d["warnings"] = r.warnings;
  return d;
}

py::tuple ingest_tuple(IngestResult result) {
  py::dict report = report_dict(result.report);
  return py::make_tuple(std::move(result.dataset), report);
}

RangeLabel label_from_string(const std::string& s) {
  if (s == "low") return RangeLabel::Low;
  if (s == "mid") return RangeLabel::Mid;
  if (s == "high") return RangeLabel::High;
  if (s == "undefined") return RangeLabel::Undefined;
  throw py::value_error("unknown range label '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Which-and-when query engine";
  m.attr("__version__") = "0.1.0";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<Dataset>(m, "Dataset")
      .def_property_readonly("id", &Dataset::id)
      .def_property_readonly("time_labels", [](const Dataset& d) { return d.axis().labels(); })
      .def_property_readonly("case_ids",
                             [](const Dataset& d) {
                               std::vector<std::string> ids;
                               for (const DataCase& c : d.cases()) ids.push_back(c.id);
                               return ids;
                             })
      .def_property_readonly("categories", &Dataset::categories)
      .def_property_readonly("case_count", &Dataset::case_count)
      .def_property_readonly("timestep_count", &Dataset::timestep_count)
      .def("value_at", &Dataset::value_at, py::arg("case_id"), py::arg("t"))
      .def("values", [](const Dataset& d, const std::string& id) { return d.find(id).values; },
           py::arg("case_id"))
      .def("category", [](const Dataset& d, const std::string& id) {
             return std::string(d.find(id).category_or_default());
           }, py::arg("case_id"))
      .def("time_index_of", [](const Dataset& d, const std::string& label) {
             return d.axis().index_of(label);
           }, py::arg("label"))
      .def("to_csv", &to_wide_csv)
      .def("__len__", &Dataset::case_count)
      .def("__repr__", [](const Dataset& d) {
        return "<Dataset '" + d.id() + "' cases=" + std::to_string(d.case_count()) +
               " steps=" + std::to_string(d.timestep_count()) + ">";
      });

  m.def("parse_wide_csv",
        [](const std::string& text, bool has_category_column, const std::string& dataset_id) {
          return ingest_tuple(parse_wide_csv(text, {has_category_column, dataset_id}));
        },
        py::arg("text"), py::arg("has_category_column") = false, py::arg("dataset_id") = "dataset",
        "Parse wide CSV text; returns (Dataset, report dict).");
  m.def("load_dataset",
        [](const std::filesystem::path& path, bool has_category_column) {
          return ingest_tuple(load_dataset_file(path, {has_category_column, path.stem().string()}));
        },
        py::arg("path"), py::arg("has_category_column") = false);

  m.def("rank_matrix", [](const Dataset& d) { return compute_rank_matrix(d).rows; });
  m.def("net_change", [](const Dataset& d, int delta) { return compute_net_change(d, delta).rows; },
        py::arg("dataset"), py::arg("delta"));
  m.def("pct_change", [](const Dataset& d, int delta) { return compute_pct_change(d, delta).rows; },
        py::arg("dataset"), py::arg("delta"));
  m.def("windowed_variance",
        [](const Dataset& d, int window) { return compute_windowed_variance(d, window).rows; },
        py::arg("dataset"), py::arg("window"));
  m.def("derive",
        [](const Dataset& d, const std::string& kind, int delta, int window) {
          return derive(d, Criterion{criterion_kind_from_string(kind), delta, window}).rows;
        },
        py::arg("dataset"), py::arg("kind"), py::arg("delta") = 1, py::arg("window") = 1);
  m.def("aggregate_series", &compute_aggregate_series, py::arg("dataset"));
  m.def("ego_series", &ego_series, py::arg("dataset"), py::arg("ego_id"));
  m.def("rank_threshold_curve", &rank_threshold_curve, py::arg("dataset"), py::arg("n"));

  m.def("segment_labels",
        [](const std::vector<std::string>& labels) {
          std::vector<RangeLabel> row;
          row.reserve(labels.size());
          for (const auto& s : labels) row.push_back(label_from_string(s));
          std::vector<py::tuple> out;
          for (const Segment& s : segment_labels("", row)) {
            out.push_back(py::make_tuple(s.start, s.end, std::string(to_string(s.label))));
          }
          return out;
        },
        py::arg("labels"), "Run-length segments (start, end, label) of a label row.");

  m.def("run_query_json",
        [](const Dataset& d, const std::string& request) {
          const QueryResult result = run_query(d, wire::request_from_json(wire::json::parse(request)));
          return wire::dump(wire::response_to_json(d, result));
        },
        py::arg("dataset"), py::arg("request_json"));
}
