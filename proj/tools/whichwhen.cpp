// Command line front end: batch queries, segment export, and the HTTP service.

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <thread>

#include "cli_request.hpp"
#include "whichwhen/error.hpp"
#include "whichwhen/ingest.hpp"
#include "whichwhen/pipeline.hpp"
#include "whichwhen/service.hpp"
#include "whichwhen/wire.hpp"

namespace {

using namespace whichwhen;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitIo = 2;

std::atomic<bool> g_interrupted{false};

void on_signal(int) { g_interrupted = true; }

struct DocumentOptions {
  std::string data;
  bool has_category = false;
  std::string format;
  std::string output;
};

void add_query_flags(CLI::App* cmd, cli::QueryFlags& q, DocumentOptions& doc) {
  cmd->add_option("--data", doc.data, "Wide CSV dataset")->required();
  cmd->add_flag("--has-category", doc.has_category, "Second CSV column holds the category");
  cmd->add_option("--criterion", q.criterion, "value | rank | net_change | pct_change | variance");
  cmd->add_option("--delta", q.delta, "Lag in timesteps for net_change / pct_change");
  cmd->add_option("--variance-window", q.variance_window, "Odd window length for variance");
  cmd->add_flag("--two-range", q.two_range, "One threshold: low if x <= T, else high");
  cmd->add_flag("--three-range", q.three_range, "Two thresholds: low if x <= LOWER, high if x >= UPPER, else mid");
  cmd->add_option("--threshold", q.threshold, "N | avg[+-N] | ego:ID[+-N]");
  cmd->add_option("--lower", q.lower, "Lower threshold (three-range)");
  cmd->add_option("--upper", q.upper, "Upper threshold (three-range)");
  cmd->add_option("--color", q.colors, "RANGE=COLOR, COLOR may be 'context' or 'hidden'");
  cmd->add_option("--min-len", q.min_len, "Demote colored segments shorter than this");
  cmd->add_option("--max-len", q.max_len, "Demote colored segments longer than this");
  cmd->add_option("--sort", q.sort_color, "Sort by colored length of this color");
  cmd->add_option("--time-window", q.time_window, "START:END time labels for the sort key");
  cmd->add_flag("--group", q.group, "Group cases by category");
  cmd->add_flag("--hide-uncolored", q.hide_uncolored, "Drop cases without any colored segment");
  cmd->add_option("--format", doc.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--output", doc.output, "Write to this file instead of stdout");
}

int run_query_command(const cli::QueryFlags& flags, const DocumentOptions& doc,
                      const std::string& default_format) {
  CsvOptions options;
  options.has_category_column = doc.has_category;
  options.dataset_id = std::filesystem::path(doc.data).stem().string();
  const IngestResult ingest = load_dataset_file(doc.data, options);
  const Dataset& dataset = ingest.dataset;

  const QueryResult result = run_query(dataset, cli::build_request(flags, dataset));
  const std::string format = doc.format.empty() ? default_format : doc.format;
  const std::string text = format == "csv" ? wire::segments_to_csv(dataset, result)
                                           : wire::dump(wire::response_to_json(dataset, result));
  if (doc.output.empty()) {
    std::cout << text << std::flush;
    return kExitOk;
  }
  std::ofstream out(doc.output, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorKind::Io, "io-error", "cannot write '" + doc.output + "'");
  return kExitOk;
}

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::vector<std::string> data;
  bool has_category = false;
  std::string snapshot_dir;
  std::string static_dir;
  bool open = false;
};

int serve_command(const ServeOptions& opts, const CLI::App& cmd) {
  ServiceConfig base;
  base.host = opts.host;
  base.port = opts.port;
  ServiceConfig config = ServiceConfig::from_environment(base);
  // Explicit flags win over the environment.
  if (cmd.count("--host") > 0) config.host = opts.host;
  if (cmd.count("--port") > 0) config.port = opts.port;
  if (!opts.snapshot_dir.empty()) config.snapshot_dir = opts.snapshot_dir;
  if (!opts.static_dir.empty()) config.static_dir = opts.static_dir;

  Service service(config);
  service.registry().load_snapshots();
  for (const std::string& path : opts.data) {
    CsvOptions options;
    options.has_category_column = opts.has_category;
    IngestResult ingest = load_dataset_file(path, options);
    auto stored = service.registry().add(ingest.dataset, std::filesystem::path(path).stem().string());
    std::cerr << "loaded " << path << " as " << stored->id() << " (" << ingest.report.case_count
              << " cases, " << ingest.report.timestep_count << " steps)\n";
  }

  const int port = service.bind();
  std::cout << "listening on http://" << config.host << ":" << port << std::endl;
  if (opts.open) std::cout << "ui: http://" << config.host << ":" << port << "/ui/" << std::endl;

  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::thread watcher([&service] {
    while (!g_interrupted) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    service.stop();
  });
  service.listen();
  g_interrupted = true;
  watcher.join();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Which-and-when queries over collections of univariate time series"};
  app.require_subcommand(1);

  cli::QueryFlags query_flags;
  DocumentOptions query_doc;
  auto* query = app.add_subcommand("query", "Run a query and print the response document (JSON)");
  add_query_flags(query, query_flags, query_doc);

  cli::QueryFlags export_flags;
  DocumentOptions export_doc;
  auto* exporter = app.add_subcommand("export", "Run a query and export its segments (CSV)");
  add_query_flags(exporter, export_flags, export_doc);

  ServeOptions serve_opts;
  auto* serve = app.add_subcommand("serve", "Start the HTTP JSON service");
  serve->add_option("--host", serve_opts.host, "Listen address (env WHICHWHEN_HOST)");
  serve->add_option("--port", serve_opts.port, "Listen port, 0 for ephemeral (env WHICHWHEN_PORT)");
  serve->add_option("--data", serve_opts.data, "Preload a wide CSV dataset (repeatable)");
  serve->add_flag("--has-category", serve_opts.has_category, "Preloaded CSVs carry a category column");
  serve->add_option("--snapshot-dir", serve_opts.snapshot_dir, "Persist uploads here (env WHICHWHEN_SNAPSHOT_DIR)");
  serve->add_option("--static-dir", serve_opts.static_dir, "Serve UI assets under /ui (env WHICHWHEN_STATIC_DIR)");
  serve->add_flag("--open", serve_opts.open, "Print the UI URL");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    if (*query) return run_query_command(query_flags, query_doc, "json");
    if (*exporter) return run_query_command(export_flags, export_doc, "csv");
    if (*serve) return serve_command(serve_opts, *serve);
  } catch (const Error& e) {
    std::cerr << "error: " << e.reason() << ": " << e.what() << "\n";
    return e.kind() == ErrorKind::Io ? kExitIo : kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
