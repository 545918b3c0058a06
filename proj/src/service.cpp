#include "whichwhen/service.hpp"

// httplib queues only 5 pending connections by default.
#define CPPHTTPLIB_LISTEN_BACKLOG 128
#include <httplib.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

#include "whichwhen/error.hpp"
#include "whichwhen/pipeline.hpp"
#include "whichwhen/wire.hpp"

namespace whichwhen {

using nlohmann::json;

DatasetRegistry::DatasetRegistry(std::optional<std::filesystem::path> snapshot_dir)
    : snapshot_dir_(std::move(snapshot_dir)) {}

namespace {

bool safe_id(const std::string& id) {
  if (id.empty() || id.size() > 128 || id.front() == '.') return false;
  for (char ch : id) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
                    ch == '_' || ch == '-' || ch == '.';
    if (!ok) return false;
  }
  return true;
}

}  // namespace

std::string DatasetRegistry::fresh_id_locked() {
  std::string id;
  do {
    id = "ds" + std::to_string(next_id_++);
  } while (datasets_.count(id) != 0);
  return id;
}

std::shared_ptr<const Dataset> DatasetRegistry::add(const Dataset& dataset,
                                                    std::optional<std::string> preferred_id) {
  std::shared_ptr<const Dataset> stored;
  {
    std::unique_lock lock(mutex_);
    std::string id;
    if (preferred_id && safe_id(*preferred_id) && datasets_.count(*preferred_id) == 0) {
      id = *preferred_id;
    } else {
      id = fresh_id_locked();
    }
    stored = std::make_shared<const Dataset>(dataset.renamed(id));
    datasets_.emplace(id, stored);
  }
  write_snapshot(*stored);
  return stored;
}

std::shared_ptr<const Dataset> DatasetRegistry::get(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = datasets_.find(id);
  if (it == datasets_.end()) {
    throw Error(ErrorKind::NotFound, "unknown-dataset", "unknown dataset '" + id + "'");
  }
  return it->second;
}

std::vector<std::shared_ptr<const Dataset>> DatasetRegistry::list() const {
  std::shared_lock lock(mutex_);
  std::vector<std::shared_ptr<const Dataset>> out;
  out.reserve(datasets_.size());
  for (const auto& [id, ds] : datasets_) out.push_back(ds);
  return out;
}

void DatasetRegistry::write_snapshot(const Dataset& dataset) const {
  if (!snapshot_dir_) return;
  std::error_code ec;
  std::filesystem::create_directories(*snapshot_dir_, ec);
  const auto path = *snapshot_dir_ / (dataset.id() + ".csv");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << to_wide_csv(dataset);
  if (!out) {
    throw Error(ErrorKind::Io, "io-error", "cannot write snapshot '" + path.string() + "'");
  }
}

std::size_t DatasetRegistry::load_snapshots() {
  if (!snapshot_dir_ || !std::filesystem::is_directory(*snapshot_dir_)) return 0;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(*snapshot_dir_)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::size_t loaded = 0;
  for (const auto& path : files) {
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CsvOptions options;
    options.has_category_column = header.rfind("id,category,", 0) == 0;
    IngestResult result = load_dataset_file(path, options);
    const std::string id = path.stem().string();
    std::unique_lock lock(mutex_);
    if (datasets_.count(id) != 0) continue;
    datasets_.emplace(id, std::make_shared<const Dataset>(result.dataset.renamed(id)));
    ++loaded;
  }
  return loaded;
}

ServiceConfig ServiceConfig::from_environment(ServiceConfig base) {
  if (const char* v = std::getenv("WHICHWHEN_HOST"); v && *v) base.host = v;
  if (const char* v = std::getenv("WHICHWHEN_PORT"); v && *v) base.port = std::atoi(v);
  if (const char* v = std::getenv("WHICHWHEN_SNAPSHOT_DIR"); v && *v) base.snapshot_dir = v;
  if (const char* v = std::getenv("WHICHWHEN_STATIC_DIR"); v && *v) base.static_dir = v;
  return base;
}

namespace {

constexpr const char* kJson = "application/json";

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(wire::dump(body), kJson);
}

void send_error(httplib::Response& res, int status, const std::string& reason,
                const std::string& message, json extra = json::object()) {
  extra["error"] = reason;
  extra["message"] = message;
  send_json(res, status, extra);
}

int status_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Parse: return 400;
    case ErrorKind::NotFound: return e.reason() == "unknown-dataset" ? 404 : 400;
    case ErrorKind::Invalid: return 422;
    case ErrorKind::Io: return 500;
  }
  return 500;
}

template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    json extra = json::object();
    if (e.row()) extra["row"] = *e.row();
    if (e.column()) extra["column"] = *e.column();
    send_error(res, 400, e.reason(), e.what(), std::move(extra));
  } catch (const Error& e) {
    send_error(res, status_for(e), e.reason(), e.what());
  } catch (const json::exception& e) {
    send_error(res, 400, "bad-json", e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, "internal", e.what());
  }
}

std::vector<std::string> split_csv_param(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool truthy(const std::string& v) { return v == "1" || v == "true" || v == "yes"; }

}  // namespace

struct Service::Impl {
  ServiceConfig config;
  DatasetRegistry registry;
  httplib::Server server;

  explicit Impl(ServiceConfig c) : config(std::move(c)), registry(config.snapshot_dir) {
    server.set_payload_max_length(config.max_body_bytes);
    // httplib also sets SO_REUSEPORT, which would let a second server share
    // the port silently.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
    });
    if (config.static_dir) server.set_mount_point("/ui", config.static_dir->string());
    routes();
  }

  void routes() {
    server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200, {{"status", "ok"}});
    });

    server.Get("/datasets", [this](const httplib::Request&, httplib::Response& res) {
      json list = json::array();
      for (const auto& ds : registry.list()) {
        list.push_back({{"dataset_id", ds->id()},
                        {"case_count", ds->case_count()},
                        {"timestep_count", ds->timestep_count()}});
      }
      send_json(res, 200, {{"datasets", list}});
    });

    server.Post("/datasets", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        if (req.body.empty()) {
          throw ParseError("empty-body", "request body must contain CSV text");
        }
        CsvOptions options;
        options.has_category_column =
            req.has_param("has_category_column") && truthy(req.get_param_value("has_category_column"));
        IngestResult result = parse_wide_csv(req.body, options);
        auto stored = registry.add(result.dataset);
        send_json(res, 201, {{"dataset_id", stored->id()}, {"report", wire::report_to_json(result.report)}});
      });
    });

    server.Get(R"(/datasets/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { send_json(res, 200, wire::metadata_to_json(*registry.get(req.matches[1]))); });
    });

    server.Get(R"(/datasets/([^/]+)/series)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        auto ds = registry.get(req.matches[1]);
        std::vector<std::string> cases;
        if (req.has_param("cases")) cases = split_csv_param(req.get_param_value("cases"));
        send_json(res, 200, wire::series_to_json(*ds, cases));
      });
    });

    server.Post(R"(/datasets/([^/]+)/query)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        auto ds = registry.get(req.matches[1]);
        const json body = json::parse(req.body);
        const QueryRequest request = wire::request_from_json(body);
        const QueryResult result = run_query(*ds, request);
        send_json(res, 200, wire::response_to_json(*ds, result));
      });
    });
  }
};

Service::Service(ServiceConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {}
Service::~Service() { stop(); }

DatasetRegistry& Service::registry() { return impl_->registry; }

int Service::bind() {
  int port = 0;
  if (impl_->config.port == 0) {
    port = impl_->server.bind_to_any_port(impl_->config.host);
  } else if (impl_->server.bind_to_port(impl_->config.host, impl_->config.port)) {
    port = impl_->config.port;
  } else {
    port = -1;
  }
  if (port <= 0) {
    throw Error(ErrorKind::Io, "bind-failed",
                "cannot bind " + impl_->config.host + ":" + std::to_string(impl_->config.port));
  }
  return port;
}

void Service::listen() { impl_->server.listen_after_bind(); }

void Service::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

void Service::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace whichwhen
