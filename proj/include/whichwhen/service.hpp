#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "whichwhen/ingest.hpp"
#include "whichwhen/model.hpp"

namespace whichwhen {

/// In-memory dataset store. Concurrent readers, exclusive writers. When a
/// snapshot directory is configured every stored dataset is also written
/// there as `<id>.csv` and reloaded by load_snapshots().
class DatasetRegistry {
 public:
  explicit DatasetRegistry(std::optional<std::filesystem::path> snapshot_dir = std::nullopt);

  /// Stores the dataset under a fresh id (or `preferred_id` when free) and
  /// returns the stored copy.
  std::shared_ptr<const Dataset> add(const Dataset& dataset,
                                     std::optional<std::string> preferred_id = std::nullopt);
  std::shared_ptr<const Dataset> get(const std::string& id) const;
  std::vector<std::shared_ptr<const Dataset>> list() const;

  /// Returns the number of datasets loaded.
  std::size_t load_snapshots();

 private:
  std::string fresh_id_locked();
  void write_snapshot(const Dataset& dataset) const;

  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<const Dataset>> datasets_;
  std::size_t next_id_ = 1;
  std::optional<std::filesystem::path> snapshot_dir_;
};

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks an ephemeral port
  std::optional<std::filesystem::path> snapshot_dir;
  std::optional<std::filesystem::path> static_dir;
  std::size_t max_body_bytes = 64 * 1024 * 1024;

  /// Overrides fields from WHICHWHEN_HOST, WHICHWHEN_PORT,
  /// WHICHWHEN_SNAPSHOT_DIR and WHICHWHEN_STATIC_DIR when set.
  static ServiceConfig from_environment(ServiceConfig base);
};

/// HTTP JSON front end over the engine.
///
///   GET  /health
///   GET  /datasets
///   POST /datasets?has_category_column=true    (body: CSV)
///   GET  /datasets/{id}
///   GET  /datasets/{id}/series?cases=a,b
///   POST /datasets/{id}/query                   (body: QueryRequest JSON)
class Service {
 public:
  explicit Service(ServiceConfig config);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  DatasetRegistry& registry();

  /// Binds the listening socket; returns the bound port. Throws Error(Io).
  int bind();
  /// Serves until stop() is called. bind() must have succeeded.
  void listen();
  void stop();
  /// Blocks until the server accepts connections (for tests running listen()
  /// on another thread).
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace whichwhen
