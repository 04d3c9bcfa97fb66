//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef OCSRKIT_ANNOSVC_H_
#define OCSRKIT_ANNOSVC_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ocsrkit/workflow.h"

namespace ocsrkit {

using Clock = std::chrono::system_clock;

struct StoreOptions {
  // Directory holding journal.jsonl and snapshot.json. Empty keeps the store
  // in memory only.
  std::filesystem::path data_dir;
  // Write a snapshot after this many journal entries (0 disables).
  std::size_t snapshot_every = 1000;
  // fdatasync after every journal append.
  bool sync = false;
  std::chrono::seconds lease = std::chrono::minutes(10);
  ExportPolicy export_policy;
  std::function<Clock::time_point()> now = [] { return Clock::now(); };
};

struct TaskIntake {
  std::string id;
  std::string image;
  std::string pre_annotation;
  double confidence = 0;
};

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

enum class Role : std::uint8_t { kAnnotator, kReviewer };

// State is a pure fold over the journal. Journal lines are JSON objects:
//   seq         1-based position, strictly increasing
//   type        "intake" | "annotation" | "review"
//   request_id  client X-Request-Id or "" (idempotency key)
//   intake:     tasks: [{id, image, pre_annotation, confidence}]
//   annotation: task, user, esmiles
//   review:     task, user, approve (bool)
// Only successful mutations are journaled. Leases are not journaled.
// snapshot.json holds {"seq", "store"} where store is serialize() output;
// replay loads it and applies journal entries with a larger seq. A final
// line without its newline is treated as torn and truncated.
class TaskStore {
public:
  explicit TaskStore(StoreOptions opts = {});
  ~TaskStore();

  TaskStore(const TaskStore &) = delete;
  TaskStore &operator=(const TaskStore &) = delete;

  // Mutations. The request id makes retries return the first response.
  // Annotations that fail strict E-SMILES validation are refused with 400.
  ApiResponse intake(std::span<const TaskIntake> tasks,
                     std::string_view request_id = {});
  ApiResponse annotate(std::string_view id, std::string_view user,
                       std::string_view esmiles,
                       std::string_view request_id = {});
  ApiResponse review(std::string_view id, std::string_view user, bool approve,
                     std::string_view request_id = {});

  // Leases the first eligible task in intake order (204 when none); a user's
  // existing lease is renewed and returned.
  ApiResponse claim_next(Role role, std::string_view user);

  std::optional<AnnotationTask> get(std::string_view id) const;
  std::vector<AnnotationTask> accepted_in_order() const;
  RoundStats stats() const;
  std::map<TaskState, std::size_t> state_counts() const;
  std::uint64_t seq() const;
  std::size_t size() const;

  // Deterministic JSON of the persistent state.
  std::string serialize() const;

  void snapshot();

  const StoreOptions &options() const { return opts_; }

private:
  struct Impl;
  StoreOptions opts_;
  std::unique_ptr<Impl> impl_;
  mutable std::shared_mutex mu_;
};

std::string task_json(const AnnotationTask &task);
AnnotationTask task_from_json(std::string_view json);

// Request-level API; the HTTP server is a thin router over this.
class AnnoService {
public:
  explicit AnnoService(TaskStore &store,
                       std::filesystem::path image_root = {});

  ApiResponse post_tasks(std::string_view body, std::string_view request_id);
  ApiResponse next(std::string_view role, std::string_view user);
  ApiResponse get_task(std::string_view id) const;
  ApiResponse get_image(std::string_view id) const;
  ApiResponse post_annotation(std::string_view id, std::string_view body,
                              std::string_view request_id,
                              std::string_view header_user = {});
  ApiResponse post_review(std::string_view id, std::string_view body,
                          std::string_view request_id,
                          std::string_view header_user = {});
  ApiResponse validate(std::string_view body) const;
  ApiResponse stats() const;
  ApiResponse export_batch(std::string_view batch) const;

private:
  TaskStore &store_;
  std::filesystem::path image_root_;
};

// {violations, canonical, tokens, layout} for one E-SMILES string.
std::string validation_json(std::string_view esmiles, bool strict = true);

class HttpServer {
public:
  explicit HttpServer(AnnoService &service);
  ~HttpServer();

  // Binds and serves on the calling thread until stop().
  bool listen(const std::string &host, int port);
  // Binds to an ephemeral port and returns it (or -1).
  int bind_any(const std::string &host);
  bool serve_bound();
  void stop();
  void wait_until_ready() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ocsrkit

#endif  // OCSRKIT_ANNOSVC_H_
