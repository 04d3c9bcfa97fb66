//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrkit/annosvc.h"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

#include "httplib.h"
#include "json.hpp"
#include "ocsrkit/errors.h"
#include "ocsrkit/esmiles.h"
#include "ocsrkit/layout.h"
#include "ocsrkit/tokenizer.h"

namespace ocsrkit {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

// Client-facing failure with an HTTP status.
struct ApiError {
  int status;
  std::string code;
  std::string message;
};

ApiResponse error_response(int status, std::string_view code,
                           std::string_view message) {
  json j;
  j["error"] = code;
  j["message"] = message;
  return { status, j.dump(), "application/json" };
}

ApiResponse error_response(const ApiError &e) {
  return error_response(e.status, e.code, e.message);
}

json task_to_json_value(const AnnotationTask &t) {
  json j;
  j["id"] = t.id;
  j["image"] = t.image_ref;
  j["pre_annotation"] = t.pre_annotation;
  j["confidence"] = t.confidence;
  j["current_annotation"] = t.current_annotation;
  j["state"] = state_name(t.state);
  j["submissions"] = t.submissions;
  j["edit_rounds"] = t.edit_rounds;
  j["direct_use"] = t.direct_use;
  j["version"] = t.version;
  j["version_author"] = t.version_author;
  json reviews = json::array();
  for (const Review &r: t.reviews)
    reviews.push_back({ { "reviewer", r.reviewer },
                        { "approve", r.approve },
                        { "version", r.version } });
  j["reviews"] = std::move(reviews);
  json history = json::array();
  for (const TaskEvent &e: t.history) {
    json h;
    h["kind"] = e.kind == TaskEventKind::kAnnotation ? "annotation" : "review";
    h["user"] = e.user;
    if (e.kind == TaskEventKind::kAnnotation)
      h["esmiles"] = e.esmiles;
    else
      h["approve"] = e.approve;
    h["version"] = e.version;
    history.push_back(std::move(h));
  }
  j["history"] = std::move(history);
  return j;
}

AnnotationTask task_from_json_value(const json &j) {
  AnnotationTask t;
  t.id = j.at("id").get<std::string>();
  t.image_ref = j.at("image").get<std::string>();
  t.pre_annotation = j.at("pre_annotation").get<std::string>();
  t.confidence = j.at("confidence").get<double>();
  t.current_annotation = j.at("current_annotation").get<std::string>();
  auto state = state_from_name(j.at("state").get<std::string>());
  if (!state)
    throw std::runtime_error("unknown task state");
  t.state = *state;
  t.submissions = j.at("submissions").get<int>();
  t.edit_rounds = j.at("edit_rounds").get<int>();
  t.direct_use = j.at("direct_use").get<bool>();
  t.version = j.at("version").get<int>();
  t.version_author = j.at("version_author").get<std::string>();
  for (const auto &r: j.at("reviews"))
    t.reviews.push_back({ r.at("reviewer").get<std::string>(),
                          r.at("approve").get<bool>(),
                          r.at("version").get<int>() });
  for (const auto &h: j.at("history")) {
    TaskEvent e;
    e.kind = h.at("kind").get<std::string>() == "annotation"
                 ? TaskEventKind::kAnnotation
                 : TaskEventKind::kReview;
    e.user = h.at("user").get<std::string>();
    if (e.kind == TaskEventKind::kAnnotation)
      e.esmiles = h.at("esmiles").get<std::string>();
    else
      e.approve = h.at("approve").get<bool>();
    e.version = h.at("version").get<int>();
    t.history.push_back(std::move(e));
  }
  return t;
}

bool eligible(const AnnotationTask &t, Role role, std::string_view user) {
  if (role == Role::kAnnotator)
    return t.state == TaskState::kPending || t.state == TaskState::kRejected;
  if (t.state != TaskState::kAnnotated && t.state != TaskState::kUnderReview)
    return false;
  if (t.version_author == user)
    return false;
  for (const Review &r: t.reviews)
    if (r.version == t.version && r.reviewer == user)
      return false;
  return true;
}

void write_all(int fd, const std::string &data) {
  const char *p = data.data();
  std::size_t left = data.size();
  while (left > 0) {
    ssize_t n = ::write(fd, p, left);
    if (n < 0) {
      if (errno == EINTR)
        continue;
      throw std::runtime_error(std::string("journal write failed: ")
                               + std::strerror(errno));
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }
}

}  // namespace

struct TaskStore::Impl {
  struct Cached {
    int status;
    std::string body;
  };
  struct Lease {
    std::string user;
    Clock::time_point expiry;
  };
  // A validated, uncommitted mutation.
  struct Plan {
    std::vector<AnnotationTask> tasks;
    bool is_intake = false;
    ApiResponse response;
  };

  std::map<std::string, AnnotationTask, std::less<>> tasks;
  std::vector<std::string> intake_order;
  std::vector<std::string> accepted_order;
  std::uint64_t seq = 0;
  std::map<std::string, Cached, std::less<>> requests;
  std::map<std::string, Cached, std::less<>> failed;
  std::map<std::string, Lease, std::less<>> leases;
  int journal_fd = -1;
  std::size_t since_snapshot = 0;

  const AnnotationTask &find(std::string_view id) const {
    auto it = tasks.find(id);
    if (it == tasks.end())
      throw ApiError{ 404, "not_found", "unknown task '" + std::string(id) + "'" };
    return it->second;
  }

  Plan plan(const json &e) const {
    const std::string type = e.at("type").get<std::string>();
    Plan p;
    try {
      if (type == "intake") {
        p.is_intake = true;
        std::set<std::string> fresh;
        json created = json::array();
        for (const auto &t: e.at("tasks")) {
          std::string id = t.at("id").get<std::string>();
          if (id.empty())
            throw ApiError{ 400, "bad_request", "task id must be non-empty" };
          if (tasks.count(id) || !fresh.insert(id).second)
            throw ApiError{ 409, "duplicate_task", "task '" + id + "' exists" };
          p.tasks.push_back(AnnotationTask::create(
              id, t.at("image").get<std::string>(),
              t.at("pre_annotation").get<std::string>(),
              t.at("confidence").get<double>()));
          created.push_back(id);
        }
        json body;
        body["created"] = std::move(created);
        p.response = { 201, body.dump(), "application/json" };
        return p;
      }
      const std::string id = e.at("task").get<std::string>();
      const AnnotationTask &cur = find(id);
      const std::string user = e.at("user").get<std::string>();
      if (user.empty())
        throw ApiError{ 400, "bad_request", "user is required" };
      if (type == "annotation") {
        const std::string esmiles = e.at("esmiles").get<std::string>();
        auto violations = check_esmiles(esmiles, ParseMode::kStrict);
        if (!violations.empty()) {
          std::string msg = "annotation fails strict validation:";
          for (const Violation &v: violations)
            msg += " " + std::string(violation_name(v.code));
          throw ApiError{ 400, "invalid_esmiles", msg };
        }
        p.tasks.push_back(submit_annotation(cur, user, esmiles));
      }
      else if (type == "review")
        p.tasks.push_back(submit_review(cur, user, e.at("approve").get<bool>()));
      else
        throw ApiError{ 400, "bad_request", "unknown event type '" + type + "'" };
      p.response = { 200, task_to_json_value(p.tasks.back()).dump(),
                     "application/json" };
      return p;
    } catch (const IllegalTransition &ex) {
      throw ApiError{ 409, "illegal_transition", ex.what() };
    } catch (const SelfReview &ex) {
      throw ApiError{ 409, "self_review", ex.what() };
    } catch (const DuplicateReviewer &ex) {
      throw ApiError{ 409, "duplicate_reviewer", ex.what() };
    } catch (const json::exception &ex) {
      throw ApiError{ 400, "bad_request", ex.what() };
    } catch (const std::invalid_argument &ex) {
      throw ApiError{ 400, "bad_request", ex.what() };
    }
  }

  void commit(const json &e, Plan &p) {
    seq = e.at("seq").get<std::uint64_t>();
    for (AnnotationTask &t: p.tasks) {
      auto it = tasks.find(t.id);
      const bool was_accepted =
          it != tasks.end() && it->second.state == TaskState::kAccepted;
      if (t.state == TaskState::kAccepted && !was_accepted)
        accepted_order.push_back(t.id);
      if (p.is_intake)
        intake_order.push_back(t.id);
      std::string id = t.id;
      tasks.insert_or_assign(std::move(id), std::move(t));
    }
    const std::string rid = e.at("request_id").get<std::string>();
    if (!rid.empty())
      requests[rid] = { p.response.status, p.response.body };
  }

  // Shared mutation path: idempotency lookup, lease check, validation,
  // journal append, commit, lease release and periodic snapshot.
  ApiResponse mutate(TaskStore &store, std::shared_mutex &mu,
                     const StoreOptions &opts, json event,
                     std::string_view request_id, std::string_view lease_task,
                     std::string_view user) {
    std::unique_lock lock(mu);
    if (!request_id.empty()) {
      if (auto it = requests.find(request_id); it != requests.end())
        return { it->second.status, it->second.body, "application/json" };
      if (auto it = failed.find(request_id); it != failed.end())
        return { it->second.status, it->second.body, "application/json" };
    }
    if (!lease_task.empty()) {
      auto it = leases.find(lease_task);
      if (it != leases.end() && it->second.user != user
          && it->second.expiry > opts.now())
        return error_response(423, "lease_held",
                              "task is leased by another user");
    }

    json e;
    e["seq"] = seq + 1;
    e["type"] = event["type"];
    e["request_id"] = std::string(request_id);
    for (auto it = event.begin(); it != event.end(); ++it)
      if (it.key() != "type")
        e[it.key()] = it.value();

    Plan p;
    try {
      p = plan(e);
    } catch (const ApiError &err) {
      ApiResponse r = error_response(err);
      if (!request_id.empty())
        failed[std::string(request_id)] = { r.status, r.body };
      return r;
    }
    if (journal_fd >= 0) {
      write_all(journal_fd, e.dump() + "\n");
      if (opts.sync)
        ::fdatasync(journal_fd);
    }
    commit(e, p);
    if (!lease_task.empty())
      leases.erase(std::string(lease_task));

    ++since_snapshot;
    if (journal_fd >= 0 && opts.snapshot_every > 0
        && since_snapshot >= opts.snapshot_every) {
      lock.unlock();
      store.snapshot();
    }
    return p.response;
  }

  json to_json() const {
    json j;
    j["seq"] = seq;
    json ts = json::array();
    for (const auto &[_, t]: tasks)
      ts.push_back(task_to_json_value(t));
    j["tasks"] = std::move(ts);
    j["intake_order"] = intake_order;
    j["accepted_order"] = accepted_order;
    json reqs = json::object();
    for (const auto &[id, c]: requests)
      reqs[id] = { { "status", c.status }, { "body", c.body } };
    j["requests"] = std::move(reqs);
    return j;
  }

  void from_json(const json &j) {
    seq = j.at("seq").get<std::uint64_t>();
    for (const auto &t: j.at("tasks")) {
      AnnotationTask task = task_from_json_value(t);
      std::string id = task.id;
      tasks.emplace(std::move(id), std::move(task));
    }
    intake_order = j.at("intake_order").get<std::vector<std::string>>();
    accepted_order = j.at("accepted_order").get<std::vector<std::string>>();
    for (const auto &[id, c]: j.at("requests").items())
      requests[id] = { c.at("status").get<int>(),
                       c.at("body").get<std::string>() };
  }
};

TaskStore::TaskStore(StoreOptions opts)
    : opts_(std::move(opts)), impl_(std::make_unique<Impl>()) {
  if (opts_.data_dir.empty())
    return;
  fs::create_directories(opts_.data_dir);
  const fs::path snap = opts_.data_dir / "snapshot.json";
  const fs::path journal = opts_.data_dir / "journal.jsonl";

  if (fs::exists(snap)) {
    std::ifstream in(snap);
    json j = json::parse(in);
    impl_->from_json(j.at("store"));
  }

  std::uintmax_t good_end = 0;
  if (fs::exists(journal)) {
    std::ifstream in(journal, std::ios::binary);
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    std::size_t pos = 0;
    while (pos < content.size()) {
      std::size_t nl = content.find('\n', pos);
      if (nl == std::string::npos)
        break;  // torn tail
      std::string_view line(content.data() + pos, nl - pos);
      json e;
      try {
        e = json::parse(line);
      } catch (const json::exception &) {
        if (content.find('\n', nl + 1) == std::string::npos)
          break;  // unreadable final line
        throw std::runtime_error("journal corrupt at byte "
                                 + std::to_string(pos));
      }
      const auto s = e.at("seq").get<std::uint64_t>();
      if (s > impl_->seq) {
        if (s != impl_->seq + 1)
          throw std::runtime_error("journal gap before seq " + std::to_string(s));
        try {
          Impl::Plan p = impl_->plan(e);
          impl_->commit(e, p);
        } catch (const ApiError &err) {
          throw std::runtime_error("journal replay failed at seq "
                                   + std::to_string(s) + ": " + err.message);
        }
      }
      pos = nl + 1;
      good_end = pos;
    }
    if (good_end != content.size())
      fs::resize_file(journal, good_end);
  }

  impl_->journal_fd = ::open(journal.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (impl_->journal_fd < 0)
    throw std::runtime_error("cannot open journal " + journal.string());
}

TaskStore::~TaskStore() {
  if (impl_ && impl_->journal_fd >= 0)
    ::close(impl_->journal_fd);
}


ApiResponse TaskStore::intake(std::span<const TaskIntake> tasks,
                              std::string_view request_id) {
  json e;
  e["type"] = "intake";
  json arr = json::array();
  for (const TaskIntake &t: tasks)
    arr.push_back({ { "id", t.id },
                    { "image", t.image },
                    { "pre_annotation", t.pre_annotation },
                    { "confidence", t.confidence } });
  e["tasks"] = std::move(arr);
  return impl_->mutate(*this, mu_, opts_, std::move(e), request_id, {}, {});
}

ApiResponse TaskStore::annotate(std::string_view id, std::string_view user,
                                std::string_view esmiles,
                                std::string_view request_id) {
  json e;
  e["type"] = "annotation";
  e["task"] = id;
  e["user"] = user;
  e["esmiles"] = esmiles;
  return impl_->mutate(*this, mu_, opts_, std::move(e), request_id, id, user);
}

ApiResponse TaskStore::review(std::string_view id, std::string_view user,
                              bool approve, std::string_view request_id) {
  json e;
  e["type"] = "review";
  e["task"] = id;
  e["user"] = user;
  e["approve"] = approve;
  return impl_->mutate(*this, mu_, opts_, std::move(e), request_id, id, user);
}


void TaskStore::snapshot() {
  std::unique_lock lock(mu_);
  impl_->since_snapshot = 0;
  if (opts_.data_dir.empty())
    return;
  json j;
  j["seq"] = impl_->seq;
  j["store"] = impl_->to_json();
  const fs::path tmp = opts_.data_dir / "snapshot.json.tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << j.dump() << '\n';
    out.flush();
    if (!out)
      throw std::runtime_error("snapshot write failed");
  }
  fs::rename(tmp, opts_.data_dir / "snapshot.json");
}

ApiResponse TaskStore::claim_next(Role role, std::string_view user) {
  if (user.empty())
    return error_response(400, "bad_request", "user is required");
  std::unique_lock lock(mu_);
  const auto now = opts_.now();
  auto grant = [&](const AnnotationTask &t) {
    auto expiry = now + opts_.lease;
    impl_->leases[t.id] = { std::string(user), expiry };
    json j = task_to_json_value(t);
    j["lease_user"] = user;
    j["lease_expires"] = std::chrono::duration_cast<std::chrono::seconds>(
                             expiry.time_since_epoch())
                             .count();
    return ApiResponse{ 200, j.dump(), "application/json" };
  };

  for (const auto &[id, lease]: impl_->leases) {
    if (lease.user != user || lease.expiry <= now)
      continue;
    const AnnotationTask &t = impl_->tasks.at(id);
    if (eligible(t, role, user))
      return grant(t);
  }
  for (const std::string &id: impl_->intake_order) {
    const AnnotationTask &t = impl_->tasks.at(id);
    if (!eligible(t, role, user))
      continue;
    auto it = impl_->leases.find(id);
    if (it != impl_->leases.end() && it->second.user != user
        && it->second.expiry > now)
      continue;
    return grant(t);
  }
  return { 204, "", "application/json" };
}

std::optional<AnnotationTask> TaskStore::get(std::string_view id) const {
  std::shared_lock lock(mu_);
  auto it = impl_->tasks.find(id);
  if (it == impl_->tasks.end())
    return std::nullopt;
  return it->second;
}

std::vector<AnnotationTask> TaskStore::accepted_in_order() const {
  std::shared_lock lock(mu_);
  std::vector<AnnotationTask> out;
  out.reserve(impl_->accepted_order.size());
  for (const std::string &id: impl_->accepted_order)
    out.push_back(impl_->tasks.at(id));
  return out;
}

RoundStats TaskStore::stats() const {
  std::shared_lock lock(mu_);
  std::array<std::size_t, 4> counts{};
  for (const auto &[_, t]: impl_->tasks)
    if (t.state == TaskState::kAccepted)
      ++counts[static_cast<int>(bucket_of(t))];
  return round_stats_from_counts(counts);
}

std::map<TaskState, std::size_t> TaskStore::state_counts() const {
  std::shared_lock lock(mu_);
  std::map<TaskState, std::size_t> out;
  for (int s = 0; s < 5; ++s)
    out[static_cast<TaskState>(s)] = 0;
  for (const auto &[_, t]: impl_->tasks)
    ++out[t.state];
  return out;
}

std::uint64_t TaskStore::seq() const {
  std::shared_lock lock(mu_);
  return impl_->seq;
}

std::size_t TaskStore::size() const {
  std::shared_lock lock(mu_);
  return impl_->tasks.size();
}

std::string TaskStore::serialize() const {
  std::shared_lock lock(mu_);
  return impl_->to_json().dump();
}

std::string task_json(const AnnotationTask &task) {
  return task_to_json_value(task).dump();
}

AnnotationTask task_from_json(std::string_view text) {
  return task_from_json_value(json::parse(text));
}

// ---------------------------------------------------------------------------

std::string validation_json(std::string_view esmiles, bool strict) {
  const ParseMode mode = strict ? ParseMode::kStrict : ParseMode::kLenient;
  json j;
  json violations = json::array();
  for (const Violation &v: check_esmiles(esmiles, mode)) {
    json o;
    o["code"] = violation_name(v.code);
    o["message"] = v.message;
    o["annotation"] = v.annotation ? json(*v.annotation) : json(nullptr);
    o["atom"] = v.atom ? json(*v.atom) : json(nullptr);
    violations.push_back(std::move(o));
  }
  j["valid"] = violations.empty();
  j["violations"] = std::move(violations);

  std::optional<ESmilesDoc> doc;
  try {
    doc = parse_esmiles(esmiles, ParseMode::kLenient);
  } catch (const Error &) {
  } catch (const std::invalid_argument &) {
  }
  j["canonical"] = doc ? json(canonical_esmiles(*doc)) : json(nullptr);

  try {
    TokenSequence ts = tokenize(esmiles, Vocabulary::standard());
    json tokens = json::array();
    std::size_t offset = 0;
    for (std::size_t i = 0; i < ts.ids.size(); ++i) {
      tokens.push_back({ { "text", ts.tokens[i] },
                         { "id", ts.ids[i] },
                         { "offset", offset } });
      offset += ts.tokens[i].size();
    }
    j["tokens"] = std::move(tokens);
  } catch (const UnknownCharacter &e) {
    j["tokens"] = nullptr;
    j["token_error"] = e.what();
  }

  json layout = json::array();
  if (doc)
    for (const Point &p: layout2d(*doc))
      layout.push_back({ { "x", p.x }, { "y", p.y } });
  j["layout"] = std::move(layout);
  return j.dump();
}

AnnoService::AnnoService(TaskStore &store, std::filesystem::path image_root)
    : store_(store), image_root_(std::move(image_root)) { }

namespace {

std::optional<json> parse_body(std::string_view body) {
  try {
    json j = json::parse(body);
    return j;
  } catch (const json::exception &) {
    return std::nullopt;
  }
}

std::optional<std::string> string_field(const json &j, const char *key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string())
    return std::nullopt;
  return it->get<std::string>();
}

}  // namespace

ApiResponse AnnoService::post_tasks(std::string_view body,
                                    std::string_view request_id) {
  auto j = parse_body(body);
  if (!j)
    return error_response(400, "bad_request", "body is not JSON");
  const json *list = &*j;
  if (j->is_object() && j->contains("tasks"))
    list = &(*j)["tasks"];
  if (!list->is_array())
    return error_response(400, "bad_request", "expected an array of tasks");
  std::vector<TaskIntake> tasks;
  for (const auto &t: *list) {
    if (!t.is_object())
      return error_response(400, "bad_request", "task must be an object");
    auto id = string_field(t, "id");
    auto pre = string_field(t, "pre_annotation");
    if (!id || !pre)
      return error_response(400, "bad_request",
                            "task needs string id and pre_annotation");
    auto conf = t.find("confidence");
    if (conf != t.end() && !conf->is_number())
      return error_response(400, "bad_request", "confidence must be a number");
    tasks.push_back({ *id, string_field(t, "image").value_or(""), *pre,
                      conf != t.end() ? conf->get<double>() : 0.0 });
  }
  return store_.intake(tasks, request_id);
}

ApiResponse AnnoService::next(std::string_view role, std::string_view user) {
  if (role == "annotator")
    return store_.claim_next(Role::kAnnotator, user);
  if (role == "reviewer")
    return store_.claim_next(Role::kReviewer, user);
  return error_response(400, "bad_request",
                        "role must be annotator or reviewer");
}

ApiResponse AnnoService::get_task(std::string_view id) const {
  auto t = store_.get(id);
  if (!t)
    return error_response(404, "not_found", "unknown task");
  return { 200, task_json(*t), "application/json" };
}

ApiResponse AnnoService::get_image(std::string_view id) const {
  auto t = store_.get(id);
  if (!t)
    return error_response(404, "not_found", "unknown task");
  fs::path p(t->image_ref);
  if (p.is_relative() && !image_root_.empty())
    p = image_root_ / p;
  std::ifstream in(p, std::ios::binary);
  if (t->image_ref.empty() || !in)
    return error_response(404, "not_found", "image not available");
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  std::string ext = p.extension().string();
  for (char &c: ext)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  std::string type = "application/octet-stream";
  if (ext == ".png")
    type = "image/png";
  else if (ext == ".jpg" || ext == ".jpeg")
    type = "image/jpeg";
  else if (ext == ".pgm")
    type = "image/x-portable-graymap";
  else if (ext == ".svg")
    type = "image/svg+xml";
  else if (ext == ".gif")
    type = "image/gif";
  else if (ext == ".webp")
    type = "image/webp";
  return { 200, std::move(bytes), type };
}

ApiResponse AnnoService::post_annotation(std::string_view id,
                                         std::string_view body,
                                         std::string_view request_id,
                                         std::string_view header_user) {
  auto j = parse_body(body);
  if (!j || !j->is_object())
    return error_response(400, "bad_request", "body must be a JSON object");
  auto user = string_field(*j, "user");
  auto esmiles = string_field(*j, "esmiles");
  std::string who = user.value_or(std::string(header_user));
  if (who.empty() || !esmiles)
    return error_response(400, "bad_request", "user and esmiles are required");
  return store_.annotate(id, who, *esmiles, request_id);
}

ApiResponse AnnoService::post_review(std::string_view id,
                                     std::string_view body,
                                     std::string_view request_id,
                                     std::string_view header_user) {
  auto j = parse_body(body);
  if (!j || !j->is_object())
    return error_response(400, "bad_request", "body must be a JSON object");
  auto user = string_field(*j, "user");
  auto approve = j->find("approve");
  std::string who = user.value_or(std::string(header_user));
  if (who.empty() || approve == j->end() || !approve->is_boolean())
    return error_response(400, "bad_request",
                          "user and boolean approve are required");
  return store_.review(id, who, approve->get<bool>(), request_id);
}

ApiResponse AnnoService::validate(std::string_view body) const {
  auto j = parse_body(body);
  if (!j || !j->is_object())
    return error_response(400, "bad_request", "body must be a JSON object");
  auto esmiles = string_field(*j, "esmiles");
  if (!esmiles)
    return error_response(400, "bad_request", "esmiles is required");
  bool strict = string_field(*j, "mode").value_or("strict") != "lenient";
  return { 200, validation_json(*esmiles, strict), "application/json" };
}

ApiResponse AnnoService::stats() const {
  RoundStats s = store_.stats();
  json j;
  j["total_accepted"] = s.total;
  json buckets = json::object();
  for (int b = 0; b < 4; ++b) {
    auto rb = static_cast<RoundBucket>(b);
    buckets[std::string(bucket_name(rb))] = {
      { "count", s.counts[b] },
      { "percent", s.percent(rb) },
      { "percent_text", s.percent_text(rb) },
    };
  }
  j["buckets"] = std::move(buckets);
  json states = json::object();
  for (const auto &[state, n]: store_.state_counts())
    states[std::string(state_name(state))] = n;
  j["states"] = std::move(states);
  j["tasks"] = store_.size();
  return { 200, j.dump(), "application/json" };
}

ApiResponse AnnoService::export_batch(std::string_view batch) const {
  std::size_t n = 0;
  if (batch.empty()
      || batch.find_first_not_of("0123456789") != std::string_view::npos)
    return error_response(400, "bad_request", "batch must be a non-negative integer");
  try {
    n = std::stoull(std::string(batch));
  } catch (const std::exception &) {
    return error_response(400, "bad_request", "batch out of range");
  }
  auto accepted = store_.accepted_in_order();
  ExportResult r = export_batches(accepted, store_.options().export_policy);
  if (n >= r.snapshots.size())
    return error_response(404, "not_found", "batch " + std::to_string(n)
                                                + " is not complete");
  return { 200, snapshot_jsonl(r.snapshots[n]), "application/x-ndjson" };
}

// ---------------------------------------------------------------------------

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(AnnoService &svc) : impl_(std::make_unique<Impl>()) {
  auto &s = impl_->server;
  auto send = [](httplib::Response &res, const ApiResponse &r) {
    res.status = r.status;
    if (r.status != 204)
      res.set_content(r.body, r.content_type);
  };
  auto header = [](const httplib::Request &req, const char *name) {
    return req.get_header_value(name);
  };
  s.set_default_headers({ { "Access-Control-Allow-Origin", "*" } });

  s.Post("/api/tasks", [&svc, send, header](const httplib::Request &req,
                                            httplib::Response &res) {
    send(res, svc.post_tasks(req.body, header(req, "X-Request-Id")));
  });
  s.Get("/api/tasks/next", [&svc, send, header](const httplib::Request &req,
                                                httplib::Response &res) {
    std::string user = req.get_param_value("user");
    if (user.empty())
      user = header(req, "X-User-Id");
    send(res, svc.next(req.get_param_value("role"), user));
  });
  s.Get("/api/tasks/:id/image", [&svc, send](const httplib::Request &req,
                                             httplib::Response &res) {
    send(res, svc.get_image(req.path_params.at("id")));
  });
  s.Get("/api/tasks/:id", [&svc, send](const httplib::Request &req,
                                       httplib::Response &res) {
    send(res, svc.get_task(req.path_params.at("id")));
  });
  s.Post("/api/tasks/:id/annotation",
         [&svc, send, header](const httplib::Request &req,
                              httplib::Response &res) {
           send(res, svc.post_annotation(req.path_params.at("id"), req.body,
                                         header(req, "X-Request-Id"),
                                         header(req, "X-User-Id")));
         });
  s.Post("/api/tasks/:id/review",
         [&svc, send, header](const httplib::Request &req,
                              httplib::Response &res) {
           send(res, svc.post_review(req.path_params.at("id"), req.body,
                                     header(req, "X-Request-Id"),
                                     header(req, "X-User-Id")));
         });
  s.Post("/api/validate", [&svc, send](const httplib::Request &req,
                                       httplib::Response &res) {
    send(res, svc.validate(req.body));
  });
  s.Get("/api/stats", [&svc, send](const httplib::Request &,
                                   httplib::Response &res) {
    send(res, svc.stats());
  });
  s.Get("/api/export", [&svc, send](const httplib::Request &req,
                                    httplib::Response &res) {
    send(res, svc.export_batch(req.get_param_value("batch")));
  });
  s.set_exception_handler([](const httplib::Request &, httplib::Response &res,
                             std::exception_ptr ep) {
    std::string what = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception &e) {
      what = e.what();
    } catch (...) {
    }
    ApiResponse r = error_response(500, "internal", what);
    res.status = 500;
    res.set_content(r.body, r.content_type);
  });
}

HttpServer::~HttpServer() = default;

bool HttpServer::listen(const std::string &host, int port) {
  return impl_->server.listen(host, port);
}

int HttpServer::bind_any(const std::string &host) {
  return impl_->server.bind_to_any_port(host);
}

bool HttpServer::serve_bound() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace ocsrkit
