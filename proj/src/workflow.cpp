//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrkit/workflow.h"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"
#include "ocsrkit/errors.h"

namespace ocsrkit {

namespace {

constexpr std::array<std::string_view, 5> kStateNames = {
  "pending", "annotated", "under_review", "accepted", "rejected",
};

constexpr std::array<std::string_view, 4> kBucketNames = {
  "direct", "one_edit", "two_rounds", "three_plus",
};

}  // namespace

std::string_view state_name(TaskState s) {
  return kStateNames[static_cast<int>(s)];
}

std::optional<TaskState> state_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kStateNames.size(); ++i)
    if (kStateNames[i] == name)
      return static_cast<TaskState>(i);
  return std::nullopt;
}

AnnotationTask AnnotationTask::create(std::string id, std::string image_ref,
                                      std::string pre_annotation,
                                      double confidence) {
  AnnotationTask t;
  t.id = std::move(id);
  t.image_ref = std::move(image_ref);
  t.pre_annotation = std::move(pre_annotation);
  t.confidence = confidence;
  t.current_annotation = t.pre_annotation;
  return t;
}

AnnotationTask submit_annotation(const AnnotationTask &task,
                                 std::string_view user,
                                 std::string_view esmiles) {
  if (task.state != TaskState::kPending && task.state != TaskState::kRejected)
    throw IllegalTransition("cannot annotate task '" + task.id + "' in state "
                            + std::string(state_name(task.state)));
  if (user.empty())
    throw std::invalid_argument("user id required");
  AnnotationTask t = task;
  const bool changed = esmiles != t.current_annotation;
  if (changed)
    ++t.edit_rounds;
  t.direct_use = t.direct_use && t.edit_rounds == 0
                 && esmiles == t.pre_annotation;
  ++t.submissions;
  ++t.version;
  t.current_annotation = std::string(esmiles);
  t.version_author = std::string(user);
  t.state = TaskState::kAnnotated;
  t.history.push_back(
      { TaskEventKind::kAnnotation, t.version_author, t.current_annotation,
        false, t.version });
  return t;
}

AnnotationTask submit_review(const AnnotationTask &task,
                             std::string_view user, bool approve) {
  if (task.state != TaskState::kAnnotated
      && task.state != TaskState::kUnderReview)
    throw IllegalTransition("cannot review task '" + task.id + "' in state "
                            + std::string(state_name(task.state)));
  if (user == task.version_author)
    throw SelfReview("user '" + std::string(user)
                     + "' authored the annotation under review");
  for (const Review &r: task.reviews)
    if (r.version == task.version && r.reviewer == user)
      throw DuplicateReviewer("user '" + std::string(user)
                              + "' already reviewed this version");

  AnnotationTask t = task;
  t.reviews.push_back({ std::string(user), approve, t.version });
  t.history.push_back(
      { TaskEventKind::kReview, std::string(user), {}, approve, t.version });
  if (!approve)
    t.state = TaskState::kRejected;
  else
    t.state = t.state == TaskState::kAnnotated ? TaskState::kUnderReview
                                               : TaskState::kAccepted;
  return t;
}

std::string_view bucket_name(RoundBucket b) {
  return kBucketNames[static_cast<int>(b)];
}

RoundBucket bucket_of(const AnnotationTask &task) {
  if (task.submissions <= 1)
    return task.direct_use ? RoundBucket::kDirect : RoundBucket::kOneEdit;
  if (task.submissions == 2)
    return RoundBucket::kTwoRounds;
  return RoundBucket::kThreePlus;
}

double RoundStats::percent(RoundBucket b) const {
  return static_cast<double>(hundredths[static_cast<int>(b)]) / 100.0;
}

std::string RoundStats::percent_text(RoundBucket b) const {
  std::int64_t h = hundredths[static_cast<int>(b)];
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld.%02lld",
                static_cast<long long>(h / 100),
                static_cast<long long>(h % 100));
  return buf;
}

RoundStats round_stats_from_counts(const std::array<std::size_t, 4> &counts) {
  RoundStats s;
  s.counts = counts;
  for (std::size_t c: counts)
    s.total += c;
  if (s.total == 0)
    return s;
  // Largest remainder: floor every share, then hand the leftover
  // hundredths to the largest remainders (lower bucket first on ties).
  const auto n = static_cast<std::int64_t>(s.total);
  std::array<std::int64_t, 4> rem{};
  std::int64_t given = 0;
  for (int i = 0; i < 4; ++i) {
    const auto scaled = static_cast<std::int64_t>(counts[i]) * 10000;
    s.hundredths[i] = scaled / n;
    rem[i] = scaled % n;
    given += s.hundredths[i];
  }
  std::array<int, 4> order = { 0, 1, 2, 3 };
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return rem[a] > rem[b]; });
  for (int k = 0; given < 10000; ++k, ++given)
    ++s.hundredths[order[k]];
  return s;
}

RoundStats round_stats(std::span<const AnnotationTask> tasks) {
  std::array<std::size_t, 4> counts{};
  for (const AnnotationTask &t: tasks)
    if (t.state == TaskState::kAccepted)
      ++counts[static_cast<int>(bucket_of(t))];
  return round_stats_from_counts(counts);
}

void ExportPolicy::check() const {
  if (batch_size < 1)
    throw std::invalid_argument("batch size must be at least 1");
}

ExportResult export_batches(std::span<const AnnotationTask> accepted,
                            const ExportPolicy &policy) {
  policy.check();
  ExportResult out;
  std::vector<ExportRecord> current;
  for (const AnnotationTask &t: accepted) {
    if (t.state != TaskState::kAccepted)
      continue;
    current.push_back({ t.id, t.current_annotation, t.image_ref,
                        t.submissions });
    if (current.size() == policy.batch_size) {
      out.snapshots.push_back(std::move(current));
      current.clear();
    }
  }
  out.residual = current.size();
  return out;
}

std::string snapshot_jsonl(std::span<const ExportRecord> records) {
  std::string out;
  for (const ExportRecord &r: records) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["esmiles"] = r.esmiles;
    j["image"] = r.image;
    j["rounds"] = r.rounds;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace ocsrkit
