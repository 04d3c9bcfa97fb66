//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef OCSRKIT_WORKFLOW_H_
#define OCSRKIT_WORKFLOW_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ocsrkit {

enum class TaskState : std::uint8_t {
  kPending,
  kAnnotated,
  kUnderReview,
  kAccepted,
  kRejected,
};

std::string_view state_name(TaskState s);  // "pending", "annotated", ...
std::optional<TaskState> state_from_name(std::string_view name);

struct Review {
  std::string reviewer;
  bool approve = false;
  int version = 0;

  friend bool operator==(const Review &, const Review &) = default;
};

enum class TaskEventKind : std::uint8_t { kAnnotation, kReview };

struct TaskEvent {
  TaskEventKind kind = TaskEventKind::kAnnotation;
  std::string user;
  std::string esmiles;  // annotation events
  bool approve = false;  // review events
  int version = 0;      // annotation version the event belongs to

  friend bool operator==(const TaskEvent &, const TaskEvent &) = default;
};

// One image moving through annotate -> review -> review. Version v is the
// annotation produced by the v-th submission.
struct AnnotationTask {
  std::string id;
  std::string image_ref;
  std::string pre_annotation;
  double confidence = 0;

  std::string current_annotation;
  TaskState state = TaskState::kPending;
  int submissions = 0;
  int edit_rounds = 0;  // submissions that changed the string
  bool direct_use = true;
  int version = 0;
  std::string version_author;
  std::vector<Review> reviews;
  std::vector<TaskEvent> history;

  static AnnotationTask create(std::string id, std::string image_ref,
                               std::string pre_annotation, double confidence);

  friend bool operator==(const AnnotationTask &,
                         const AnnotationTask &) = default;
};

// Legal from Pending and Rejected. Throws IllegalTransition otherwise.
AnnotationTask submit_annotation(const AnnotationTask &task,
                                 std::string_view user,
                                 std::string_view esmiles);

// Legal from Annotated and UnderReview. Throws SelfReview when `user` wrote
// the current version and DuplicateReviewer when `user` already reviewed it.
AnnotationTask submit_review(const AnnotationTask &task,
                             std::string_view user, bool approve);

enum class RoundBucket : std::uint8_t {
  kDirect,
  kOneEdit,
  kTwoRounds,
  kThreePlus,
};

std::string_view bucket_name(RoundBucket b);

// One unmodified submission is direct; one modified submission is one_edit;
// two submissions are two_rounds; three or more are three_plus.
RoundBucket bucket_of(const AnnotationTask &task);

struct RoundStats {
  std::array<std::size_t, 4> counts{};
  std::size_t total = 0;
  // Percent x 100 by largest-remainder apportionment; sums to 10000.
  std::array<std::int64_t, 4> hundredths{};

  double percent(RoundBucket b) const;
  std::string percent_text(RoundBucket b) const;  // e.g. "56.04"
};

// Only Accepted tasks are counted.
RoundStats round_stats(std::span<const AnnotationTask> tasks);
RoundStats round_stats_from_counts(const std::array<std::size_t, 4> &counts);

struct ExportPolicy {
  std::size_t batch_size = 80000;

  void check() const;
};

struct ExportRecord {
  std::string id;
  std::string esmiles;
  std::string image;
  int rounds = 0;

  friend bool operator==(const ExportRecord &, const ExportRecord &) = default;
};

struct ExportResult {
  std::vector<std::vector<ExportRecord>> snapshots;
  std::size_t residual = 0;
};

// `accepted` is in acceptance order; tasks in other states are skipped.
ExportResult export_batches(std::span<const AnnotationTask> accepted,
                            const ExportPolicy &policy = {});

// One {"id","esmiles","image","rounds"} object per line.
std::string snapshot_jsonl(std::span<const ExportRecord> records);

}  // namespace ocsrkit

#endif  // OCSRKIT_WORKFLOW_H_
