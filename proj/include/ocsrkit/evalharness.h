//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef OCSRKIT_EVALHARNESS_H_
#define OCSRKIT_EVALHARNESS_H_

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ocsrkit/fingerprint.h"

namespace ocsrkit {

enum class Verdict : std::uint8_t {
  kCorrect,
  kIncorrect,
  kGoldInvalid,
  kPredInvalid,
  kMissing,
};

std::string_view verdict_name(Verdict v);

struct EvalOptions {
  // Compare chirality and bond-direction markers too.
  bool strict_stereo = false;
  FingerprintParams fingerprint;
  unsigned threads = 1;
};

struct PairScore {
  Verdict verdict = Verdict::kMissing;
  // Present when both SMILES parts parse.
  std::optional<double> tanimoto;
};

// Correct iff the canonical E-SMILES strings match. Both sides are parsed
// leniently.
PairScore score_pair(std::string_view gold,
                     std::optional<std::string_view> pred,
                     const EvalOptions &opts = {});

struct GoldRecord {
  std::string id;
  std::string esmiles;
  std::optional<std::string> image;
};

struct PredRecord {
  std::string id;
  std::string esmiles;
};

struct EvalRecord {
  std::string id;
  std::string gold;
  std::optional<std::string> pred;
  Verdict verdict = Verdict::kMissing;
  std::optional<double> tanimoto;
  bool has_extension = false;
};

struct SplitAccuracy {
  std::size_t total = 0;
  std::size_t correct = 0;
  double accuracy = 0;  // percent
};

struct EvalReport {
  std::vector<EvalRecord> records;  // gold order
  // Scored records: gold size minus GoldInvalid.
  std::size_t total = 0;
  std::array<std::size_t, 5> verdict_counts{};
  double accuracy = 0;  // percent of total
  std::optional<double> mean_tanimoto;
  SplitAccuracy plain;
  SplitAccuracy extension;
  // Prediction ids absent from gold, and repeated prediction ids (first
  // occurrence is scored).
  std::size_t unmatched_predictions = 0;
  std::size_t duplicate_predictions = 0;

  std::size_t count(Verdict v) const {
    return verdict_counts[static_cast<int>(v)];
  }
};

// Throws DuplicateGoldId.
EvalReport evaluate(std::span<const GoldRecord> gold,
                    std::span<const PredRecord> preds,
                    const EvalOptions &opts = {});

std::string format_percent(double pct);  // two decimals, e.g. "76.90"

// JSON object with the aggregate fields; `with_records` adds per-record
// verdicts.
std::string report_json(const EvalReport &report, bool with_records = false);
std::string report_table(const EvalReport &report);

// JSONL readers; throw std::runtime_error naming the offending line.
std::vector<GoldRecord> read_gold_jsonl(std::istream &in);
std::vector<PredRecord> read_pred_jsonl(std::istream &in);

}  // namespace ocsrkit

#endif  // OCSRKIT_EVALHARNESS_H_
