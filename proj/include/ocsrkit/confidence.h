//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef OCSRKIT_CONFIDENCE_H_
#define OCSRKIT_CONFIDENCE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ocsrkit/fingerprint.h"

namespace ocsrkit {

// Candidate E-SMILES strings produced for one image by an ensemble.
struct PredictionSet {
  std::string item_id;
  std::vector<std::string> predictions;
};

// Fingerprint of the SMILES part (before <sep>), parsed leniently. A string
// that does not parse yields an all-zero fingerprint.
Fingerprint prediction_fingerprint(std::string_view esmiles,
                                   const FingerprintParams &params = {});

// Correctly rounded sum (Shewchuk partials).
double exact_sum(std::span<const double> values);

// Mean Tanimoto similarity over all K(K-1)/2 unordered pairs. Throws
// TooFewPredictions for K < 2.
double mean_pairwise_tanimoto(std::span<const Fingerprint> fps);

double confidence_score(const PredictionSet &ps,
                        const FingerprintParams &params = {});

struct SelectionPolicy {
  double low = 0.6;
  double high = 0.9;

  void check() const;
};

struct ScoredItem {
  std::string id;
  double score = 0;

  friend bool operator==(const ScoredItem &, const ScoredItem &) = default;
};

// Items with low <= score <= high, in input order. With `count`, a seeded
// shuffle picks that many of them (input order is kept among the picks).
std::vector<ScoredItem> select_for_annotation(
    std::span<const ScoredItem> items, const SelectionPolicy &policy = {},
    std::optional<std::size_t> count = std::nullopt,
    std::uint64_t seed = 0);

struct DatasetRecord {
  std::string id;
  std::string esmiles;

  friend bool operator==(const DatasetRecord &,
                         const DatasetRecord &) = default;
};

// Keeps records whose SMILES part has fewer than max_tokens tokens. Records
// that cannot be tokenized are dropped.
std::vector<DatasetRecord> curriculum_filter(
    std::span<const DatasetRecord> records, std::size_t max_tokens = 60);

}  // namespace ocsrkit

#endif  // OCSRKIT_CONFIDENCE_H_
