//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef OCSRKIT_TESTS_ORACLES_H_
#define OCSRKIT_TESTS_ORACLES_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ocsrkit/confidence.h"
#include "ocsrkit/phash.h"

namespace testsupport {

// Regex tokenizer written independently of the library one.
std::vector<std::string> reference_tokens(const std::string &text);

// Tokens before <sep> by the reference tokenizer.
std::size_t reference_smiles_token_count(const std::string &text);

// Randomly rooted E-SMILES from random_document, with stars, stereo and
// fragments.
std::vector<std::string> generated_corpus(int count, std::uint64_t seed);

// Naive mean of tanimoto over all unordered pairs.
double brute_force_mean(const std::vector<std::string> &preds);

// Five-candidate sets mixing repeats, unrelated molecules and junk.
std::vector<ocsrkit::PredictionSet> synthetic_sets(int count,
                                                   std::uint64_t seed);

// Sum of a few random low-frequency cosines, kept within [40, 215].
ocsrkit::GrayImage smooth_image(std::mt19937_64 &rng, int w = 64, int h = 64);

ocsrkit::GrayImage add_noise(const ocsrkit::GrayImage &img,
                             std::mt19937_64 &rng, int amplitude);

// 80 smooth bases; every fourth is followed by a noisy copy.
struct PlantedCorpus {
  std::vector<ocsrkit::HashedItem> items;
  std::vector<std::size_t> base_positions;
  std::vector<std::pair<std::size_t, std::size_t>> planted;  // (copy, base)
};
PlantedCorpus planted_corpus(std::uint64_t seed);

// Greedy first-wins over all kept items, written directly.
std::vector<std::size_t> greedy_dedup(const std::vector<ocsrkit::HashedItem> &items,
                                      int threshold);

}  // namespace testsupport

#endif  // OCSRKIT_TESTS_ORACLES_H_
