//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrkit/confidence.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ocsrkit/errors.h"
#include "ocsrkit/esmiles.h"
#include "ocsrkit/rng.h"
#include "ocsrkit/tokenizer.h"

namespace ocsrkit {

Fingerprint prediction_fingerprint(std::string_view esmiles,
                                   const FingerprintParams &params) {
  try {
    MolGraph g = parse_smiles(smiles_part(esmiles), ParseMode::kLenient);
    return circular_fp(g, params);
  } catch (const Error &) {
  } catch (const std::invalid_argument &) {
  }
  return Fingerprint(params);
}

double exact_sum(std::span<const double> values) {
  std::vector<double> partials;
  for (double x: values) {
    std::size_t i = 0;
    for (double y: partials) {
      if (std::fabs(x) < std::fabs(y))
        std::swap(x, y);
      double hi = x + y;
      double lo = y - (hi - x);
      if (lo != 0.0)
        partials[i++] = lo;
      x = hi;
    }
    partials.resize(i);
    partials.push_back(x);
  }
  // Sum partials from the top with half-way correction (as math.fsum).
  if (partials.empty())
    return 0.0;
  std::size_t n = partials.size();
  double hi = partials[--n];
  double lo = 0.0;
  while (n > 0) {
    double x = hi;
    double y = partials[--n];
    hi = x + y;
    double yr = hi - x;
    lo = y - yr;
    if (lo != 0.0)
      break;
  }
  if (n > 0 && ((lo < 0 && partials[n - 1] < 0)
                || (lo > 0 && partials[n - 1] > 0))) {
    double y = lo * 2;
    double x = hi + y;
    double yr = x - hi;
    if (y == yr)
      hi = x;
  }
  return hi;
}

double mean_pairwise_tanimoto(std::span<const Fingerprint> fps) {
  if (fps.size() < 2)
    throw TooFewPredictions("confidence needs at least two predictions");
  std::vector<double> sims;
  sims.reserve(fps.size() * (fps.size() - 1) / 2);
  for (std::size_t i = 0; i < fps.size(); ++i)
    for (std::size_t j = i + 1; j < fps.size(); ++j)
      sims.push_back(tanimoto(fps[i], fps[j]));
  return exact_sum(sims) / static_cast<double>(sims.size());
}

double confidence_score(const PredictionSet &ps,
                        const FingerprintParams &params) {
  if (ps.predictions.size() < 2)
    throw TooFewPredictions("item '" + ps.item_id
                            + "' has fewer than two predictions");
  std::vector<Fingerprint> fps;
  fps.reserve(ps.predictions.size());
  for (const auto &p: ps.predictions)
    fps.push_back(prediction_fingerprint(p, params));
  return mean_pairwise_tanimoto(fps);
}

void SelectionPolicy::check() const {
  if (!(0.0 <= low && low < high && high <= 1.0))
    throw std::invalid_argument("selection band must satisfy 0 <= low < high <= 1");
}

std::vector<ScoredItem> select_for_annotation(
    std::span<const ScoredItem> items, const SelectionPolicy &policy,
    std::optional<std::size_t> count, std::uint64_t seed) {
  policy.check();
  std::vector<std::size_t> band;
  for (std::size_t i = 0; i < items.size(); ++i)
    if (items[i].score >= policy.low && items[i].score <= policy.high)
      band.push_back(i);

  if (count && *count < band.size()) {
    Rng rng(seed);
    rng.shuffle(std::span<std::size_t>(band));
    band.resize(*count);
    std::sort(band.begin(), band.end());
  }
  std::vector<ScoredItem> out;
  out.reserve(band.size());
  for (std::size_t i: band)
    out.push_back(items[i]);
  return out;
}

std::vector<DatasetRecord> curriculum_filter(
    std::span<const DatasetRecord> records, std::size_t max_tokens) {
  std::vector<DatasetRecord> out;
  for (const DatasetRecord &r: records) {
    try {
      if (smiles_token_count(r.esmiles) < max_tokens)
        out.push_back(r);
    } catch (const Error &) {
    }
  }
  return out;
}

}  // namespace ocsrkit
