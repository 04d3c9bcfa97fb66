//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "oracles.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <regex>

#include "molgen.h"
#include "ocsrkit/element.h"
#include "ocsrkit/esmiles.h"

using namespace ocsrkit;

namespace testsupport {

// Tags, two-letter halogens and %nn outside brackets, element symbols right
// after '[' and any isotope, "@@" inside brackets, one character otherwise.
std::vector<std::string> reference_tokens(const std::string &text) {
  static const std::regex tag("^(<sep>|</?[arc]>|<dum>)");
  static const std::regex outside("^(Cl|Br|%[0-9][0-9]|\\[|.)");
  static const std::regex two_letter("^(se|as|te|[A-Z][a-z])");
  std::vector<std::string> out;
  std::size_t pos = 0;
  bool after_sep = false;
  bool in_bracket = false;
  bool element_pending = false;
  std::smatch m;
  while (pos < text.size()) {
    const std::string rest = text.substr(pos);
    if (std::regex_search(rest, m, tag)) {
      after_sep = after_sep || m.str() == "<sep>";
    } else if (after_sep) {
      out.push_back(rest.substr(0, 1));
      ++pos;
      continue;
    } else if (!in_bracket) {
      std::regex_search(rest, m, outside);
      if (m.str() == "[") {
        in_bracket = true;
        element_pending = true;
      }
    } else if (rest[0] == ']') {
      in_bracket = false;
      out.push_back("]");
      ++pos;
      continue;
    } else if (element_pending && !std::isdigit(rest[0])) {
      element_pending = false;
      if (std::regex_search(rest, m, two_letter)
          && (std::islower(m.str()[0]) || element_from_symbol(m.str()) > 0)) {
        out.push_back(m.str());
        pos += m.length();
        continue;
      }
      out.push_back(rest.substr(0, 1));
      ++pos;
      continue;
    } else {
      out.push_back(rest.starts_with("@@") ? "@@" : rest.substr(0, 1));
      pos += out.back().size();
      continue;
    }
    out.push_back(m.str());
    pos += m.length();
  }
  return out;
}

std::size_t reference_smiles_token_count(const std::string &text) {
  const auto toks = reference_tokens(text);
  return static_cast<std::size_t>(
      std::find(toks.begin(), toks.end(), "<sep>") - toks.begin());
}

std::vector<std::string> generated_corpus(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MolGenOptions opts;
  opts.star_rate = 0.15;
  opts.stereo = true;
  opts.fragments = true;
  opts.max_atoms = 45;
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) {
    ESmilesDoc d = random_document(rng, opts);
    out.push_back(write_esmiles(d, static_cast<int>(
                                       rng() % d.graph.atom_count())));
  }
  return out;
}

double brute_force_mean(const std::vector<std::string> &preds) {
  double sum = 0;
  int pairs = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    for (std::size_t j = i + 1; j < preds.size(); ++j) {
      sum += tanimoto(prediction_fingerprint(preds[i]),
                      prediction_fingerprint(preds[j]));
      ++pairs;
    }
  }
  return sum / pairs;
}

std::vector<PredictionSet> synthetic_sets(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MolGenOptions opts;
  opts.star_rate = 0.1;
  std::vector<PredictionSet> out;
  for (int i = 0; i < count; ++i) {
    PredictionSet ps { "s" + std::to_string(i), {} };
    std::string base = write_esmiles(random_document(rng, opts));
    for (int k = 0; k < 5; ++k) {
      switch (rng() % 4) {
      case 0:
        ps.predictions.push_back(base);
        break;
      case 1:
        ps.predictions.push_back(write_esmiles(random_document(rng, opts)));
        break;
      case 2:
        ps.predictions.push_back("C1CC(");
        break;
      default:
        ps.predictions.push_back(base + "C");
      }
    }
    out.push_back(ps);
  }
  return out;
}

GrayImage smooth_image(std::mt19937_64 &rng, int w, int h) {
  std::uniform_real_distribution<double> amp(-1, 1);
  std::uniform_int_distribution<int> freq(0, 6);
  struct Wave { double a; int fx, fy; double phase; };
  std::vector<Wave> waves;
  for (int k = 0; k < 6; ++k)
    waves.push_back({ amp(rng), freq(rng), freq(rng), amp(rng) * 3 });
  GrayImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double v = 0;
      for (const Wave &wv: waves)
        v += wv.a * std::cos(std::numbers::pi * (wv.fx * (x + 0.5) / w
                                                 + wv.fy * (y + 0.5) / h)
                             + wv.phase);
      img.at(x, y) = static_cast<std::uint8_t>(
          std::lround(127.5 + 87.5 * std::tanh(v / 2)));
    }
  }
  return img;
}

GrayImage add_noise(const GrayImage &img, std::mt19937_64 &rng, int amplitude) {
  std::uniform_int_distribution<int> d(-amplitude, amplitude);
  GrayImage out = img;
  for (auto &p: out.pixels)
    p = static_cast<std::uint8_t>(std::clamp(p + d(rng), 0, 255));
  return out;
}

PlantedCorpus planted_corpus(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<GrayImage> bases;
  for (int i = 0; i < 80; ++i)
    bases.push_back(smooth_image(rng));
  PlantedCorpus c;
  for (int i = 0; i < 80; ++i) {
    c.base_positions.push_back(c.items.size());
    c.items.push_back({ "b" + std::to_string(i), phash64(bases[i]) });
    if (i % 4 == 0) {
      c.planted.emplace_back(c.items.size(), c.base_positions.back());
      c.items.push_back({ "d" + std::to_string(i),
                          phash64(add_noise(bases[i], rng, 3)) });
    }
  }
  return c;
}

std::vector<std::size_t> greedy_dedup(const std::vector<HashedItem> &items,
                                      int threshold) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < items.size(); ++i) {
    bool near = false;
    for (std::size_t k: kept)
      near = near || hamming(items[i].hash, items[k].hash) <= threshold;
    if (!near)
      kept.push_back(i);
  }
  return kept;
}

}  // namespace testsupport
