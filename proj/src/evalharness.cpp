//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrkit/evalharness.h"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "ocsrkit/confidence.h"
#include "ocsrkit/errors.h"
#include "ocsrkit/esmiles.h"

namespace ocsrkit {
namespace {

using json = nlohmann::ordered_json;

constexpr std::array<std::string_view, 5> kVerdictNames = {
  "correct", "incorrect", "gold_invalid", "pred_invalid", "missing",
};

std::optional<std::string> canonical_or_null(std::string_view text,
                                             const EvalOptions &opts,
                                             bool *has_extension = nullptr) {
  try {
    ESmilesDoc doc = parse_esmiles(text, ParseMode::kLenient);
    if (has_extension)
      *has_extension = !doc.annotations.empty();
    return canonical_esmiles(doc, { opts.strict_stereo });
  } catch (const Error &) {
  } catch (const std::invalid_argument &) {
  }
  return std::nullopt;
}

std::optional<Fingerprint> fingerprint_or_null(std::string_view text,
                                               const EvalOptions &opts) {
  try {
    MolGraph g = parse_smiles(smiles_part(text), ParseMode::kLenient);
    return circular_fp(g, opts.fingerprint);
  } catch (const Error &) {
  } catch (const std::invalid_argument &) {
  }
  return std::nullopt;
}

PairScore score(std::string_view gold, std::optional<std::string_view> pred,
                const EvalOptions &opts, bool *has_extension) {
  PairScore out;
  auto g = canonical_or_null(gold, opts, has_extension);
  if (!g) {
    out.verdict = Verdict::kGoldInvalid;
    return out;
  }
  if (!pred) {
    out.verdict = Verdict::kMissing;
    return out;
  }
  auto p = canonical_or_null(*pred, opts);
  if (!p)
    out.verdict = Verdict::kPredInvalid;
  else
    out.verdict = *g == *p ? Verdict::kCorrect : Verdict::kIncorrect;

  auto fg = fingerprint_or_null(gold, opts);
  auto fp = fingerprint_or_null(*pred, opts);
  if (fg && fp)
    out.tanimoto = tanimoto(*fg, *fp);
  return out;
}

void finish_split(SplitAccuracy &s) {
  s.accuracy = s.total == 0 ? 0.0 : 100.0 * s.correct / s.total;
}

std::string field(const json &j, const char *key, std::size_t line) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string())
    throw std::runtime_error("line " + std::to_string(line)
                             + ": missing string field '" + key + "'");
  return it->get<std::string>();
}

template <class F>
void for_each_json_line(std::istream &in, F &&f) {
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception &e) {
      throw std::runtime_error("line " + std::to_string(n) + ": " + e.what());
    }
    if (!j.is_object())
      throw std::runtime_error("line " + std::to_string(n)
                               + ": expected a JSON object");
    f(j, n);
  }
}

}  // namespace

std::string_view verdict_name(Verdict v) {
  return kVerdictNames[static_cast<int>(v)];
}

PairScore score_pair(std::string_view gold,
                     std::optional<std::string_view> pred,
                     const EvalOptions &opts) {
  return score(gold, pred, opts, nullptr);
}

EvalReport evaluate(std::span<const GoldRecord> gold,
                    std::span<const PredRecord> preds,
                    const EvalOptions &opts) {
  std::unordered_set<std::string_view> gold_ids;
  for (const GoldRecord &g: gold)
    if (!gold_ids.insert(g.id).second)
      throw DuplicateGoldId("duplicate gold id '" + g.id + "'");

  EvalReport report;
  std::unordered_map<std::string_view, const PredRecord *> by_id;
  for (const PredRecord &p: preds) {
    if (!gold_ids.count(p.id)) {
      ++report.unmatched_predictions;
      continue;
    }
    if (!by_id.emplace(p.id, &p).second)
      ++report.duplicate_predictions;
  }

  report.records.resize(gold.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      EvalRecord &r = report.records[i];
      r.id = gold[i].id;
      r.gold = gold[i].esmiles;
      auto it = by_id.find(gold[i].id);
      std::optional<std::string_view> pred;
      if (it != by_id.end()) {
        r.pred = it->second->esmiles;
        pred = *r.pred;
      }
      PairScore s = score(r.gold, pred, opts, &r.has_extension);
      r.verdict = s.verdict;
      r.tanimoto = s.tanimoto;
    }
  };
  const unsigned threads = std::max(1u, opts.threads);
  if (threads == 1 || gold.size() < 2 * threads) {
    work(0, gold.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (gold.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::size_t b = t * chunk;
      std::size_t e = std::min(gold.size(), b + chunk);
      if (b < e)
        pool.emplace_back(work, b, e);
    }
    for (auto &th: pool)
      th.join();
  }

  std::vector<double> sims;
  for (const EvalRecord &r: report.records) {
    ++report.verdict_counts[static_cast<int>(r.verdict)];
    if (r.verdict == Verdict::kGoldInvalid)
      continue;
    SplitAccuracy &split = r.has_extension ? report.extension : report.plain;
    ++split.total;
    if (r.verdict == Verdict::kCorrect)
      ++split.correct;
    if (r.tanimoto)
      sims.push_back(*r.tanimoto);
  }
  report.total = gold.size() - report.count(Verdict::kGoldInvalid);
  report.accuracy = report.total == 0
                        ? 0.0
                        : 100.0 * report.count(Verdict::kCorrect) / report.total;
  if (!sims.empty())
    report.mean_tanimoto = exact_sum(sims) / static_cast<double>(sims.size());
  finish_split(report.plain);
  finish_split(report.extension);
  return report;
}

std::string format_percent(double pct) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", pct);
  return buf;
}

std::string report_json(const EvalReport &report, bool with_records) {
  json j;
  j["total"] = report.total;
  j["accuracy"] = report.accuracy;
  j["accuracy_text"] = format_percent(report.accuracy);
  j["mean_tanimoto"] = report.mean_tanimoto ? json(*report.mean_tanimoto)
                                            : json(nullptr);
  json counts = json::object();
  for (int v = 0; v < 5; ++v)
    counts[std::string(kVerdictNames[v])] = report.verdict_counts[v];
  j["verdicts"] = counts;
  auto split = [](const SplitAccuracy &s) {
    json o;
    o["total"] = s.total;
    o["correct"] = s.correct;
    o["accuracy"] = s.accuracy;
    o["accuracy_text"] = format_percent(s.accuracy);
    return o;
  };
  j["plain"] = split(report.plain);
  j["has_extension"] = split(report.extension);
  j["unmatched_predictions"] = report.unmatched_predictions;
  j["duplicate_predictions"] = report.duplicate_predictions;
  if (with_records) {
    json recs = json::array();
    for (const EvalRecord &r: report.records) {
      json o;
      o["id"] = r.id;
      o["verdict"] = verdict_name(r.verdict);
      o["tanimoto"] = r.tanimoto ? json(*r.tanimoto) : json(nullptr);
      o["has_extension"] = r.has_extension;
      recs.push_back(std::move(o));
    }
    j["records"] = std::move(recs);
  }
  return j.dump();
}

std::string report_table(const EvalReport &report) {
  std::ostringstream out;
  char buf[128];
  auto row = [&](const char *name, std::size_t correct, std::size_t total,
                 double acc) {
    std::snprintf(buf, sizeof buf, "%-14s %8zu %8zu %9s\n", name, correct,
                  total, format_percent(acc).c_str());
    out << buf;
  };
  std::snprintf(buf, sizeof buf, "%-14s %8s %8s %9s\n", "split", "correct",
                "total", "accuracy");
  out << buf;
  row("all", report.count(Verdict::kCorrect), report.total, report.accuracy);
  row("plain", report.plain.correct, report.plain.total,
      report.plain.accuracy);
  row("has_extension", report.extension.correct, report.extension.total,
      report.extension.accuracy);
  out << "verdicts:";
  for (int v = 0; v < 5; ++v)
    out << ' ' << kVerdictNames[v] << '=' << report.verdict_counts[v];
  out << '\n';
  if (report.mean_tanimoto) {
    std::snprintf(buf, sizeof buf, "mean tanimoto: %.4f\n",
                  *report.mean_tanimoto);
    out << buf;
  }
  return out.str();
}

std::vector<GoldRecord> read_gold_jsonl(std::istream &in) {
  std::vector<GoldRecord> out;
  for_each_json_line(in, [&](const json &j, std::size_t n) {
    GoldRecord r{ field(j, "id", n), field(j, "esmiles", n), std::nullopt };
    auto it = j.find("image");
    if (it != j.end() && it->is_string())
      r.image = it->get<std::string>();
    out.push_back(std::move(r));
  });
  return out;
}

std::vector<PredRecord> read_pred_jsonl(std::istream &in) {
  std::vector<PredRecord> out;
  for_each_json_line(in, [&](const json &j, std::size_t n) {
    out.push_back({ field(j, "id", n), field(j, "esmiles", n) });
  });
  return out;
}

}  // namespace ocsrkit
