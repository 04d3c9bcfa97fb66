//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <random>
#include <regex>
#include <sstream>

#include "json.hpp"
#include "molgen.h"
#include "oracle.h"
#include "ocsrkit/errors.h"
#include "ocsrkit/evalharness.h"

using namespace ocsrkit;

namespace {

std::vector<GoldRecord> gold_corpus(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  testsupport::MolGenOptions opts;
  opts.star_rate = 0.1;
  std::vector<GoldRecord> out;
  for (int i = 0; i < n; ++i)
    out.push_back({ "g" + std::to_string(i),
                    write_esmiles(testsupport::random_document(rng, opts)),
                    std::nullopt });
  return out;
}

// Re-roots the SMILES part and shuffles the extension entries as text.
std::string reroot_and_shuffle(const std::string &esmiles, std::mt19937_64 &rng) {
  ESmilesDoc d = parse_esmiles(esmiles);
  const int root = static_cast<int>(rng() % d.graph.atom_count());
  std::string s = write_esmiles(d, root);
  const auto sep = s.find("<sep>");
  if (sep == std::string::npos)
    return s;
  static const std::regex entry("<([arc])>[^<]*(<dum>)?[^<]*</\\1>");
  std::string ext = s.substr(sep + 5);
  std::vector<std::string> parts;
  for (auto it = std::sregex_iterator(ext.begin(), ext.end(), entry);
       it != std::sregex_iterator(); ++it)
    parts.push_back(it->str());
  std::shuffle(parts.begin(), parts.end(), rng);
  std::string out = s.substr(0, sep + 5);
  for (const auto &p: parts)
    out += p;
  return out;
}

std::vector<PredRecord> as_predictions(const std::vector<GoldRecord> &gold) {
  std::vector<PredRecord> p;
  for (const GoldRecord &g: gold)
    p.push_back({ g.id, g.esmiles });
  return p;
}

}  // namespace

TEST(ScorePair, Verdicts) {
  const std::string gold = "*c1ccccc1<sep><a>0:R[1]</a>";
  PairScore same = score_pair(gold, gold);
  EXPECT_EQ(same.verdict, Verdict::kCorrect);
  EXPECT_EQ(same.tanimoto, 1.0);

  EXPECT_EQ(score_pair(gold, "c1ccccc1*<sep><a>6:R[1]</a>").verdict,
            Verdict::kCorrect);

  PairScore renamed = score_pair(gold, "*c1ccccc1<sep><a>0:R[2]</a>");
  EXPECT_EQ(renamed.verdict, Verdict::kIncorrect);
  EXPECT_EQ(renamed.tanimoto, 1.0);

  PairScore bad = score_pair(gold, "c1ccc(");
  EXPECT_EQ(bad.verdict, Verdict::kPredInvalid);
  EXPECT_FALSE(bad.tanimoto);

  EXPECT_EQ(score_pair(gold, std::nullopt).verdict, Verdict::kMissing);
  EXPECT_EQ(score_pair("C1CC", "CCC").verdict, Verdict::kGoldInvalid);
  EXPECT_EQ(score_pair("CCO", "CCN").verdict, Verdict::kIncorrect);
}

TEST(ScorePair, StereoIgnoredUnlessStrict) {
  EXPECT_EQ(score_pair("C[C@H](N)O", "C[C@@H](N)O").verdict, Verdict::kCorrect);
  EvalOptions strict;
  strict.strict_stereo = true;
  EXPECT_EQ(score_pair("C[C@H](N)O", "C[C@@H](N)O", strict).verdict,
            Verdict::kIncorrect);
  EXPECT_EQ(score_pair("F/C=C/F", "F/C=C/F", strict).verdict, Verdict::kCorrect);
}

TEST(Evaluate, GoldAgainstItself) {
  auto gold = gold_corpus(500, 1);
  EvalReport r = evaluate(gold, as_predictions(gold));
  EXPECT_EQ(r.total, 500u);
  EXPECT_EQ(format_percent(r.accuracy), "100.00");
  EXPECT_EQ(r.mean_tanimoto, 1.0);
  EXPECT_EQ(r.plain.total + r.extension.total, 500u);
  EXPECT_GT(r.extension.total, 0u);
}

TEST(Evaluate, RerootedAndReordered) {
  auto gold = gold_corpus(500, 2);
  std::mt19937_64 rng(3);
  std::vector<PredRecord> preds;
  for (const GoldRecord &g: gold) {
    preds.push_back({ g.id, reroot_and_shuffle(g.esmiles, rng) });
    ASSERT_TRUE(testsupport::isomorphic(parse_esmiles(g.esmiles).graph,
                                        parse_esmiles(preds.back().esmiles).graph));
  }
  EvalReport r = evaluate(gold, preds);
  EXPECT_EQ(format_percent(r.accuracy), "100.00");
  EXPECT_EQ(r.count(Verdict::kCorrect), 500u);
}

TEST(Evaluate, SevenSixtyNineOfAThousand) {
  auto gold = gold_corpus(1000, 4);
  auto preds = as_predictions(gold);
  for (int i = 769; i < 1000; ++i) {
    std::string &s = preds[i].esmiles;
    s.insert(std::min(s.find("<sep>"), s.size()), "C");
  }
  EvalReport r = evaluate(gold, preds);
  EXPECT_EQ(r.count(Verdict::kCorrect), 769u);
  EXPECT_EQ(format_percent(r.accuracy), "76.90");
  EXPECT_EQ(r.count(Verdict::kIncorrect), 231u);
}

TEST(Evaluate, NoPredictionsAllMissing) {
  auto gold = gold_corpus(50, 5);
  EvalReport r = evaluate(gold, {});
  EXPECT_EQ(r.accuracy, 0.0);
  EXPECT_EQ(r.count(Verdict::kMissing), 50u);
  EXPECT_FALSE(r.mean_tanimoto);
}

TEST(Evaluate, EveryVerdictReachableAndCountedOnce) {
  std::vector<GoldRecord> gold = {
    { "ok", "CCO", {} }, { "wrong", "CCO", {} }, { "goldbad", "C1CC", {} },
    { "predbad", "CCO", {} }, { "missing", "CCO", {} },
  };
  std::vector<PredRecord> preds = {
    { "ok", "OCC" }, { "wrong", "CCN" }, { "goldbad", "CCC" },
    { "predbad", "C(" }, { "stranger", "C" }, { "ok", "CCCC" },
  };
  EvalReport r = evaluate(gold, preds);
  for (int v = 0; v < 5; ++v)
    EXPECT_EQ(r.verdict_counts[v], 1u) << v;
  EXPECT_EQ(r.total, 4u);
  EXPECT_EQ(r.accuracy, 25.0);
  EXPECT_EQ(r.unmatched_predictions, 1u);
  EXPECT_EQ(r.duplicate_predictions, 1u);
  EXPECT_EQ(r.records[0].verdict, Verdict::kCorrect);  // first wins
}

TEST(Evaluate, ThreadedAndShuffledAgree) {
  auto gold = gold_corpus(400, 6);
  auto preds = as_predictions(gold);
  for (std::size_t i = 0; i < preds.size(); i += 3)
    preds[i].esmiles = "CC";
  EvalReport base = evaluate(gold, preds);
  EvalOptions par;
  par.threads = 4;
  EvalReport threaded = evaluate(gold, preds, par);
  EXPECT_EQ(report_json(threaded, true), report_json(base, true));
  std::mt19937_64 rng(1);
  std::shuffle(gold.begin(), gold.end(), rng);
  std::shuffle(preds.begin(), preds.end(), rng);
  EvalReport shuffled = evaluate(gold, preds);
  EXPECT_EQ(shuffled.accuracy, base.accuracy);
  EXPECT_EQ(shuffled.verdict_counts, base.verdict_counts);
  EXPECT_EQ(shuffled.mean_tanimoto, base.mean_tanimoto);
}

TEST(Evaluate, DuplicateGoldIdThrows) {
  std::vector<GoldRecord> gold = { { "a", "C", {} }, { "a", "CC", {} } };
  EXPECT_THROW(evaluate(gold, {}), DuplicateGoldId);
}

TEST(Report, JsonTableAndFormat) {
  EXPECT_EQ(format_percent(76.9), "76.90");
  EXPECT_EQ(format_percent(100), "100.00");
  EXPECT_EQ(format_percent(0.005), "0.01");
  std::vector<GoldRecord> gold = { { "a", "*C<sep><a>0:R</a>", {} },
                                   { "b", "CCO", {} } };
  std::vector<PredRecord> preds = { { "a", "*C<sep><a>0:R</a>" } };
  EvalReport r = evaluate(gold, preds);
  auto j = nlohmann::json::parse(report_json(r, true));
  EXPECT_EQ(j["total"], 2);
  EXPECT_EQ(j["accuracy_text"], "50.00");
  EXPECT_EQ(j["has_extension"]["accuracy_text"], "100.00");
  EXPECT_EQ(j["plain"]["accuracy_text"], "0.00");
  EXPECT_EQ(j["records"][1]["verdict"], "missing");
  EXPECT_NE(report_table(r).find("50.00"), std::string::npos);
}

TEST(Readers, JsonlParsing) {
  std::istringstream gold_in("{\"id\":\"a\",\"esmiles\":\"CCO\",\"image\":\"a.pgm\"}\n"
                             "\n{\"id\":\"b\",\"esmiles\":\"C\"}\n");
  auto gold = read_gold_jsonl(gold_in);
  ASSERT_EQ(gold.size(), 2u);
  EXPECT_EQ(gold[0].image, "a.pgm");
  EXPECT_FALSE(gold[1].image);
  std::istringstream bad("{\"id\":\"a\"}\n");
  EXPECT_THROW(read_pred_jsonl(bad), std::runtime_error);
  std::istringstream garbage("not json\n");
  EXPECT_THROW(read_gold_jsonl(garbage), std::runtime_error);
}
