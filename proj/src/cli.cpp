//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrkit/cli.h"

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ocsrkit/annosvc.h"
#include "ocsrkit/confidence.h"
#include "ocsrkit/errors.h"
#include "ocsrkit/esmiles.h"
#include "ocsrkit/evalharness.h"
#include "ocsrkit/fingerprint.h"
#include "ocsrkit/markushgen.h"
#include "ocsrkit/phash.h"
#include "ocsrkit/tokenizer.h"
#include "ocsrkit/workflow.h"

namespace ocsrkit {
namespace {

using json = nlohmann::ordered_json;

// Data problems that end the command with kExitData.
struct DataError: std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Io {
  std::string in_path;
  std::string out_path;
  std::istream *in = nullptr;
  std::ostream *out = nullptr;
  std::unique_ptr<std::ifstream> in_file;
  std::unique_ptr<std::ofstream> out_file;

  void open(std::istream &default_in, std::ostream &default_out) {
    in = &default_in;
    out = &default_out;
    if (!in_path.empty() && in_path != "-") {
      in_file = std::make_unique<std::ifstream>(in_path, std::ios::binary);
      if (!*in_file)
        throw DataError("cannot open " + in_path);
      in = in_file.get();
    }
    if (!out_path.empty() && out_path != "-") {
      out_file = std::make_unique<std::ofstream>(out_path, std::ios::binary);
      if (!*out_file)
        throw DataError("cannot open " + out_path);
      out = out_file.get();
    }
  }
};

void add_io(CLI::App *cmd, Io &io) {
  cmd->add_option("--in", io.in_path, "Input file (default stdin)");
  cmd->add_option("--out", io.out_path, "Output file (default stdout)");
}

// A line is either a JSON object carrying `key` (and optionally "id") or a
// bare E-SMILES string.
struct Item {
  std::string id;
  std::string text;
  bool json = false;
};

std::vector<Item> read_items(std::istream &in, const char *key = "esmiles") {
  std::vector<Item> items;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos)
      continue;
    Item it;
    if (line.front() == '{') {
      json j;
      try {
        j = json::parse(line);
      } catch (const json::exception &e) {
        throw DataError("line " + std::to_string(n) + ": " + e.what());
      }
      if (!j.contains(key) || !j[key].is_string())
        throw DataError("line " + std::to_string(n) + ": missing string '"
                        + key + "'");
      it.text = j[key].get<std::string>();
      it.id = j.contains("id") && j["id"].is_string()
                  ? j["id"].get<std::string>()
                  : std::to_string(n);
      it.json = true;
    } else {
      it.text = line;
      it.id = std::to_string(n);
    }
    items.push_back(std::move(it));
  }
  return items;
}

std::vector<json> read_json_lines(std::istream &in) {
  std::vector<json> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    try {
      json j = json::parse(line);
      if (!j.is_object())
        throw DataError("line " + std::to_string(n) + ": expected an object");
      out.push_back(std::move(j));
    } catch (const json::exception &e) {
      throw DataError("line " + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

HttpServer *g_server = nullptr;

extern "C" void stop_server(int) {
  if (g_server)
    g_server->stop();
}

std::vector<std::string> read_smiles_file(std::istream &in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string first;
    if (ss >> first && first[0] != '#')
      out.push_back(first);
  }
  return out;
}

void emit_generated(std::ostream &out, const std::string &prefix,
                    std::size_t i, const std::string &esmiles) {
  json j;
  j["id"] = prefix + "-" + std::to_string(i);
  j["esmiles"] = esmiles;
  out << j.dump() << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::istream &in,
            std::ostream &out, std::ostream &err) {
  CLI::App app{ "E-SMILES toolkit: parsing, canonicalization, data engine, "
                "evaluation and annotation service" };
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  Io io;

  // validate
  std::string mode = "strict";
  auto *validate = app.add_subcommand("validate", "Report E-SMILES violations");
  add_io(validate, io);
  validate->add_option("--mode", mode, "strict or lenient")
      ->check(CLI::IsMember({ "strict", "lenient" }))
      ->capture_default_str();

  // canon
  bool stereo = false;
  auto *canon = app.add_subcommand("canon", "Canonical E-SMILES per line");
  add_io(canon, io);
  canon->add_flag("--stereo", stereo, "Keep stereo markers");

  // tokenize
  std::string vocab_path;
  bool show_ids = false;
  bool count_only = false;
  auto *tok = app.add_subcommand("tokenize", "Tokenize E-SMILES lines");
  add_io(tok, io);
  tok->add_option("--vocab", vocab_path, "Vocabulary file (one token per line)");
  tok->add_flag("--ids", show_ids, "Print token ids instead of text");
  tok->add_flag("--count", count_only, "Print the SMILES-part token count");
  std::string dump_vocab;
  tok->add_option("--dump-vocab", dump_vocab,
                  "Write the standard vocabulary to this file and exit");

  // fp
  FingerprintParams fp_params;
  bool on_bits = false;
  auto *fp = app.add_subcommand("fp", "Circular fingerprint per line");
  add_io(fp, io);
  fp->add_option("--radius", fp_params.radius)->capture_default_str();
  fp->add_option("--width", fp_params.width)->capture_default_str();
  fp->add_flag("--bits", on_bits, "Print on-bit indices instead of hex");

  // confidence
  auto *conf = app.add_subcommand(
      "confidence", "Mean pairwise Tanimoto of {id, candidates} records");
  add_io(conf, io);
  conf->add_option("--radius", fp_params.radius)->capture_default_str();
  conf->add_option("--width", fp_params.width)->capture_default_str();

  // select
  SelectionPolicy policy;
  std::optional<std::size_t> sel_count;
  std::uint64_t seed = 20240101;
  auto *sel = app.add_subcommand("select", "Keep {id, score} records in band");
  add_io(sel, io);
  sel->add_option("--low", policy.low)->capture_default_str();
  sel->add_option("--high", policy.high)->capture_default_str();
  sel->add_option("--count", sel_count, "Down-sample to this many");
  sel->add_option("--seed", seed)->capture_default_str();

  // dedup
  int threshold = 10;
  std::string image_root;
  auto *dd = app.add_subcommand(
      "dedup", "Greedy p-hash dedup of {id, image|phash} records");
  add_io(dd, io);
  dd->add_option("--threshold", threshold)->capture_default_str()
      ->check(CLI::Range(0, 64));
  dd->add_option("--image-root", image_root, "Base directory for image paths");

  // curriculum
  std::size_t max_tokens = 60;
  auto *cur = app.add_subcommand("curriculum",
                                 "Keep records under the token threshold");
  add_io(cur, io);
  cur->add_option("--max-tokens", max_tokens)->capture_default_str();

  // gen
  GenConfig gen_cfg;
  std::string config_path;
  std::string lexicon_path;
  std::optional<std::size_t> gen_count;
  std::optional<std::uint64_t> gen_seed;
  auto *gen = app.add_subcommand("gen", "Synthetic E-SMILES generation");
  gen->require_subcommand(1);
  auto add_gen_opts = [&](CLI::App *c) {
    add_io(c, io);
    c->add_option("--config", config_path, "key=value configuration file");
    c->add_option("--lexicon", lexicon_path, "Group-name file");
    c->add_option("--count", gen_count, "Number of records");
    c->add_option("--seed", gen_seed, "Base seed (overrides config)");
  };
  auto *gen_markush = gen->add_subcommand(
      "markush", "Random group replacement over a SMILES file");
  auto *gen_polymer_cmd = gen->add_subcommand("polymer", "Polymer units");
  auto *gen_rings = gen->add_subcommand("rings", "Fused ring systems");
  add_gen_opts(gen_markush);
  add_gen_opts(gen_polymer_cmd);
  add_gen_opts(gen_rings);

  // eval
  std::string gold_path;
  std::string pred_path;
  bool json_only = false;
  bool with_records = false;
  EvalOptions eval_opts;
  auto *ev = app.add_subcommand("eval", "Score predictions against gold");
  ev->add_option("--gold", gold_path, "Gold JSONL")->required();
  ev->add_option("--pred", pred_path, "Prediction JSONL")->required();
  ev->add_option("--out", io.out_path, "Output file (default stdout)");
  ev->add_flag("--strict-stereo", eval_opts.strict_stereo);
  ev->add_flag("--json-only", json_only, "Omit the human-readable table");
  ev->add_flag("--records", with_records, "Include per-record verdicts");
  ev->add_option("--threads", eval_opts.threads)->capture_default_str();

  // stats
  std::string data_dir;
  auto *st = app.add_subcommand(
      "stats", "Round statistics of a task store or task JSONL");
  add_io(st, io);
  st->add_option("--data-dir", data_dir, "Task store directory");

  // serve
  std::string host = "127.0.0.1";
  int port = 8080;
  StoreOptions store_opts;
  std::size_t snapshot_every = store_opts.snapshot_every;
  std::size_t batch = store_opts.export_policy.batch_size;
  auto *serve = app.add_subcommand("serve", "Run the annotation service");
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--data-dir", data_dir, "Journal/snapshot directory");
  serve->add_option("--images", image_root, "Base directory for images");
  serve->add_option("--snapshot-every", snapshot_every)->capture_default_str();
  serve->add_option("--batch", batch)->capture_default_str();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp &e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp &e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*validate) {
      io.open(in, out);
      const ParseMode pm = mode == "strict" ? ParseMode::kStrict
                                            : ParseMode::kLenient;
      bool all_valid = true;
      for (const Item &it: read_items(*io.in)) {
        auto vs = check_esmiles(it.text, pm);
        json j;
        j["id"] = it.id;
        j["esmiles"] = it.text;
        j["valid"] = vs.empty();
        json arr = json::array();
        for (const Violation &v: vs)
          arr.push_back({ { "code", violation_name(v.code) },
                          { "message", v.message } });
        j["violations"] = std::move(arr);
        all_valid = all_valid && vs.empty();
        *io.out << j.dump() << '\n';
      }
      return all_valid ? kExitOk : kExitData;
    }

    if (*canon) {
      io.open(in, out);
      int status = kExitOk;
      for (const Item &it: read_items(*io.in)) {
        try {
          std::string c = canonical_esmiles(
              parse_esmiles(it.text, ParseMode::kLenient), { stereo });
          if (it.json)
            *io.out << json{ { "id", it.id }, { "canonical", c } }.dump()
                    << '\n';
          else
            *io.out << c << '\n';
        } catch (const Error &e) {
          err << "line " << it.id << ": " << e.what() << '\n';
          status = kExitData;
        }
      }
      return status;
    }

    if (*tok) {
      if (!dump_vocab.empty()) {
        std::ofstream f(dump_vocab);
        if (!f)
          throw DataError("cannot write " + dump_vocab);
        Vocabulary::standard().save(f);
        return kExitOk;
      }
      io.open(in, out);
      std::optional<Vocabulary> custom;
      if (!vocab_path.empty()) {
        std::ifstream f(vocab_path);
        if (!f)
          throw DataError("cannot open " + vocab_path);
        custom = Vocabulary::load(f);
      }
      const Vocabulary &vocab = custom ? *custom : Vocabulary::standard();
      int status = kExitOk;
      for (const Item &it: read_items(*io.in)) {
        try {
          if (count_only) {
            *io.out << smiles_token_count(it.text, vocab) << '\n';
            continue;
          }
          TokenSequence ts = tokenize(it.text, vocab);
          for (std::size_t i = 0; i < ts.size(); ++i) {
            if (i)
              *io.out << ' ';
            if (show_ids)
              *io.out << ts.ids[i];
            else
              *io.out << ts.tokens[i];
          }
          *io.out << '\n';
        } catch (const Error &e) {
          err << "line " << it.id << ": " << e.what() << '\n';
          status = kExitData;
        }
      }
      return status;
    }

    if (*fp) {
      fp_params.check();
      io.open(in, out);
      int status = kExitOk;
      for (const Item &it: read_items(*io.in)) {
        try {
          Fingerprint f = circular_fp(
              parse_smiles(smiles_part(it.text), ParseMode::kLenient),
              fp_params);
          if (on_bits) {
            auto bits = f.on_bits();
            for (std::size_t i = 0; i < bits.size(); ++i)
              *io.out << (i ? " " : "") << bits[i];
            *io.out << '\n';
          } else {
            *io.out << f.hex() << '\n';
          }
        } catch (const Error &e) {
          err << "line " << it.id << ": " << e.what() << '\n';
          status = kExitData;
        }
      }
      return status;
    }

    if (*conf) {
      fp_params.check();
      io.open(in, out);
      for (const json &j: read_json_lines(*io.in)) {
        PredictionSet ps;
        ps.item_id = j.value("id", "");
        if (!j.contains("candidates") || !j["candidates"].is_array())
          throw DataError("record '" + ps.item_id + "' lacks candidates");
        for (const auto &c: j["candidates"])
          ps.predictions.push_back(c.get<std::string>());
        double s = confidence_score(ps, fp_params);
        *io.out << "{\"id\":" << json(ps.item_id).dump()
                << ",\"score\":" << fixed6(s) << "}\n";
      }
      return kExitOk;
    }

    if (*sel) {
      io.open(in, out);
      std::vector<ScoredItem> items;
      for (const json &j: read_json_lines(*io.in)) {
        if (!j.contains("score") || !j["score"].is_number())
          throw DataError("record lacks numeric score");
        items.push_back({ j.value("id", ""), j["score"].get<double>() });
      }
      for (const ScoredItem &s: select_for_annotation(items, policy,
                                                      sel_count, seed))
        *io.out << "{\"id\":" << json(s.id).dump()
                << ",\"score\":" << fixed6(s.score) << "}\n";
      return kExitOk;
    }

    if (*dd) {
      io.open(in, out);
      std::vector<HashedItem> items;
      for (const json &j: read_json_lines(*io.in)) {
        HashedItem h{ j.value("id", ""), {} };
        if (j.contains("phash")) {
          h.hash.bits = std::stoull(j["phash"].get<std::string>(), nullptr, 16);
        } else if (j.contains("image")) {
          std::string p = j["image"].get<std::string>();
          if (!image_root.empty() && !p.empty() && p[0] != '/')
            p = image_root + "/" + p;
          h.hash = phash64(read_pgm_file(p));
        } else {
          throw DataError("record '" + h.id + "' has neither image nor phash");
        }
        items.push_back(std::move(h));
      }
      for (std::size_t k: dedup(items, threshold))
        *io.out << json{ { "id", items[k].id },
                         { "phash", to_hex(items[k].hash) } }.dump()
                << '\n';
      return kExitOk;
    }

    if (*cur) {
      io.open(in, out);
      std::vector<Item> items = read_items(*io.in);
      // Records are keyed by position so repeated input ids stay distinct.
      std::vector<DatasetRecord> records;
      for (std::size_t i = 0; i < items.size(); ++i)
        records.push_back({ std::to_string(i), items[i].text });
      for (const DatasetRecord &r: curriculum_filter(records, max_tokens)) {
        const std::size_t i = std::stoul(r.id);
        if (items[i].json)
          *io.out << json{ { "id", items[i].id },
                           { "esmiles", items[i].text } }.dump()
                  << '\n';
        else
          *io.out << items[i].text << '\n';
      }
      return kExitOk;
    }

    if (*gen) {
      if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f)
          throw DataError("cannot open " + config_path);
        gen_cfg = read_gen_config(f, gen_cfg);
      }
      if (!lexicon_path.empty()) {
        std::ifstream f(lexicon_path);
        if (!f)
          throw DataError("cannot open " + lexicon_path);
        gen_cfg.group_name_pool = read_lexicon(f);
      }
      if (gen_seed)
        gen_cfg.seed = *gen_seed;
      gen_cfg.check();

      if (*gen_markush) {
        io.open(in, out);
        std::vector<MolGraph> sources;
        for (const std::string &s: read_smiles_file(*io.in)) {
          try {
            sources.push_back(parse_smiles(s));
          } catch (const Error &e) {
            err << "skipping '" << s << "': " << e.what() << '\n';
          }
        }
        if (sources.empty())
          throw DataError("no usable source molecules");
        const std::size_t n = gen_count.value_or(sources.size());
        for (std::size_t i = 0; i < n; ++i) {
          Rng rng(gen_cfg.seed, i);
          try {
            ESmilesDoc d = randomize_to_markush(sources[i % sources.size()],
                                                gen_cfg, rng);
            emit_generated(*io.out, "markush", i, d.raw);
          } catch (const NoSubstitutableSite &) {
            err << "source " << i % sources.size()
                << " has no substitutable site\n";
          } catch (const std::invalid_argument &e) {
            err << "source " << i % sources.size() << ": " << e.what() << '\n';
          }
        }
        return kExitOk;
      }
      io.open(in, out);
      const std::size_t n = gen_count.value_or(1000);
      for (std::size_t i = 0; i < n; ++i) {
        Rng rng(gen_cfg.seed, i);
        if (*gen_polymer_cmd)
          emit_generated(*io.out, "polymer", i, gen_polymer(gen_cfg, rng).raw);
        else
          emit_generated(*io.out, "rings", i,
                         write_smiles(gen_fused_rings(gen_cfg, rng)));
      }
      return kExitOk;
    }

    if (*ev) {
      io.open(in, out);
      std::ifstream g(gold_path), p(pred_path);
      if (!g)
        throw DataError("cannot open " + gold_path);
      if (!p)
        throw DataError("cannot open " + pred_path);
      std::vector<GoldRecord> gold;
      std::vector<PredRecord> preds;
      try {
        gold = read_gold_jsonl(g);
        preds = read_pred_jsonl(p);
      } catch (const std::runtime_error &e) {
        throw DataError(e.what());
      }
      EvalReport r = evaluate(gold, preds, eval_opts);
      *io.out << report_json(r, with_records) << '\n';
      if (!json_only)
        *io.out << report_table(r);
      return kExitOk;
    }

    if (*st) {
      if (!data_dir.empty()) {
        StoreOptions so;
        so.data_dir = data_dir;
        so.snapshot_every = 0;
        TaskStore store(so);
        AnnoService svc(store);
        io.open(in, out);
        *io.out << svc.stats().body << '\n';
        return kExitOk;
      }
      io.open(in, out);
      std::vector<AnnotationTask> tasks;
      std::string line;
      while (std::getline(*io.in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos)
          continue;
        try {
          tasks.push_back(task_from_json(line));
        } catch (const std::exception &e) {
          throw DataError(std::string("bad task record: ") + e.what());
        }
      }
      RoundStats s = round_stats(tasks);
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
      *io.out << j.dump() << '\n';
      return kExitOk;
    }

    if (*serve) {
      store_opts.data_dir = data_dir;
      store_opts.snapshot_every = snapshot_every;
      store_opts.export_policy.batch_size = batch;
      store_opts.export_policy.check();
      TaskStore store(store_opts);
      AnnoService svc(store, image_root);
      HttpServer server(svc);
      g_server = &server;
      std::signal(SIGINT, stop_server);
      std::signal(SIGTERM, stop_server);
      err << "listening on " << host << ':' << port << '\n';
      bool ok = server.listen(host, port);
      g_server = nullptr;
      if (!ok) {
        err << "cannot listen on " << host << ':' << port << '\n';
        return kExitData;
      }
      return kExitOk;
    }
  } catch (const DataError &e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace ocsrkit
