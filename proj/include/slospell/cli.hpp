// Copyright 2026 The slospell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "slospell/corrupt.hpp"
#include "slospell/encode.hpp"
#include "slospell/error.hpp"
#include "slospell/evalkit.hpp"
#include "slospell/lexicon.hpp"
#include "slospell/parallel.hpp"
#include "slospell/unicode.hpp"
#include "slospell/wordcheck.hpp"

// Command-line driver: check, corrupt, encode, score, stats.
//
// Every command streams line-delimited input (only the lexicon is loaded
// whole) and is a pure function of its input bytes, flags and seed.
namespace slospell::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2 };

namespace detail {

constexpr std::size_t kBatchPerJob = 256;

// Input/output bound either to a named file or to the caller's stream.
struct Input {
  std::unique_ptr<std::ifstream> file;
  std::istream* stream = nullptr;
  std::string name;

  Input(const std::string& path, std::istream& fallback) {
    if (path.empty() || path == "-") {
      stream = &fallback;
      name = "<stdin>";
    } else {
      file = std::make_unique<std::ifstream>(path, std::ios::binary);
      if (!*file) throw FormatError("cannot open '" + path + "' for reading");
      stream = file.get();
      name = path;
    }
  }
};

struct Output {
  std::unique_ptr<std::ofstream> file;
  std::ostream* stream = nullptr;

  Output(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream = &fallback;
    } else {
      file = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file) throw FormatError("cannot open '" + path + "' for writing");
      stream = file.get();
    }
  }
};

// Reads one line, strips a CR, validates UTF-8. Returns false at EOF.
inline bool read_line(std::istream& in, std::string& line, std::size_t& lineno,
                      const std::string& source, bool* had_cr = nullptr) {
  if (!std::getline(in, line)) return false;
  ++lineno;
  const bool cr = !line.empty() && line.back() == '\r';
  if (cr) line.pop_back();
  if (had_cr) *had_cr = cr;
  try {
    utf8::validate(line);
  } catch (const DecodeError& e) {
    throw FormatError(at_line(source, lineno) + e.what());
  }
  return true;
}

inline nlohmann::json parse_record(const std::string& line, const std::string& where) {
  try {
    return nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(where + "malformed JSON: " + e.what());
  }
}

template <class Fn>
void for_each_record(Input& in, Fn&& fn) {
  std::string line;
  std::size_t lineno = 0;
  while (read_line(*in.stream, line, lineno, in.name)) {
    if (slospell::detail::trim_ascii(line).empty()) continue;
    const auto where = at_line(in.name, lineno);
    fn(parse_record(line, where), where);
  }
}

inline std::vector<GoldDocument> read_gold(const std::string& path, std::istream& stdin_) {
  Input in(path, stdin_);
  std::vector<GoldDocument> docs;
  for_each_record(in, [&](const nlohmann::json& j, const std::string& where) {
    docs.push_back(gold_from_json(j, where));
  });
  return docs;
}

struct CheckArgs {
  std::string lexicon, input, output, gold;
  unsigned jobs = 1;
};

inline int run_check(const CheckArgs& a, std::istream& in_, std::ostream& out_) {
  const Lexicon lex = load_lexicon_file(a.lexicon);
  Output out(a.output, out_);

  if (!a.gold.empty()) {
    const auto docs = read_gold(a.gold, in_);
    const auto lines = parallel_map(docs, a.jobs, [&](const GoldDocument& d, std::size_t) {
      Prediction p;
      p.id = d.id;
      p.words = d.words;
      for (const auto& w : d.words) p.labels.push_back(is_flagged(lex, w) ? 1 : 0);
      return to_json(p).dump();
    });
    for (const auto& l : lines) *out.stream << l << '\n';
    return kOk;
  }

  Input in(a.input, in_);
  struct Line {
    std::string text;
    std::size_t base = 0;
  };
  std::vector<Line> batch;
  const std::size_t cap = kBatchPerJob * std::max(1u, a.jobs);
  auto flush = [&] {
    const auto chunks = parallel_map(batch, a.jobs, [&](const Line& l, std::size_t) {
      std::string s;
      for (const auto& r : check_text(lex, l.text)) {
        s += to_json(r, l.base).dump();
        s += '\n';
      }
      return s;
    });
    for (const auto& c : chunks) *out.stream << c;
    batch.clear();
  };
  std::string line;
  std::size_t lineno = 0, offset = 0;
  bool cr = false;
  while (read_line(*in.stream, line, lineno, in.name, &cr)) {
    const std::size_t len = utf8::length(line);
    batch.push_back(Line{std::move(line), offset});
    offset += len + 1 + (cr ? 1 : 0);
    if (batch.size() >= cap) flush();
  }
  flush();
  return kOk;
}

struct CorruptArgs {
  std::string lexicon, mischief, switch_table, config, input, output;
  std::vector<std::string> set;
  std::optional<std::uint64_t> seed;
  std::string scale;
  std::size_t budget = kDefaultTokenBudget;
  unsigned jobs = 1;
};

inline CorruptionConfig build_config(const CorruptArgs& a) {
  CorruptionConfig cfg;
  if (!a.config.empty()) {
    std::ifstream f(a.config, std::ios::binary);
    if (!f) throw FormatError("cannot open '" + a.config + "' for reading");
    cfg = load_config(f, a.config);
  }
  for (const auto& kv : a.set) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--set expects key=value, got '" + kv + "'");
    set_option(cfg, slospell::detail::trim_ascii(std::string_view(kv).substr(0, eq)),
               std::string_view(kv).substr(eq + 1));
  }
  if (a.seed) cfg.seed = *a.seed;
  if (!a.scale.empty()) set_option(cfg, "global_scale", a.scale);
  cfg.validate();
  return cfg;
}

inline int run_corrupt(const CorruptArgs& a, std::istream& in_, std::ostream& out_) {
  const CorruptionConfig cfg = build_config(a);
  const Lexicon lex = load_lexicon_file(a.lexicon);
  MischiefList mischief;
  if (!a.mischief.empty()) {
    std::ifstream f(a.mischief, std::ios::binary);
    if (!f) throw FormatError("cannot open '" + a.mischief + "' for reading");
    mischief = load_mischief_list(f, a.mischief);
  }
  SwitchTable table = default_switch_table();
  if (!a.switch_table.empty()) {
    std::ifstream f(a.switch_table, std::ios::binary);
    if (!f) throw FormatError("cannot open '" + a.switch_table + "' for reading");
    table = load_switch_table(f, a.switch_table);
  }

  Input in(a.input, in_);
  Output out(a.output, out_);
  using Units = std::vector<WordUnit>;
  GroupPacker<Units> packer(a.budget);
  std::vector<BasicSentenceGroup<Units>> batch;
  std::uint64_t next_group = 0;
  const std::size_t cap = kBatchPerJob * std::max(1u, a.jobs);

  auto flush = [&] {
    const std::uint64_t first = next_group;
    const auto lines = parallel_map(
        batch, a.jobs, [&](const BasicSentenceGroup<Units>& g, std::size_t k) {
          return to_json(corrupt_sentence_group(lex, mischief, table,
                                                std::span<const Units>(g.sentences),
                                                cfg, first + k))
              .dump();
        });
    for (const auto& l : lines) *out.stream << l << '\n';
    next_group += batch.size();
    batch.clear();
  };

  std::string line;
  std::size_t lineno = 0;
  while (read_line(*in.stream, line, lineno, in.name)) {
    auto units = segment_units(unicode::nfc(line));
    if (units.empty()) continue;
    std::vector<std::string> rendered;
    rendered.reserve(units.size());
    for (const auto& u : units) rendered.push_back(u.render());
    const std::size_t cost = sentence_cost(std::span<const std::string>(rendered),
                                           default_token_cost);
    for (auto& g : packer.push(std::move(units), cost)) batch.push_back(std::move(g));
    if (batch.size() >= cap) flush();
  }
  for (auto& g : packer.finish()) batch.push_back(std::move(g));
  flush();
  return kOk;
}

struct EncodeArgs {
  std::string input, output, gold_out, mask = std::string(kMaskToken);
};

inline int run_encode(const EncodeArgs& a, std::istream& in_, std::ostream& out_) {
  Input in(a.input, in_);
  Output out(a.output, out_);
  std::optional<Output> gold;
  if (!a.gold_out.empty()) gold.emplace(a.gold_out, out_);
  std::size_t index = 0;
  for_each_record(in, [&](const nlohmann::json& j, const std::string& where) {
    const auto c = corrupted_from_json(j, where);
    const std::string id = std::to_string(index++);
    EncodedExample ex;
    try {
      ex = encode_example(c, a.mask);
    } catch (const FormatError& e) {
      throw FormatError(where + e.what());
    }
    *out.stream << to_json(ex, id).dump() << '\n';
    if (gold) *gold->stream << to_json(gold_from_corrupted(c, id)).dump() << '\n';
  });
  return kOk;
}

struct ScoreArgs {
  std::string gold, pred, output;
  bool json = false;
  bool quiet = false;
};

inline int run_score(const ScoreArgs& a, std::istream& in_, std::ostream& out_) {
  const auto docs = read_gold(a.gold, in_);
  std::vector<Prediction> preds;
  {
    Input in(a.pred, in_);
    for_each_record(in, [&](const nlohmann::json& j, const std::string& where) {
      preds.push_back(prediction_from_json(j, where));
    });
  }
  const auto report = score(docs, preds);
  Output out(a.output, out_);
  if (a.json)
    *out.stream << to_json(report).dump() << '\n';
  else
    print_report(*out.stream, report, !a.quiet);
  return kOk;
}

struct StatsArgs {
  std::string gold, output, name;
  bool json = false;
};

inline int run_stats(const StatsArgs& a, std::istream& in_, std::ostream& out_) {
  const auto docs = read_gold(a.gold, in_);
  const auto s = dataset_stats(docs);
  Output out(a.output, out_);
  if (a.json) {
    nlohmann::ordered_json j;
    j["documents"] = docs.size();
    j["words"] = s.words;
    j["sentences"] = s.sentences;
    j["errors"] = s.errors;
    j["error_pct"] = s.error_pct;
    *out.stream << j.dump() << '\n';
  } else {
    std::string name = a.name;
    if (name.empty()) name = a.gold.empty() || a.gold == "-" ? "<stdin>" : a.gold;
    print_stats(*out.stream, name, docs.size(), s);
  }
  return kOk;
}

}  // namespace detail

/// Runs the tool. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::istream& in,
               std::ostream& out, std::ostream& err) {
  CLI::App app{"Lexicon-based spell checking and synthetic spelling-error tools",
               "slospell"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  detail::CheckArgs check;
  auto* c = app.add_subcommand("check", "Flag words missing from the lexicon");
  c->add_option("-l,--lexicon", check.lexicon, "Word list, one form per line")->required();
  c->add_option("-i,--input", check.input, "Text input (default stdin)");
  c->add_option("-o,--output", check.output, "Output (default stdout)");
  c->add_option("--gold", check.gold,
                "Check the words of a gold JSONL dataset and emit prediction records");
  c->add_option("-j,--jobs", check.jobs, "Worker threads")->check(CLI::PositiveNumber);

  detail::CorruptArgs corrupt;
  auto* k = app.add_subcommand("corrupt", "Inject synthetic spelling errors");
  k->add_option("-l,--lexicon", corrupt.lexicon, "Word list used for validation")->required();
  k->add_option("-m,--mischief", corrupt.mischief, "correct<TAB>misspelled list");
  k->add_option("--switch-table", corrupt.switch_table,
                "left<TAB>right character switches (default: built-in table)");
  k->add_option("-c,--config", corrupt.config, "key = value configuration file");
  k->add_option("--set", corrupt.set, "Override a config key (key=value), repeatable");
  k->add_option("-s,--seed", corrupt.seed, "Random seed (default " +
                                                std::to_string(kDefaultSeed) + ")");
  k->add_option("--scale", corrupt.scale, "Global probability scale, e.g. 1/8");
  k->add_option("-b,--budget", corrupt.budget, "Token budget per sentence group")
      ->check(CLI::PositiveNumber);
  k->add_option("-i,--input", corrupt.input, "One sentence per line (default stdin)");
  k->add_option("-o,--output", corrupt.output, "Output (default stdout)");
  k->add_option("-j,--jobs", corrupt.jobs, "Worker threads")->check(CLI::PositiveNumber);

  detail::EncodeArgs encode;
  auto* e = app.add_subcommand("encode", "Turn corrupt output into masked training examples");
  e->add_option("-i,--input", encode.input, "corrupt output (default stdin)");
  e->add_option("-o,--output", encode.output, "Output (default stdout)");
  e->add_option("--gold-out", encode.gold_out, "Also write the gold dataset here");
  e->add_option("--mask", encode.mask, "Mask placeholder");

  detail::ScoreArgs scoring;
  auto* s = app.add_subcommand("score", "Precision, recall and F0.5 against gold");
  s->add_option("-g,--gold", scoring.gold, "Gold dataset (JSONL)")->required();
  s->add_option("-p,--pred", scoring.pred, "Predictions (JSONL)")->required();
  s->add_option("-o,--output", scoring.output, "Output (default stdout)");
  s->add_flag("--json", scoring.json, "Machine-readable JSON report");
  s->add_flag("-q,--quiet", scoring.quiet, "Omit the per-document table");

  detail::StatsArgs stats;
  auto* t = app.add_subcommand("stats", "Dataset summary: words, sentences, % errors");
  t->add_option("-g,--gold", stats.gold, "Gold dataset (default stdin)");
  t->add_option("-o,--output", stats.output, "Output (default stdout)");
  t->add_option("--name", stats.name, "Dataset name shown in the table");
  t->add_flag("--json", stats.json, "Machine-readable JSON");

  std::vector<const char*> argv{"slospell"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*c) return detail::run_check(check, in, out);
    if (*k) return detail::run_corrupt(corrupt, in, out);
    if (*e) return detail::run_encode(encode, in, out);
    if (*s) return detail::run_score(scoring, in, out);
    if (*t) return detail::run_stats(stats, in, out);
  } catch (const ConfigError& ex) {
    err << "slospell: " << ex.what() << '\n';
    return kUsage;
  } catch (const std::exception& ex) {
    err << "slospell: " << ex.what() << '\n';
    return kData;
  }
  return kUsage;
}

}  // namespace slospell::cli
