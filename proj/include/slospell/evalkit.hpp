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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "slospell/encode.hpp"
#include "slospell/error.hpp"
#include "slospell/unicode.hpp"

// Word-level detection scoring: precision, recall and F-beta (beta = 0.5
// weighs precision higher), per document and pooled.
namespace slospell {

struct GoldDocument {
  std::string id;
  std::vector<std::string> words;
  std::vector<bool> gold_error;
  std::vector<std::size_t> sentence_ends;  // exclusive word indices
};

/// Predicted labels for one document. `words` may be empty, in which case
/// only lengths are checked against the gold document.
struct Prediction {
  std::string id;
  std::vector<std::string> words;
  std::vector<int> labels;
};

struct AlignedPair {
  bool gold_error = false;
  bool predicted = false;
};

struct Counts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  Counts& operator+=(const Counts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    tn += o.tn;
    return *this;
  }
  friend bool operator==(const Counts&, const Counts&) = default;
};

/// Pairs gold flags with predictions position by position. Any nonzero
/// label (misspelled, join, split) counts as a predicted error.
inline std::vector<AlignedPair> align(
    const GoldDocument& gold, std::span<const std::pair<std::string, int>> predictions) {
  if (predictions.size() != gold.words.size())
    throw AlignmentError("document '" + gold.id + "': " +
                         std::to_string(gold.words.size()) + " gold words but " +
                         std::to_string(predictions.size()) + " predictions");
  std::vector<AlignedPair> out;
  out.reserve(predictions.size());
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const auto& [word, label] = predictions[i];
    if (word != gold.words[i] && unicode::nfc(word) != unicode::nfc(gold.words[i]))
      throw AlignmentError("document '" + gold.id + "': words diverge at index " +
                           std::to_string(i) + ": gold '" + gold.words[i] +
                           "' vs predicted '" + word + "'");
    if (label < 0 || label > 3)
      throw AlignmentError("document '" + gold.id + "': label out of range at index " +
                           std::to_string(i) + ": " + std::to_string(label));
    out.push_back(AlignedPair{gold.gold_error[i], label != 0});
  }
  return out;
}

inline Counts count(std::span<const AlignedPair> pairs) {
  Counts c;
  for (const auto& p : pairs) {
    if (p.gold_error && p.predicted) ++c.tp;
    else if (p.predicted) ++c.fp;
    else if (p.gold_error) ++c.fn;
    else ++c.tn;
  }
  return c;
}

/// Precision with P = 1 when nothing was predicted.
inline double precision(std::uint64_t tp, std::uint64_t fp) {
  return tp + fp == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
}

/// Recall with R = 1 when there is nothing to find.
inline double recall(std::uint64_t tp, std::uint64_t fn) {
  return tp + fn == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
}

/// F-beta over counts. No errors and none predicted scores 1; no true
/// positives with any false positive or negative scores 0.
inline double f_beta(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn,
                     double beta = 0.5) {
  if (tp == 0 && fp == 0 && fn == 0) return 1.0;
  if (tp == 0) return 0.0;
  const double p = precision(tp, fp);
  const double r = recall(tp, fn);
  const double b2 = beta * beta;
  return (1 + b2) * p * r / (b2 * p + r);
}

struct DocumentScore {
  std::string id;
  Counts counts;
  double precision = 1;
  double recall = 1;
  double f05 = 1;
};

struct DatasetStats {
  std::uint64_t words = 0;
  std::uint64_t sentences = 0;
  std::uint64_t errors = 0;
  double error_pct = 0;  // rounded to two decimals
};

struct EvalReport {
  std::vector<DocumentScore> per_doc;
  Counts micro;
  double macro_f05 = 1;
  double micro_precision = 1;
  double micro_recall = 1;
  double micro_f05 = 1;
  DatasetStats corpus;

  double error_fraction() const {
    return corpus.words == 0 ? 0.0
                             : static_cast<double>(corpus.errors) /
                                   static_cast<double>(corpus.words);
  }
};

inline double round2(double x) { return std::round(x * 100.0) / 100.0; }

/// Words, sentences, and percentage of erroneous words. A document without
/// sentence boundaries counts as one sentence.
inline DatasetStats dataset_stats(std::span<const GoldDocument> dataset) {
  DatasetStats s;
  for (const auto& d : dataset) {
    s.words += d.words.size();
    s.sentences += d.sentence_ends.empty() ? 1 : d.sentence_ends.size();
    s.errors += static_cast<std::uint64_t>(
        std::count(d.gold_error.begin(), d.gold_error.end(), true));
  }
  s.error_pct = s.words == 0 ? 0.0
                             : round2(100.0 * static_cast<double>(s.errors) /
                                      static_cast<double>(s.words));
  return s;
}

/// Scores every gold document against its prediction (matched by id).
/// Macro F0.5 is the unweighted mean of per-document scores; micro scores
/// pool the counts. Per-document scores are summed in sorted order, so the
/// result does not depend on document order.
inline EvalReport score(std::span<const GoldDocument> dataset,
                        std::span<const Prediction> predictions) {
  std::unordered_map<std::string, const Prediction*> by_id;
  for (const auto& p : predictions)
    if (!by_id.emplace(p.id, &p).second)
      throw AlignmentError("duplicate prediction for document '" + p.id + "'");

  EvalReport report;
  std::vector<double> f05s;
  for (const auto& doc : dataset) {
    const auto it = by_id.find(doc.id);
    if (it == by_id.end())
      throw AlignmentError("no prediction for document '" + doc.id + "'");
    const Prediction& pred = *it->second;
    if (!pred.words.empty() && pred.words.size() != pred.labels.size())
      throw AlignmentError("document '" + doc.id + "': prediction has " +
                           std::to_string(pred.words.size()) + " words but " +
                           std::to_string(pred.labels.size()) + " labels");
    std::vector<std::pair<std::string, int>> pairs;
    pairs.reserve(pred.labels.size());
    for (std::size_t i = 0; i < pred.labels.size(); ++i) {
      const std::string& w = !pred.words.empty() ? pred.words[i]
                             : i < doc.words.size() ? doc.words[i]
                                                    : std::string();
      pairs.emplace_back(w, pred.labels[i]);
    }
    const auto aligned = align(doc, pairs);
    DocumentScore ds;
    ds.id = doc.id;
    ds.counts = count(aligned);
    ds.precision = precision(ds.counts.tp, ds.counts.fp);
    ds.recall = recall(ds.counts.tp, ds.counts.fn);
    ds.f05 = f_beta(ds.counts.tp, ds.counts.fp, ds.counts.fn, 0.5);
    report.micro += ds.counts;
    f05s.push_back(ds.f05);
    report.per_doc.push_back(std::move(ds));
  }
  if (!f05s.empty()) {
    std::sort(f05s.begin(), f05s.end());
    long double sum = 0;
    for (double f : f05s) sum += f;
    report.macro_f05 = static_cast<double>(sum / static_cast<long double>(f05s.size()));
  }
  report.micro_precision = precision(report.micro.tp, report.micro.fp);
  report.micro_recall = recall(report.micro.tp, report.micro.fn);
  report.micro_f05 = f_beta(report.micro.tp, report.micro.fp, report.micro.fn, 0.5);
  report.corpus = dataset_stats(dataset);
  return report;
}

// ---------------------------------------------------------------------------
// Interchange

/// Gold record {"id", "words", "errors", "sent_ends"}.
inline GoldDocument gold_from_json(const nlohmann::json& j, const std::string& where) {
  auto fail = [&](const std::string& msg) -> void { throw FormatError(where + msg); };
  if (!j.is_object()) fail("record is not a JSON object");
  GoldDocument d;
  try {
    d.id = j.at("id").get<std::string>();
    d.words = j.at("words").get<std::vector<std::string>>();
    for (const auto& e : j.at("errors")) {
      const int v = e.get<int>();
      if (v != 0 && v != 1) fail("errors must be 0 or 1, got " + std::to_string(v));
      d.gold_error.push_back(v == 1);
    }
    if (j.contains("sent_ends"))
      d.sentence_ends = j.at("sent_ends").get<std::vector<std::size_t>>();
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("bad gold record: ") + e.what());
  }
  if (d.words.empty()) fail("document '" + d.id + "' has no words");
  if (d.words.size() != d.gold_error.size())
    fail("document '" + d.id + "': " + std::to_string(d.words.size()) + " words but " +
         std::to_string(d.gold_error.size()) + " error flags");
  for (auto e : d.sentence_ends)
    if (e > d.words.size()) fail("sentence end beyond document length");
  return d;
}

inline nlohmann::ordered_json to_json(const GoldDocument& d) {
  nlohmann::ordered_json j;
  j["id"] = d.id;
  j["words"] = d.words;
  auto& errs = j["errors"] = nlohmann::ordered_json::array();
  for (bool e : d.gold_error) errs.push_back(e ? 1 : 0);
  j["sent_ends"] = d.sentence_ends;
  return j;
}

/// Gold document for a corrupted group: every nonzero label is an error.
inline GoldDocument gold_from_corrupted(const CorruptedSentence& c, std::string id) {
  GoldDocument d;
  d.id = std::move(id);
  d.words = c.words;
  for (int l : c.labels) d.gold_error.push_back(l != 0);
  d.sentence_ends = c.sentence_ends;
  return d;
}

/// Prediction record: {"id", "labels"} plus either "words" or a masked
/// "text" (the training-set format), from which words are recovered.
inline Prediction prediction_from_json(const nlohmann::json& j, const std::string& where) {
  auto fail = [&](const std::string& msg) -> void { throw FormatError(where + msg); };
  if (!j.is_object()) fail("record is not a JSON object");
  Prediction p;
  try {
    p.id = j.at("id").get<std::string>();
    p.labels = j.at("labels").get<std::vector<int>>();
    if (j.contains("words")) {
      p.words = j.at("words").get<std::vector<std::string>>();
    } else if (j.contains("text")) {
      p.words = masked_words(j.at("text").get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("bad prediction record: ") + e.what());
  }
  if (!p.words.empty() && p.words.size() != p.labels.size())
    fail("document '" + p.id + "': " + std::to_string(p.words.size()) +
         " words but " + std::to_string(p.labels.size()) + " labels");
  return p;
}

inline nlohmann::ordered_json to_json(const Prediction& p) {
  nlohmann::ordered_json j;
  j["id"] = p.id;
  j["words"] = p.words;
  j["labels"] = p.labels;
  return j;
}

inline nlohmann::ordered_json to_json(const EvalReport& r) {
  auto rounded = [](double x) { return round2(x); };
  nlohmann::ordered_json j;
  auto& docs = j["per_doc"] = nlohmann::ordered_json::array();
  for (const auto& d : r.per_doc) {
    nlohmann::ordered_json e;
    e["id"] = d.id;
    e["tp"] = d.counts.tp;
    e["fp"] = d.counts.fp;
    e["fn"] = d.counts.fn;
    e["precision"] = rounded(d.precision);
    e["recall"] = rounded(d.recall);
    e["f05"] = rounded(d.f05);
    docs.push_back(std::move(e));
  }
  j["macro_f05"] = rounded(r.macro_f05);
  j["micro_precision"] = rounded(r.micro_precision);
  j["micro_recall"] = rounded(r.micro_recall);
  j["micro_f05"] = rounded(r.micro_f05);
  j["tp"] = r.micro.tp;
  j["fp"] = r.micro.fp;
  j["fn"] = r.micro.fn;
  j["words"] = r.corpus.words;
  j["sentences"] = r.corpus.sentences;
  j["error_pct"] = r.corpus.error_pct;
  return j;
}

namespace detail {

inline std::string fixed2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace detail

/// Human-readable report, numbers with two decimals.
inline void print_report(std::ostream& os, const EvalReport& r, bool per_doc = true) {
  char line[256];
  if (per_doc) {
    std::snprintf(line, sizeof line, "%-24s %8s %8s %8s %6s %6s %6s\n", "document",
                  "tp", "fp", "fn", "P", "R", "F0.5");
    os << line;
    for (const auto& d : r.per_doc) {
      std::snprintf(line, sizeof line, "%-24s %8llu %8llu %8llu %6.2f %6.2f %6.2f\n",
                    d.id.c_str(), static_cast<unsigned long long>(d.counts.tp),
                    static_cast<unsigned long long>(d.counts.fp),
                    static_cast<unsigned long long>(d.counts.fn), d.precision,
                    d.recall, d.f05);
      os << line;
    }
    os << '\n';
  }
  os << "documents:        " << r.per_doc.size() << '\n';
  os << "words:            " << r.corpus.words << '\n';
  os << "sentences:        " << r.corpus.sentences << '\n';
  os << "% errors:         " << detail::fixed2(r.corpus.error_pct) << '\n';
  os << "micro P / R:      " << detail::fixed2(r.micro_precision) << " / "
     << detail::fixed2(r.micro_recall) << '\n';
  os << "micro F0.5:       " << detail::fixed2(r.micro_f05) << '\n';
  os << "macro F0.5:       " << detail::fixed2(r.macro_f05) << '\n';
}

inline void print_stats(std::ostream& os, const std::string& name,
                        std::size_t documents, const DatasetStats& s) {
  char line[256];
  std::snprintf(line, sizeof line, "%-24s %10s %10s %10s %9s\n", "dataset", "#docs",
                "#words", "#sentences", "% errors");
  os << line;
  std::snprintf(line, sizeof line, "%-24s %10zu %10llu %10llu %9.2f\n", name.c_str(),
                documents, static_cast<unsigned long long>(s.words),
                static_cast<unsigned long long>(s.sentences), s.error_pct);
  os << line;
}

}  // namespace slospell
