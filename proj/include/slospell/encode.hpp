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

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "slospell/corrupt.hpp"
#include "slospell/error.hpp"
#include "slospell/utf8.hpp"

namespace slospell {

inline constexpr std::string_view kMaskToken = "<mask>";
inline constexpr std::size_t kDefaultTokenBudget = 128;

/// Rough subword estimate: one token per four characters, plus one.
inline long long default_token_cost(std::string_view word) {
  return static_cast<long long>((utf8::length(word) + 3) / 4) + 1;
}

/// Estimated cost of a sentence in masked form: every word costs
/// token_cost(word) plus one for its mask.
template <class Cost>
std::size_t sentence_cost(std::span<const std::string> words, Cost&& cost) {
  std::size_t total = 0;
  for (const auto& w : words) {
    const long long c = static_cast<long long>(std::invoke(cost, std::string_view(w)));
    if (c <= 0)
      throw ConfigError("token cost must be positive, got " + std::to_string(c) +
                        " for '" + w + "'");
    total += static_cast<std::size_t>(c) + 1;
  }
  return total;
}

template <class Sentence>
struct BasicSentenceGroup {
  std::vector<Sentence> sentences;
  std::size_t token_budget = kDefaultTokenBudget;
  std::size_t estimated_cost = 0;
  bool oversized = false;  // a single sentence that alone exceeds the budget
};

using SentenceGroup = BasicSentenceGroup<std::vector<std::string>>;

/// Streaming greedy packer: sentences are appended to the open group while
/// the budget holds; a sentence that does not fit closes the group. Order
/// is preserved and sentences are never split.
template <class Sentence>
class GroupPacker {
 public:
  using Group = BasicSentenceGroup<Sentence>;

  explicit GroupPacker(std::size_t budget = kDefaultTokenBudget) : budget_(budget) {
    if (budget == 0) throw ConfigError("token budget must be positive");
  }

  /// Adds a sentence; returns any groups completed by it (zero to two).
  std::vector<Group> push(Sentence sentence, std::size_t cost) {
    std::vector<Group> done;
    if (!open_.sentences.empty() && open_.estimated_cost + cost > budget_)
      done.push_back(take());
    open_.sentences.push_back(std::move(sentence));
    open_.estimated_cost += cost;
    if (cost > budget_) {
      open_.oversized = true;
      done.push_back(take());
    }
    return done;
  }

  /// Flushes the open group, if any.
  std::vector<Group> finish() {
    std::vector<Group> done;
    if (!open_.sentences.empty()) done.push_back(take());
    return done;
  }

 private:
  Group take() {
    Group g = std::move(open_);
    g.token_budget = budget_;
    open_ = Group{};
    return g;
  }

  std::size_t budget_;
  Group open_;
};

/// Packs sentences (word sequences) into groups under `budget`.
template <class Cost = long long (*)(std::string_view)>
std::vector<SentenceGroup> group_sentences(
    std::span<const std::vector<std::string>> sentences,
    std::size_t budget = kDefaultTokenBudget, Cost cost = default_token_cost) {
  GroupPacker<std::vector<std::string>> packer(budget);
  std::vector<SentenceGroup> out;
  for (const auto& s : sentences) {
    const std::size_t c = sentence_cost(std::span<const std::string>(s), cost);
    for (auto& g : packer.push(s, c)) out.push_back(std::move(g));
  }
  for (auto& g : packer.finish()) out.push_back(std::move(g));
  return out;
}

/// Masked training/inference example: "w1 <mask> w2 <mask> ... wn <mask>".
struct EncodedExample {
  std::string masked_text;
  std::vector<int> labels;
  std::size_t word_count = 0;
};

inline EncodedExample encode_example(const CorruptedSentence& c,
                                     std::string_view mask = kMaskToken) {
  if (c.words.empty()) throw FormatError("cannot encode an empty word sequence");
  if (c.labels.size() != c.words.size())
    throw FormatError("labels/words length mismatch (" +
                      std::to_string(c.labels.size()) + " vs " +
                      std::to_string(c.words.size()) + ")");
  if (mask.empty()) throw ConfigError("mask token must be nonempty");
  EncodedExample ex;
  for (const auto& w : c.words) {
    if (w.empty()) throw FormatError("cannot encode an empty word");
    if (w.find(mask) != std::string::npos)
      throw FormatError("word contains the mask token: '" + w + "'");
    if (!ex.masked_text.empty()) ex.masked_text += ' ';
    ex.masked_text += w;
    ex.masked_text += ' ';
    ex.masked_text += mask;
  }
  ex.labels = c.labels;
  ex.word_count = c.words.size();
  return ex;
}

/// Recovers the words of a masked example (the text before each mask).
inline std::vector<std::string> masked_words(std::string_view masked_text,
                                             std::string_view mask = kMaskToken) {
  std::vector<std::string> words;
  std::size_t start = 0;
  while (true) {
    const auto at = masked_text.find(mask, start);
    if (at == std::string_view::npos) break;
    words.emplace_back(detail::trim_ascii(masked_text.substr(start, at - start)));
    start = at + mask.size();
  }
  return words;
}

/// Pairs each word with the label predicted at its mask.
inline std::vector<std::pair<std::string, int>> decode_predictions(
    const EncodedExample& example, std::span<const int> per_mask_labels,
    std::string_view mask = kMaskToken) {
  if (per_mask_labels.size() != example.word_count)
    throw AlignmentError("example has " + std::to_string(example.word_count) +
                         " masks but " + std::to_string(per_mask_labels.size()) +
                         " predictions were given");
  auto words = masked_words(example.masked_text, mask);
  if (words.size() != example.word_count)
    throw AlignmentError("masked text has " + std::to_string(words.size()) +
                         " masks, word_count says " +
                         std::to_string(example.word_count));
  std::vector<std::pair<std::string, int>> out;
  out.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i)
    out.emplace_back(std::move(words[i]), per_mask_labels[i]);
  return out;
}

/// Training-set record {"id", "text", "labels"}.
inline nlohmann::ordered_json to_json(const EncodedExample& ex, const std::string& id) {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["text"] = ex.masked_text;
  j["labels"] = ex.labels;
  return j;
}

}  // namespace slospell
