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
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "slospell/error.hpp"
#include "slospell/lexicon.hpp"
#include "slospell/random.hpp"
#include "slospell/unicode.hpp"
#include "slospell/utf8.hpp"
#include "slospell/wordcheck.hpp"

// Synthetic spelling-error generation.
//
// Six generators run over every word of a sentence group in a fixed order:
// split, concatenate, mischief-word replacement, character switches, caron
// stripping and random character edits. The first three fire at most once
// per word; the last three repeat geometrically (re-roll the same gate after
// each application, up to repeat_cap applications). All randomness comes
// from one seeded stream per sentence group.
namespace slospell {

// ---------------------------------------------------------------------------
// Configuration

struct CorruptionConfig {
  double p_word_split = 0.03;
  double p_split_exists = 0.99;
  double p_conc = 0.03;
  double p_conc_exists = 0.99;
  double p_mischief = 0.10;
  double p_switch_chr = 0.70;
  int switch_positions_per_word = 4;
  double p_caron = 0.05;
  double p_vowel = 0.05;
  double p_consonant = 0.05;
  double p_subst_chr = 0.02;
  double p_del_chr = 0.04;
  double p_insert_chr = 0.03;
  int repeat_cap = 3;
  double global_scale = 1.0;
  std::uint64_t seed = kDefaultSeed;

  /// Gate probability after global scaling. p_split_exists and
  /// p_conc_exists are validation-path choices, not gates, and are never
  /// scaled.
  double scaled(double p) const noexcept { return p * global_scale; }

  /// Every gate and sub-edit probability set to zero; everything else
  /// default. Handy for exercising one generator in isolation.
  static CorruptionConfig zeroed() {
    CorruptionConfig c;
    c.p_word_split = c.p_conc = c.p_mischief = c.p_switch_chr = c.p_caron = 0;
    c.p_vowel = c.p_consonant = c.p_subst_chr = c.p_del_chr = c.p_insert_chr = 0;
    return c;
  }

  void validate() const {
    const std::pair<const char*, double> probs[] = {
        {"p_word_split", p_word_split}, {"p_split_exists", p_split_exists},
        {"p_conc", p_conc},             {"p_conc_exists", p_conc_exists},
        {"p_mischief", p_mischief},     {"p_switch_chr", p_switch_chr},
        {"p_caron", p_caron},           {"p_vowel", p_vowel},
        {"p_consonant", p_consonant},   {"p_subst_chr", p_subst_chr},
        {"p_del_chr", p_del_chr},       {"p_insert_chr", p_insert_chr},
    };
    if (!(global_scale > 0) || !std::isfinite(global_scale))
      throw ConfigError("global_scale must be positive");
    for (const auto& [name, p] : probs) {
      if (!(p >= 0.0 && p <= 1.0))
        throw ConfigError(std::string(name) + " must be in [0,1], got " +
                          std::to_string(p));
      const bool gate = std::string_view(name) != "p_split_exists" &&
                        std::string_view(name) != "p_conc_exists";
      if (gate && scaled(p) > 1.0)
        throw ConfigError(std::string(name) + " exceeds 1 after global_scale");
    }
    if (switch_positions_per_word < 1)
      throw ConfigError("switch_positions_per_word must be positive");
    if (repeat_cap < 1) throw ConfigError("repeat_cap must be positive");
  }
};

namespace detail {

inline double parse_double(std::string_view key, std::string_view v) {
  double out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError("invalid number for " + std::string(key) + ": '" +
                      std::string(v) + "'");
  return out;
}

template <class Int>
Int parse_int(std::string_view key, std::string_view v) {
  Int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError("invalid integer for " + std::string(key) + ": '" +
                      std::string(v) + "'");
  return out;
}

// Accepts "0.125" or "1/8".
inline double parse_rational(std::string_view key, std::string_view v) {
  const auto slash = v.find('/');
  if (slash == std::string_view::npos) return parse_double(key, v);
  const double num = parse_double(key, detail::trim_ascii(v.substr(0, slash)));
  const double den = parse_double(key, detail::trim_ascii(v.substr(slash + 1)));
  if (den == 0) throw ConfigError("zero denominator for " + std::string(key));
  return num / den;
}

}  // namespace detail

/// Sets one field by name. Throws ConfigError on unknown keys or bad values.
inline void set_option(CorruptionConfig& cfg, std::string_view key,
                       std::string_view value) {
  value = detail::trim_ascii(value);
  struct Prob {
    const char* name;
    double CorruptionConfig::*field;
  };
  static constexpr Prob probs[] = {
      {"p_word_split", &CorruptionConfig::p_word_split},
      {"p_split_exists", &CorruptionConfig::p_split_exists},
      {"p_conc", &CorruptionConfig::p_conc},
      {"p_conc_exists", &CorruptionConfig::p_conc_exists},
      {"p_mischief", &CorruptionConfig::p_mischief},
      {"p_switch_chr", &CorruptionConfig::p_switch_chr},
      {"p_caron", &CorruptionConfig::p_caron},
      {"p_vowel", &CorruptionConfig::p_vowel},
      {"p_consonant", &CorruptionConfig::p_consonant},
      {"p_subst_chr", &CorruptionConfig::p_subst_chr},
      {"p_del_chr", &CorruptionConfig::p_del_chr},
      {"p_insert_chr", &CorruptionConfig::p_insert_chr},
  };
  for (const auto& p : probs) {
    if (key == p.name) {
      cfg.*(p.field) = detail::parse_double(key, value);
      return;
    }
  }
  if (key == "switch_positions_per_word") {
    cfg.switch_positions_per_word = detail::parse_int<int>(key, value);
  } else if (key == "repeat_cap") {
    cfg.repeat_cap = detail::parse_int<int>(key, value);
  } else if (key == "global_scale") {
    cfg.global_scale = detail::parse_rational(key, value);
  } else if (key == "seed") {
    cfg.seed = detail::parse_int<std::uint64_t>(key, value);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

/// Parses `key = value` lines on top of `base`. Blank lines and '#'
/// comments are ignored. The result is validated.
inline CorruptionConfig load_config(std::istream& in, const std::string& source,
                                    CorruptionConfig base = {}) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto text = detail::trim_ascii(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(at_line(source, lineno) + "expected 'key = value'");
    try {
      set_option(base, detail::trim_ascii(text.substr(0, eq)),
                 text.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(at_line(source, lineno) + e.what());
    }
  }
  try {
    base.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return base;
}

// ---------------------------------------------------------------------------
// Bookkeeping of what fired

enum class Generator : std::size_t {
  Split,
  Concat,
  Mischief,
  Switch,
  Caron,
  Vowel,
  Consonant,
  Substitute,
  Delete,
  Insert,
};

inline constexpr std::size_t kGeneratorCount = 10;

inline const char* to_string(Generator g) {
  static constexpr const char* names[] = {
      "split",  "concat",    "mischief",   "switch", "caron",
      "vowel",  "consonant", "substitute", "delete", "insert"};
  return names[static_cast<std::size_t>(g)];
}

/// eligible: words on which the gate was rolled; fired: first gate passed;
/// applied: number of applications (split/concat: number actually emitted).
struct GeneratorTally {
  std::uint64_t eligible = 0;
  std::uint64_t fired = 0;
  std::uint64_t applied = 0;
};

struct CorruptionTally {
  std::array<GeneratorTally, kGeneratorCount> by{};

  GeneratorTally& operator[](Generator g) {
    return by[static_cast<std::size_t>(g)];
  }
  const GeneratorTally& operator[](Generator g) const {
    return by[static_cast<std::size_t>(g)];
  }

  void merge(const CorruptionTally& o) {
    for (std::size_t i = 0; i < kGeneratorCount; ++i) {
      by[i].eligible += o.by[i].eligible;
      by[i].fired += o.by[i].fired;
      by[i].applied += o.by[i].applied;
    }
  }
};

// ---------------------------------------------------------------------------
// Switch table

/// Character sequences that are commonly confused, applied in both
/// directions. Sides are one or two letters and are matched
/// case-insensitively.
class SwitchTable {
 public:
  void add(std::string left, std::string right) {
    check_side(left);
    check_side(right);
    sides_.emplace_back(lowered(left), lowered(right));
    pairs_.emplace_back(std::move(left), std::move(right));
  }

  const std::vector<std::pair<std::string, std::string>>& pairs() const noexcept {
    return pairs_;
  }
  std::size_t size() const noexcept { return pairs_.size(); }

  struct Candidate {
    std::size_t length;  // code points replaced
    std::u32string replacement;
  };

  /// Rewrites available at `pos`: only the longest matching side length is
  /// kept, and a match may not cover a locked (already rewritten) position.
  std::vector<Candidate> candidates_at(std::u32string_view word, std::size_t pos,
                                       const std::vector<bool>& locked) const {
    std::vector<Candidate> out;
    std::size_t best = 0;
    auto consider = [&](const std::u32string& side, const std::u32string& other) {
      if (side.size() < best || pos + side.size() > word.size()) return;
      for (std::size_t k = 0; k < side.size(); ++k) {
        if (locked[pos + k] || unicode::to_lower(word[pos + k]) != side[k]) return;
      }
      if (side.size() > best) {
        best = side.size();
        out.clear();
      }
      out.push_back(Candidate{side.size(), other});
    };
    for (const auto& [l, r] : sides_) {
      consider(l, r);
      consider(r, l);
    }
    return out;
  }

 private:
  static void check_side(const std::string& side) {
    if (!utf8::is_valid(side)) throw FormatError("switch table side is not UTF-8");
    const auto cps = utf8::decode(side);
    if (cps.empty() || cps.size() > 2)
      throw FormatError("switch table side must be 1-2 letters: '" + side + "'");
    for (char32_t c : cps)
      if (!unicode::is_letter(c))
        throw FormatError("switch table side must be letters: '" + side + "'");
  }

  static std::u32string lowered(const std::string& s) {
    auto cps = utf8::decode(s);
    for (auto& c : cps) c = unicode::to_lower(c);
    return cps;
  }

  std::vector<std::pair<std::string, std::string>> pairs_;
  std::vector<std::pair<std::u32string, std::u32string>> sides_;
};

/// The sixteen common Slovene confusions.
inline SwitchTable default_switch_table() {
  SwitchTable t;
  static constexpr std::pair<const char*, const char*> pairs[] = {
      {"n", "nj"}, {"l", "lj"}, {"t", "d"},   {"v", "u"},
      {"u", "el"}, {"i", "j"},  {"k", "kj"},  {"k", "h"},
      {"k", "g"},  {"s", "z"},  {"p", "b"},   {"š", "ž"},
      {"v", "l"},  {"u", "l"},  {"t", "tj"},  {"i", "ij"},
  };
  for (const auto& [l, r] : pairs) t.add(l, r);
  return t;
}

/// `left<TAB>right` per line; '#' comments and blank lines ignored.
inline SwitchTable load_switch_table(std::istream& in, const std::string& source) {
  SwitchTable t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim_ascii(line).empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw FormatError(at_line(source, lineno) + "expected 'left<TAB>right'");
    try {
      t.add(std::string(detail::trim_ascii(std::string_view(line).substr(0, tab))),
            std::string(detail::trim_ascii(std::string_view(line).substr(tab + 1))));
    } catch (const FormatError& e) {
      throw FormatError(at_line(source, lineno) + e.what());
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Mischief list

/// Words with well-known deviant spellings, each mapped to one or more
/// misspelled variants.
class MischiefList {
 public:
  void add(std::string correct, std::string misspelled) {
    if (correct.empty() || misspelled.empty())
      throw FormatError("mischief entries must be nonempty");
    if (!utf8::is_valid(correct) || !utf8::is_valid(misspelled))
      throw FormatError("mischief entry is not UTF-8");
    correct = unicode::nfc(correct);
    misspelled = unicode::nfc(misspelled);
    if (correct == misspelled)
      throw FormatError("mischief entry maps '" + correct + "' to itself");
    for (std::string_view s : {std::string_view(correct), std::string_view(misspelled)})
      for (char32_t c : utf8::decode(s))
        if (unicode::is_space(c))
          throw FormatError("mischief entry contains whitespace: '" +
                            std::string(s) + "'");
    auto& v = entries_[correct];
    if (std::find(v.begin(), v.end(), misspelled) == v.end())
      v.push_back(std::move(misspelled));
  }

  /// Variants for `word`. A Titlecase word with no entry of its own falls
  /// back to its lowercase entry; `capitalize` is then set.
  const std::vector<std::string>* lookup(std::string_view word,
                                         bool* capitalize = nullptr) const {
    if (capitalize) *capitalize = false;
    if (auto it = entries_.find(std::string(word)); it != entries_.end())
      return &it->second;
    if (unicode::casing(word) == unicode::Casing::Title) {
      if (auto it = entries_.find(unicode::lower(word)); it != entries_.end()) {
        if (capitalize) *capitalize = true;
        return &it->second;
      }
    }
    return nullptr;
  }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::unordered_map<std::string, std::vector<std::string>>& entries() const noexcept {
    return entries_;
  }

 private:
  std::unordered_map<std::string, std::vector<std::string>> entries_;
};

/// `correct<TAB>misspelled` per line; repeated keys add variants.
inline MischiefList load_mischief_list(std::istream& in, const std::string& source) {
  MischiefList list;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim_ascii(line).empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw FormatError(at_line(source, lineno) + "expected 'correct<TAB>misspelled'");
    try {
      list.add(std::string(detail::trim_ascii(std::string_view(line).substr(0, tab))),
               std::string(detail::trim_ascii(std::string_view(line).substr(tab + 1))));
    } catch (const FormatError& e) {
      throw FormatError(at_line(source, lineno) + e.what());
    }
  }
  return list;
}

// ---------------------------------------------------------------------------
// Output types

enum class Label : int {
  Correct = 0,
  Misspelled = 1,
  JoinWithNeighbor = 2,
  SplitIntoTwo = 3,
};

enum class Provenance { None, Split, Concat, Mischief, Switch, Caron, RandomChar };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::None: return "none";
    case Provenance::Split: return "split";
    case Provenance::Concat: return "concat";
    case Provenance::Mischief: return "mischief";
    case Provenance::Switch: return "switch";
    case Provenance::Caron: return "caron";
    case Provenance::RandomChar: return "random";
  }
  return "?";
}

inline std::optional<Provenance> provenance_from_string(std::string_view s) {
  for (auto p : {Provenance::None, Provenance::Split, Provenance::Concat,
                 Provenance::Mischief, Provenance::Switch, Provenance::Caron,
                 Provenance::RandomChar})
    if (s == to_string(p)) return p;
  return std::nullopt;
}

/// One corrupted sentence group.
///
/// words/labels/provenance/origin/junction are parallel. origin[i] indexes
/// `source`; for a merged word (label 3) it is the left source word, and
/// junction[i] is the byte offset in words[i] where the right word starts.
/// sentence_ends holds the exclusive end index (into words) of each
/// sentence.
struct CorruptedSentence {
  std::vector<std::string> source;
  std::vector<std::string> words;
  std::vector<int> labels;
  std::vector<Provenance> provenance;
  std::vector<std::size_t> origin;
  std::vector<std::size_t> junction;
  std::vector<std::size_t> sentence_ends;
};

/// A word plus the non-word tokens glued to it. Generators only see `core`.
struct WordUnit {
  std::string prefix;
  std::string core;
  std::string suffix;

  std::string render() const { return prefix + core + suffix; }
};

/// Splits a sentence into word units. Non-word tokens (numbers, URLs,
/// punctuation, symbols) are attached to the preceding word, or to the
/// first word when they lead the sentence; whitespace between attached
/// pieces collapses to one space. A sentence with no word tokens yields no
/// units.
inline std::vector<WordUnit> segment_units(std::string_view sentence) {
  std::vector<WordUnit> units;
  std::string pending;
  std::size_t prev_end = 0;
  bool any = false;
  for (const auto& tok : tokenize(sentence)) {
    const bool gap = any && tok.byte_offset > prev_end;
    if (tok.kind == TokenKind::Word) {
      if (units.empty()) {
        if (gap) pending += ' ';
        units.push_back(WordUnit{std::move(pending), tok.text, {}});
        pending.clear();
      } else {
        units.push_back(WordUnit{{}, tok.text, {}});
      }
    } else if (units.empty()) {
      if (gap) pending += ' ';
      pending += tok.text;
    } else {
      if (gap) units.back().suffix += ' ';
      units.back().suffix += tok.text;
    }
    prev_end = tok.byte_offset + tok.text.size();
    any = true;
  }
  return units;
}

// ---------------------------------------------------------------------------
// Individual generators

/// Proposes a space at a uniform position in [1, len-1]. With probability
/// p_split_exists the split stands only if both halves are in the lexicon;
/// otherwise it is emitted unconditionally.
template <RandomSource Rng>
std::optional<std::pair<std::string, std::string>> split_word(
    const Lexicon& lex, std::string_view word, Rng& rng,
    const CorruptionConfig& cfg) {
  const auto cps = utf8::decode(word);
  if (cps.size() < 2) return std::nullopt;
  const bool validate = rng.chance(cfg.p_split_exists);
  const std::size_t pos = 1 + rng.index(cps.size() - 1);
  auto left = utf8::encode(std::u32string_view(cps).substr(0, pos));
  auto right = utf8::encode(std::u32string_view(cps).substr(pos));
  if (validate && !(lex.contains(left) && lex.contains(right)))
    return std::nullopt;
  return std::pair{std::move(left), std::move(right)};
}

/// Joins two adjacent words. With probability p_conc_exists the result must
/// be in the lexicon; otherwise it is emitted unconditionally.
template <RandomSource Rng>
std::optional<std::string> concat_words(const Lexicon& lex, std::string_view left,
                                        std::string_view right, Rng& rng,
                                        const CorruptionConfig& cfg) {
  const bool validate = rng.chance(cfg.p_conc_exists);
  std::string joined = std::string(left) + std::string(right);
  if (validate && !lex.contains(joined)) return std::nullopt;
  return joined;
}

/// Uniformly chosen misspelled variant of `word`, or nothing when the word
/// is not on the list. The p_mischief gate belongs to the caller.
template <RandomSource Rng>
std::optional<std::string> apply_mischief(const MischiefList& list,
                                          std::string_view word, Rng& rng) {
  bool capitalize = false;
  const auto* variants = list.lookup(word, &capitalize);
  if (variants == nullptr || variants->empty()) return std::nullopt;
  const auto& pick = (*variants)[variants->size() == 1 ? 0 : rng.index(variants->size())];
  if (!capitalize) return pick;
  auto cps = utf8::decode(pick);
  cps[0] = unicode::to_upper(cps[0]);
  return utf8::encode(cps);
}

/// Draws k positions. At each one not yet rewritten in this call, the
/// longest table side starting there is replaced by its partner (uniform
/// choice when several pairs share that side). The first letter keeps its
/// case.
template <RandomSource Rng>
std::string switch_characters(const SwitchTable& table, std::string_view word,
                              Rng& rng, int k) {
  auto cps = utf8::decode(word);
  std::vector<bool> locked(cps.size(), false);
  for (int draw = 0; draw < k && !cps.empty(); ++draw) {
    const std::size_t pos = rng.index(cps.size());
    if (locked[pos]) continue;
    const auto cands = table.candidates_at(cps, pos, locked);
    if (cands.empty()) continue;
    const auto& pick = cands[cands.size() == 1 ? 0 : rng.index(cands.size())];
    std::u32string repl = pick.replacement;
    if (unicode::is_upper(cps[pos])) repl[0] = unicode::to_upper(repl[0]);
    cps.replace(pos, pick.length, repl);
    locked.erase(locked.begin() + static_cast<std::ptrdiff_t>(pos),
                 locked.begin() + static_cast<std::ptrdiff_t>(pos + pick.length));
    locked.insert(locked.begin() + static_cast<std::ptrdiff_t>(pos), repl.size(), true);
  }
  return utf8::encode(cps);
}

/// č→c, š→s, ž→z in both cases, all occurrences at once.
inline std::string strip_carons(std::string_view word) {
  auto cps = utf8::decode(word);
  for (auto& c : cps) {
    switch (c) {
      case U'č': c = U'c'; break;
      case U'š': c = U's'; break;
      case U'ž': c = U'z'; break;
      case U'Č': c = U'C'; break;
      case U'Š': c = U'S'; break;
      case U'Ž': c = U'Z'; break;
      default: break;
    }
  }
  return utf8::encode(cps);
}

inline bool has_caron(std::string_view word) {
  for (char32_t c : utf8::decode(word))
    if (c == U'č' || c == U'š' || c == U'ž' || c == U'Č' || c == U'Š' || c == U'Ž')
      return true;
  return false;
}

inline constexpr std::u32string_view kSloveneAlphabet = U"abcčdefghijklmnoprsštuvzž";
inline constexpr std::u32string_view kVowels = U"aeiou";
inline constexpr std::u32string_view kConsonants = U"bcčdfghjklmnprsštvzž";

namespace detail {

inline char32_t with_case_of(char32_t original, char32_t replacement) {
  return unicode::is_upper(original) ? unicode::to_upper(replacement) : replacement;
}

// Uniform pick from `set` excluding `avoid` (when present in the set).
template <RandomSource Rng>
char32_t pick_other(std::u32string_view set, char32_t avoid, Rng& rng) {
  const bool present = set.find(avoid) != std::u32string_view::npos;
  std::size_t i = rng.index(set.size() - (present ? 1 : 0));
  for (char32_t c : set) {
    if (present && c == avoid) continue;
    if (i-- == 0) return c;
  }
  return set.back();
}

template <RandomSource Rng>
bool swap_from_class(std::u32string& w, std::u32string_view cls, double p,
                     Rng& rng, GeneratorTally* t, bool first_pass) {
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (cls.find(unicode::to_lower(w[i])) != std::u32string_view::npos)
      positions.push_back(i);
  if (positions.empty()) return false;
  if (t && first_pass) ++t->eligible;
  if (!rng.chance(p)) return false;
  const std::size_t pos = positions[rng.index(positions.size())];
  w[pos] = with_case_of(w[pos], pick_other(cls, unicode::to_lower(w[pos]), rng));
  if (t) {
    if (first_pass) ++t->fired;
    ++t->applied;
  }
  return true;
}

// One pass of the five random edits, in the fixed order vowel, consonant,
// substitute, delete, insert. Returns how many fired.
template <RandomSource Rng>
int random_edit_pass(std::u32string& w, Rng& rng, const CorruptionConfig& cfg,
                     CorruptionTally* tally, bool first_pass) {
  auto slot = [&](Generator g) -> GeneratorTally* {
    return tally ? &(*tally)[g] : nullptr;
  };
  auto hit = [&](GeneratorTally* t) {
    if (!t) return;
    if (first_pass) ++t->fired;
    ++t->applied;
  };
  int fired = 0;
  fired += swap_from_class(w, kVowels, cfg.scaled(cfg.p_vowel), rng,
                           slot(Generator::Vowel), first_pass);
  fired += swap_from_class(w, kConsonants, cfg.scaled(cfg.p_consonant), rng,
                           slot(Generator::Consonant), first_pass);
  if (!w.empty()) {
    auto* t = slot(Generator::Substitute);
    if (t && first_pass) ++t->eligible;
    if (rng.chance(cfg.scaled(cfg.p_subst_chr))) {
      const std::size_t pos = rng.index(w.size());
      w[pos] = with_case_of(
          w[pos], pick_other(kSloveneAlphabet, unicode::to_lower(w[pos]), rng));
      hit(t);
      ++fired;
    }
  }
  if (w.size() >= 2) {
    auto* t = slot(Generator::Delete);
    if (t && first_pass) ++t->eligible;
    if (rng.chance(cfg.scaled(cfg.p_del_chr))) {
      w.erase(rng.index(w.size()), 1);
      hit(t);
      ++fired;
    }
  }
  {
    auto* t = slot(Generator::Insert);
    if (t && first_pass) ++t->eligible;
    if (rng.chance(cfg.scaled(cfg.p_insert_chr))) {
      const std::size_t pos = rng.index(w.size() + 1);
      w.insert(w.begin() + static_cast<std::ptrdiff_t>(pos),
               kSloveneAlphabet[rng.index(kSloveneAlphabet.size())]);
      hit(t);
      ++fired;
    }
  }
  return fired;
}

}  // namespace detail

/// One pass of the five random character edits with (scaled) probabilities
/// p_vowel, p_consonant, p_subst_chr, p_del_chr, p_insert_chr. Vowel and
/// consonant swaps and substitutions always pick a different letter;
/// deletion never empties the word.
template <RandomSource Rng>
std::string random_char_edits(std::string_view word, Rng& rng,
                              const CorruptionConfig& cfg) {
  auto cps = utf8::decode(word);
  detail::random_edit_pass(cps, rng, cfg, nullptr, true);
  return utf8::encode(cps);
}

// ---------------------------------------------------------------------------
// Orchestration

/// Corrupts a sentence group given as word units, drawing from `rng`.
template <RandomSource Rng>
CorruptedSentence corrupt_units(const Lexicon& lex, const MischiefList& list,
                                const SwitchTable& table,
                                std::span<const std::vector<WordUnit>> sentences,
                                const CorruptionConfig& cfg, Rng& rng,
                                CorruptionTally* tally = nullptr) {
  cfg.validate();
  CorruptedSentence out;
  auto emit = [&](std::string word, Label label, Provenance prov,
                  std::size_t origin, std::size_t junction) {
    out.words.push_back(std::move(word));
    out.labels.push_back(static_cast<int>(label));
    out.provenance.push_back(prov);
    out.origin.push_back(origin);
    out.junction.push_back(junction);
  };
  auto slot = [&](Generator g) -> GeneratorTally* {
    return tally ? &(*tally)[g] : nullptr;
  };
  // Geometric repetition: apply while the gate keeps firing, at most
  // repeat_cap times.
  auto repeat = [&](GeneratorTally* t, double p, auto&& apply) {
    if (t) ++t->eligible;
    int n = 0;
    while (n < cfg.repeat_cap && rng.chance(p)) {
      apply();
      ++n;
    }
    if (t) {
      t->fired += n > 0 ? 1 : 0;
      t->applied += static_cast<std::uint64_t>(n);
    }
  };

  std::size_t base = 0;
  for (const auto& sentence : sentences) {
    for (const auto& u : sentence) out.source.push_back(u.render());
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      const WordUnit& u = sentence[i];
      const std::size_t src = base + i;

      if (utf8::length(u.core) >= 2) {
        auto* t = slot(Generator::Split);
        if (t) ++t->eligible;
        if (rng.chance(cfg.scaled(cfg.p_word_split))) {
          if (t) ++t->fired;
          if (auto halves = split_word(lex, u.core, rng, cfg)) {
            if (t) ++t->applied;
            emit(u.prefix + halves->first, Label::JoinWithNeighbor,
                 Provenance::Split, src, 0);
            emit(halves->second + u.suffix, Label::JoinWithNeighbor,
                 Provenance::Split, src, 0);
            continue;
          }
        }
      }

      if (i + 1 < sentence.size() && u.suffix.empty() && sentence[i + 1].prefix.empty()) {
        const WordUnit& next = sentence[i + 1];
        auto* t = slot(Generator::Concat);
        if (t) ++t->eligible;
        if (rng.chance(cfg.scaled(cfg.p_conc))) {
          if (t) ++t->fired;
          if (auto joined = concat_words(lex, u.core, next.core, rng, cfg)) {
            if (t) ++t->applied;
            const std::size_t junction = u.prefix.size() + u.core.size();
            emit(u.prefix + *joined + next.suffix, Label::SplitIntoTwo,
                 Provenance::Concat, src, junction);
            ++i;
            continue;
          }
        }
      }

      std::string word = u.core;
      Provenance prov = Provenance::None;
      auto note = [&](Provenance p) {
        if (prov == Provenance::None && word != u.core) prov = p;
      };

      if (list.lookup(word) != nullptr) {
        auto* t = slot(Generator::Mischief);
        if (t) ++t->eligible;
        if (rng.chance(cfg.scaled(cfg.p_mischief))) {
          if (auto v = apply_mischief(list, word, rng)) {
            word = std::move(*v);
            if (t) {
              ++t->fired;
              ++t->applied;
            }
          }
        }
        note(Provenance::Mischief);
      }

      repeat(slot(Generator::Switch), cfg.scaled(cfg.p_switch_chr), [&] {
        word = switch_characters(table, word, rng, cfg.switch_positions_per_word);
      });
      note(Provenance::Switch);

      if (has_caron(word)) {
        repeat(slot(Generator::Caron), cfg.scaled(cfg.p_caron),
               [&] { word = strip_carons(word); });
        note(Provenance::Caron);
      }

      auto cps = utf8::decode(word);
      for (int pass = 0; pass < cfg.repeat_cap; ++pass) {
        if (detail::random_edit_pass(cps, rng, cfg, tally, pass == 0) == 0) break;
      }
      word = utf8::encode(cps);
      note(Provenance::RandomChar);

      const bool changed = word != u.core;
      emit(u.prefix + word + u.suffix, changed ? Label::Misspelled : Label::Correct,
           changed ? prov : Provenance::None, src, 0);
    }
    base += sentence.size();
    out.sentence_ends.push_back(out.words.size());
  }
  return out;
}

/// Corrupts a sentence group with the group's own stream, seeded from
/// cfg.seed XOR group_index, so groups can be processed in any order.
inline CorruptedSentence corrupt_sentence_group(
    const Lexicon& lex, const MischiefList& list, const SwitchTable& table,
    std::span<const std::vector<WordUnit>> sentences, const CorruptionConfig& cfg,
    std::uint64_t group_index = 0, CorruptionTally* tally = nullptr) {
  auto rng = RandomStream::for_group(cfg.seed, group_index);
  return corrupt_units(lex, list, table, sentences, cfg, rng, tally);
}

/// Single-sentence convenience overload over bare words.
inline CorruptedSentence corrupt_sentence_group(
    const Lexicon& lex, const MischiefList& list, const SwitchTable& table,
    std::span<const std::string> words, const CorruptionConfig& cfg,
    std::uint64_t group_index = 0, CorruptionTally* tally = nullptr) {
  std::vector<std::vector<WordUnit>> one(1);
  for (const auto& w : words) one[0].push_back(WordUnit{{}, w, {}});
  return corrupt_sentence_group(lex, list, table, one, cfg, group_index, tally);
}

// ---------------------------------------------------------------------------
// Interchange

/// {"src", "out", "labels", "prov", "sent_ends"}
inline nlohmann::ordered_json to_json(const CorruptedSentence& c) {
  nlohmann::ordered_json j;
  j["src"] = c.source;
  j["out"] = c.words;
  j["labels"] = c.labels;
  auto& prov = j["prov"] = nlohmann::ordered_json::array();
  for (auto p : c.provenance) prov.push_back(to_string(p));
  j["sent_ends"] = c.sentence_ends;
  return j;
}

/// Parses a corrupt-output record. origin/junction are not part of the
/// interchange format and are left empty.
inline CorruptedSentence corrupted_from_json(const nlohmann::json& j,
                                             const std::string& where) {
  auto fail = [&](const std::string& msg) { throw FormatError(where + msg); };
  if (!j.is_object()) fail("record is not a JSON object");
  CorruptedSentence c;
  try {
    c.source = j.at("src").get<std::vector<std::string>>();
    c.words = j.at("out").get<std::vector<std::string>>();
    c.labels = j.at("labels").get<std::vector<int>>();
    for (const auto& p : j.at("prov")) {
      auto v = provenance_from_string(p.get<std::string>());
      if (!v) fail("unknown provenance '" + p.get<std::string>() + "'");
      c.provenance.push_back(*v);
    }
    if (j.contains("sent_ends"))
      c.sentence_ends = j.at("sent_ends").get<std::vector<std::size_t>>();
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("bad corrupt record: ") + e.what());
  }
  if (c.labels.size() != c.words.size() || c.provenance.size() != c.words.size())
    fail("out/labels/prov lengths differ (" + std::to_string(c.words.size()) + "/" +
         std::to_string(c.labels.size()) + "/" + std::to_string(c.provenance.size()) + ")");
  for (int l : c.labels)
    if (l < 0 || l > 3) fail("label out of range: " + std::to_string(l));
  if (c.sentence_ends.empty() && !c.words.empty())
    c.sentence_ends.push_back(c.words.size());
  return c;
}

}  // namespace slospell
