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
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "slospell/lexicon.hpp"
#include "slospell/unicode.hpp"
#include "slospell/utf8.hpp"

namespace slospell {

enum class TokenKind { Word, Number, Url, Punctuation, Symbol };

inline const char* to_string(TokenKind k) {
  switch (k) {
    case TokenKind::Word: return "word";
    case TokenKind::Number: return "number";
    case TokenKind::Url: return "url";
    case TokenKind::Punctuation: return "punct";
    case TokenKind::Symbol: return "symbol";
  }
  return "?";
}

/// A classified span of the source text. Offsets and lengths count code
/// points; byte_offset indexes the UTF-8 source.
struct Token {
  std::string text;
  TokenKind kind = TokenKind::Symbol;
  std::size_t char_offset = 0;
  std::size_t char_length = 0;
  std::size_t byte_offset = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

namespace detail {

inline bool is_word_joiner(char32_t c) {
  return c == U'\'' || c == U'’' || c == U'-' || c == U'‐' ||
         c == U'‑';
}

inline bool starts_with_ci(std::u32string_view s, std::size_t i,
                           std::u32string_view prefix) {
  if (s.size() - i < prefix.size()) return false;
  for (std::size_t k = 0; k < prefix.size(); ++k)
    if (unicode::to_lower(s[i + k]) != prefix[k]) return false;
  return true;
}

// End of a URL starting at i, or i if none. A URL runs to the next
// whitespace and needs at least one character after its prefix.
inline std::size_t match_url(std::u32string_view s, std::size_t i) {
  std::size_t prefix = 0;
  for (std::u32string_view p : {U"https://", U"http://", U"www."}) {
    if (starts_with_ci(s, i, p)) {
      prefix = p.size();
      break;
    }
  }
  if (prefix == 0) return i;
  std::size_t j = i + prefix;
  while (j < s.size() && !unicode::is_space(s[j])) ++j;
  return j > i + prefix ? j : i;
}

// Digit run, optionally one decimal separator followed by digits, optionally
// an ordinal period ("1. maja": period followed by whitespace and a
// lowercase letter).
inline std::size_t match_number(std::u32string_view s, std::size_t i) {
  std::size_t j = i;
  while (j < s.size() && unicode::is_digit(s[j])) ++j;
  if (j == i) return i;
  bool decimal = false;
  if (j + 1 < s.size() && (s[j] == U',' || s[j] == U'.') &&
      unicode::is_digit(s[j + 1])) {
    ++j;
    while (j < s.size() && unicode::is_digit(s[j])) ++j;
    decimal = true;
  }
  if (!decimal && j < s.size() && s[j] == U'.') {
    std::size_t k = j + 1;
    if (k < s.size() && unicode::is_space(s[k])) {
      while (k < s.size() && unicode::is_space(s[k])) ++k;
      if (k < s.size() && unicode::is_lower(s[k])) ++j;
    }
  }
  return j;
}

// Letters and combining marks, with apostrophes/hyphens allowed strictly
// between letters.
inline std::size_t match_word(std::u32string_view s, std::size_t i) {
  if (!unicode::is_letter(s[i])) return i;
  std::size_t j = i + 1;
  while (j < s.size()) {
    if (unicode::is_letter(s[j]) || unicode::is_mark(s[j])) {
      ++j;
    } else if (is_word_joiner(s[j]) && j + 1 < s.size() &&
               unicode::is_letter(s[j + 1])) {
      j += 2;
    } else {
      break;
    }
  }
  return j;
}

}  // namespace detail

/// Splits text into tokens. Whitespace separates tokens and is dropped;
/// every other character belongs to exactly one token. At each position
/// the first matching class wins: URL, number, word, then a single
/// punctuation or symbol character.
inline std::vector<Token> tokenize(std::string_view text) {
  const std::u32string cps = utf8::decode(text);
  std::vector<std::size_t> bytes(cps.size() + 1, 0);
  for (std::size_t i = 0, b = 0; i < cps.size(); ++i) {
    bytes[i] = b;
    const char32_t c = cps[i];
    b += c < 0x80 ? 1 : c < 0x800 ? 2 : c < 0x10000 ? 3 : 4;
    bytes[i + 1] = b;
  }

  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < cps.size()) {
    const char32_t c = cps[i];
    if (unicode::is_space(c)) {
      ++i;
      continue;
    }
    TokenKind kind;
    std::size_t end;
    if ((end = detail::match_url(cps, i)) > i) {
      kind = TokenKind::Url;
    } else if ((end = detail::match_number(cps, i)) > i) {
      kind = TokenKind::Number;
    } else if ((end = detail::match_word(cps, i)) > i) {
      kind = TokenKind::Word;
    } else {
      end = i + 1;
      kind = unicode::is_punct(c) ? TokenKind::Punctuation : TokenKind::Symbol;
    }
    tokens.push_back(Token{std::string(text.substr(bytes[i], bytes[end] - bytes[i])),
                           kind, i, end - i, bytes[i]});
    i = end;
  }
  return tokens;
}

enum class Verdict { Correct, Flagged };

enum class Reason {
  ExceptionNumber,
  ExceptionUrl,
  ExceptionPunct,
  ExceptionSymbol,
  InLexicon,
  NotInLexicon,
};

inline const char* to_string(Reason r) {
  switch (r) {
    case Reason::ExceptionNumber: return "number";
    case Reason::ExceptionUrl: return "url";
    case Reason::ExceptionPunct: return "punct";
    case Reason::ExceptionSymbol: return "symbol";
    case Reason::InLexicon: return "in-lexicon";
    case Reason::NotInLexicon: return "not-in-lexicon";
  }
  return "?";
}

struct CheckResult {
  Token token;
  Verdict verdict = Verdict::Correct;
  Reason reason = Reason::InLexicon;

  bool flagged() const noexcept { return verdict == Verdict::Flagged; }

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

/// Judges one token in isolation. Numbers, URLs, punctuation and symbols are
/// always accepted; words are accepted iff the lexicon contains them.
inline CheckResult check_word(const Lexicon& lex, Token token) {
  Reason reason = Reason::ExceptionSymbol;
  switch (token.kind) {
    case TokenKind::Number: reason = Reason::ExceptionNumber; break;
    case TokenKind::Url: reason = Reason::ExceptionUrl; break;
    case TokenKind::Punctuation: reason = Reason::ExceptionPunct; break;
    case TokenKind::Symbol: break;
    case TokenKind::Word:
      reason = lex.contains(token.text) ? Reason::InLexicon
                                        : Reason::NotInLexicon;
      break;
  }
  const auto verdict =
      reason == Reason::NotInLexicon ? Verdict::Flagged : Verdict::Correct;
  return CheckResult{std::move(token), verdict, reason};
}

inline std::vector<CheckResult> check_text(const Lexicon& lex,
                                           std::string_view text) {
  std::vector<CheckResult> out;
  for (auto& tok : tokenize(text)) out.push_back(check_word(lex, std::move(tok)));
  return out;
}

/// True when any word inside `unit` is flagged. Used to score a
/// whitespace-free unit such as "spi." as a single prediction.
inline bool is_flagged(const Lexicon& lex, std::string_view unit) {
  for (const auto& r : check_text(lex, unit))
    if (r.flagged()) return true;
  return false;
}

/// Line-delimited record {"w", "off", "len", "flag"}; `base` shifts the
/// code-point offset (e.g. to the start of the current input line).
inline nlohmann::ordered_json to_json(const CheckResult& r, std::size_t base = 0) {
  nlohmann::ordered_json j;
  j["w"] = r.token.text;
  j["off"] = base + r.token.char_offset;
  j["len"] = r.token.char_length;
  j["flag"] = r.flagged() ? 1 : 0;
  return j;
}

}  // namespace slospell
