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

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "slospell/lexicon.hpp"
#include "slospell/unicode.hpp"
#include "slospell/wordcheck.hpp"
#include "support/corpus.hpp"

namespace slospell {
namespace {

using Kinds = std::vector<TokenKind>;

std::vector<std::string> texts(const std::vector<Token>& toks) {
  std::vector<std::string> out;
  for (const auto& t : toks) out.push_back(t.text);
  return out;
}

Kinds kinds(const std::vector<Token>& toks) {
  Kinds out;
  for (const auto& t : toks) out.push_back(t.kind);
  return out;
}

TEST(Tokenize, SentenceWithFinalPeriod) {
  const auto t = tokenize("Mačka spi.");
  EXPECT_EQ(texts(t), (std::vector<std::string>{"Mačka", "spi", "."}));
  EXPECT_EQ(kinds(t), (Kinds{TokenKind::Word, TokenKind::Word, TokenKind::Punctuation}));
  EXPECT_EQ(t[1].char_offset, 6u);
  EXPECT_EQ(t[1].char_length, 3u);
  EXPECT_EQ(t[1].byte_offset, 7u);  // č is two bytes
}

TEST(Tokenize, Url) {
  const auto t = tokenize("glej https://example.si zdaj");
  EXPECT_EQ(kinds(t), (Kinds{TokenKind::Word, TokenKind::Url, TokenKind::Word}));
  EXPECT_EQ(t[1].text, "https://example.si");
  EXPECT_EQ(kinds(tokenize("www.rtvslo.si")), Kinds{TokenKind::Url});
  EXPECT_EQ(kinds(tokenize("WWW.RTVSLO.SI")), Kinds{TokenKind::Url});
  // A bare prefix is not a URL.
  EXPECT_EQ(kinds(tokenize("www.")).front(), TokenKind::Word);
}

TEST(Tokenize, NumberThenPeriodAtEnd) {
  const auto t = tokenize("leta 1991.");
  EXPECT_EQ(texts(t), (std::vector<std::string>{"leta", "1991", "."}));
  EXPECT_EQ(kinds(t), (Kinds{TokenKind::Word, TokenKind::Number, TokenKind::Punctuation}));
}

TEST(Tokenize, DecimalAndOrdinalNumbers) {
  EXPECT_EQ(texts(tokenize("3,14 in 2.5")),
            (std::vector<std::string>{"3,14", "in", "2.5"}));
  EXPECT_EQ(texts(tokenize("ob 8. uri")),
            (std::vector<std::string>{"ob", "8.", "uri"}));
  // Capitalized follower: the period ends a sentence instead.
  EXPECT_EQ(texts(tokenize("leta 1991. Potem")),
            (std::vector<std::string>{"leta", "1991", ".", "Potem"}));
  EXPECT_EQ(texts(tokenize("1.000.000")),
            (std::vector<std::string>{"1.000", ".", "000"}));
}

TEST(Tokenize, InternalHyphenAndApostrophe) {
  EXPECT_EQ(texts(tokenize("e-pošta")), std::vector<std::string>{"e-pošta"});
  EXPECT_EQ(texts(tokenize("rock'n'roll")), std::vector<std::string>{"rock'n'roll"});
  EXPECT_EQ(texts(tokenize("konec- ")), (std::vector<std::string>{"konec", "-"}));
  EXPECT_EQ(texts(tokenize("-začetek")), (std::vector<std::string>{"-", "začetek"}));
}

TEST(Tokenize, SymbolsAndPunctuation) {
  const auto t = tokenize("5 € + „citat“!");
  EXPECT_EQ(kinds(t), (Kinds{TokenKind::Number, TokenKind::Symbol, TokenKind::Symbol,
                             TokenKind::Punctuation, TokenKind::Word,
                             TokenKind::Punctuation, TokenKind::Punctuation}));
}

TEST(Tokenize, CombiningMarksStayInWord) {
  const std::string decomposed = "ma" "c\xCC\x8C" "ka";
  const auto t = tokenize(decomposed);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].text, decomposed);
  EXPECT_EQ(t[0].char_length, 6u);
}

TEST(Tokenize, EmptyAndWhitespace) {
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_TRUE(tokenize(" \t\n ").empty());
}

TEST(CheckWord, ExceptionsAndLexicon) {
  const std::vector<std::string> forms{"spi"};
  const auto lex = Lexicon::from_forms(forms);
  const auto num = check_word(lex, Token{"1991", TokenKind::Number, 0, 4, 0});
  EXPECT_EQ(num.verdict, Verdict::Correct);
  EXPECT_EQ(num.reason, Reason::ExceptionNumber);
  const auto ok = check_word(lex, Token{"spi", TokenKind::Word, 0, 3, 0});
  EXPECT_EQ(ok.verdict, Verdict::Correct);
  EXPECT_EQ(ok.reason, Reason::InLexicon);
  const auto bad = check_word(lex, Token{"spii", TokenKind::Word, 0, 4, 0});
  EXPECT_EQ(bad.verdict, Verdict::Flagged);
  EXPECT_EQ(bad.reason, Reason::NotInLexicon);
}

TEST(CheckText, MisspelledFirstWord) {
  const std::vector<std::string> forms{"mačka", "spi"};
  const auto lex = Lexicon::from_forms(forms);
  const auto r = check_text(lex, "Mečka spi");
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].verdict, Verdict::Flagged);
  EXPECT_EQ(r[1].verdict, Verdict::Correct);
  EXPECT_TRUE(check_text(lex, "").empty());
}

TEST(CheckText, ExceptionClasses) {
  const Lexicon empty;
  const auto r = check_text(empty, "www.rtvslo.si 42 !");
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].reason, Reason::ExceptionUrl);
  EXPECT_EQ(r[1].reason, Reason::ExceptionNumber);
  EXPECT_EQ(r[2].reason, Reason::ExceptionPunct);
  for (const auto& x : r) EXPECT_EQ(x.verdict, Verdict::Correct);
  EXPECT_EQ(check_text(empty, "#")[0].reason, Reason::ExceptionPunct);
  EXPECT_EQ(check_text(empty, "+")[0].reason, Reason::ExceptionSymbol);
}

TEST(CheckText, HyphenatedCompoundCheckedWhole) {
  const std::vector<std::string> forms{"črno", "bel"};
  const auto lex = Lexicon::from_forms(forms);
  EXPECT_TRUE(check_text(lex, "črno-bel")[0].flagged());
}

TEST(CheckResult, JsonRecord) {
  const std::vector<std::string> forms{"spi"};
  const auto lex = Lexicon::from_forms(forms);
  const auto r = check_text(lex, "Mečka spi");
  EXPECT_EQ(to_json(r[0]).dump(), R"({"w":"Mečka","off":0,"len":5,"flag":1})");
  EXPECT_EQ(to_json(r[1], 10).dump(), R"({"w":"spi","off":16,"len":3,"flag":0})");
}

// Random texts over letters, digits, punctuation, symbols, URLs and
// whitespace.
std::string random_text(std::mt19937& g) {
  static const std::vector<std::string> pieces{
      "a", "č", "Ž", "e", "k", "n", "1", "9", ",", ".", "!", "-", "'", "€", "+",
      " ", " ", " ", "\t", "www.x.si", "http://a.b", "c\xCC\x8C", "“", " "};
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::uniform_int_distribution<int> len(0, 40);
  std::string s;
  for (int i = 0, n = len(g); i < n; ++i) s += pieces[pick(g)];
  return s;
}

TEST(TokenizeProperty, ReconstructsSourceAndKeepsInvariants) {
  std::mt19937 g(5);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto text = random_text(g);
    const auto toks = tokenize(text);
    const auto cps = utf8::decode(text);
    std::size_t byte = 0, chr = 0;
    for (const auto& t : toks) {
      ASSERT_GE(t.byte_offset, byte);
      ASSERT_GE(t.char_offset, chr);
      for (char32_t c : utf8::decode(text.substr(byte, t.byte_offset - byte)))
        ASSERT_TRUE(unicode::is_space(c)) << text;
      ASSERT_EQ(text.substr(t.byte_offset, t.text.size()), t.text);
      ASSERT_GT(t.char_length, 0u);
      ASSERT_EQ(utf8::length(t.text), t.char_length);
      ASSERT_LE(t.char_offset + t.char_length, cps.size());
      if (t.kind == TokenKind::Word) {
        const auto cs = utf8::decode(t.text);
        ASSERT_TRUE(std::any_of(cs.begin(), cs.end(),
                                [](char32_t c) { return unicode::is_letter(c); }));
      }
      byte = t.byte_offset + t.text.size();
      chr = t.char_offset + t.char_length;
    }
    for (char32_t c : utf8::decode(text.substr(byte))) ASSERT_TRUE(unicode::is_space(c));
  }
}

TEST(CheckTextProperty, CompositionalAndContextFree) {
  std::mt19937 g(8);
  const auto vocab = testing_corpus::distinct_words(g, 200, U"abcčdeiklmnoprsštuvzž", 2, 8);
  const std::vector<std::string> in_lex(vocab.begin(), vocab.begin() + 100);
  const auto lex = Lexicon::from_forms(in_lex);
  const std::vector<std::string> extras{"1991", "3,5", ",", ".", "!", "€", "www.a.si",
                                        "https://b.org/x"};
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() + extras.size() - 1);
  std::uniform_int_distribution<int> len(1, 30);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::string> pieces;
    for (int i = 0, n = len(g); i < n; ++i) {
      const auto k = pick(g);
      pieces.push_back(k < vocab.size() ? vocab[k] : extras[k - vocab.size()]);
    }
    auto join = [](const std::vector<std::string>& ps) {
      std::string s;
      for (const auto& p : ps) s += (s.empty() ? "" : " ") + p;
      return s;
    };
    const auto text = join(pieces);
    const auto results = check_text(lex, text);
    const auto toks = tokenize(text);
    ASSERT_EQ(results.size(), toks.size());
    for (std::size_t i = 0; i < toks.size(); ++i)
      ASSERT_EQ(results[i], check_word(lex, toks[i]));

    std::vector<std::size_t> perm(pieces.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), g);
    std::vector<std::string> shuffled;
    for (auto p : perm) shuffled.push_back(pieces[p]);
    const auto permuted = check_text(lex, join(shuffled));
    ASSERT_EQ(permuted.size(), pieces.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
      ASSERT_EQ(permuted[i].verdict, results[perm[i]].verdict);
  }
}

TEST(CheckTextProperty, LexiconOnlyTextHasNoFlags) {
  std::mt19937 g(9);
  const auto vocab = testing_corpus::distinct_words(g, 300, U"abcčdeiklmnoprsštuvzž", 1, 9);
  const auto lex = Lexicon::from_forms(vocab);
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  for (int trial = 0; trial < 300; ++trial) {
    std::string text;
    for (int i = 0; i < 20; ++i) text += vocab[pick(g)] + (i % 5 == 4 ? ". " : " ");
    for (const auto& r : check_text(lex, text)) ASSERT_FALSE(r.flagged()) << r.token.text;
  }
}

}  // namespace
}  // namespace slospell
