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
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "slospell/error.hpp"
#include "slospell/lexicon.hpp"
#include "support/corpus.hpp"

namespace slospell {
namespace {

Lexicon from_text(const std::string& text) {
  std::istringstream in(text);
  return load_lexicon(in, "test");
}

TEST(LoadLexicon, CountsDistinctLines) {
  EXPECT_EQ(from_text("mačka\nspi\n").form_count(), 2u);
  EXPECT_EQ(from_text("spi\nspi\n").form_count(), 1u);
}

TEST(LoadLexicon, EmptyStreamGivesEmptyLexicon) {
  const auto lex = from_text("");
  EXPECT_EQ(lex.form_count(), 0u);
  EXPECT_FALSE(lex.contains("anything"));
}

TEST(LoadLexicon, TrimsCommentsCrlfAndBom) {
  const auto lex = from_text("\xEF\xBB\xBF" "avto\r\n# comment\r\n\r\n  spi \t\nna");
  EXPECT_EQ(lex.form_count(), 3u);
  EXPECT_TRUE(lex.contains("avto"));
  EXPECT_TRUE(lex.contains("spi"));
  EXPECT_TRUE(lex.contains("na"));
  EXPECT_FALSE(lex.contains("# comment"));
}

TEST(LoadLexicon, InvalidUtf8ReportsStreamOffset) {
  try {
    from_text("ab\ncd\xFF" "e\n");
    FAIL() << "expected DecodeError";
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.byte_offset(), 5u);
  }
}

TEST(LoadLexicon, InnerWhitespaceIsAFormatError) {
  try {
    from_text("ok\nnot ok\n");
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("test:2"), std::string::npos);
  }
}

TEST(LoadLexicon, MissingFileThrows) {
  EXPECT_THROW(load_lexicon_file("/nonexistent/lexicon.txt"), FormatError);
}

TEST(Contains, ExactAndCaseFallback) {
  const auto lex = from_text("mačka\n");
  EXPECT_TRUE(lex.contains("mačka"));
  EXPECT_TRUE(lex.contains("Mačka"));
  EXPECT_TRUE(lex.contains("MAČKA"));
  EXPECT_FALSE(lex.contains("mAčKa"));
  EXPECT_FALSE(lex.contains("mačkaa"));
  EXPECT_FALSE(lex.contains(""));
}

TEST(Contains, CapitalizedEntriesDoNotMatchLowercaseQueries) {
  const auto lex = from_text("Ljubljana\n");
  EXPECT_TRUE(lex.contains("Ljubljana"));
  EXPECT_FALSE(lex.contains("LJUBLJANA"));  // lowercase fallback only
  EXPECT_FALSE(lex.contains("ljubljana"));
}

TEST(Contains, NormalizationInvariant) {
  const std::string decomposed = "ma" "c\xCC\x8C" "ka";
  const auto lex = from_text(decomposed + "\n");
  EXPECT_TRUE(lex.contains("mačka"));
  EXPECT_TRUE(lex.contains(decomposed));
  EXPECT_EQ(lex.form_count(), 1u);
}

TEST(Contains, InvalidUtf8QueryIsAbsent) {
  const auto lex = from_text("a\n");
  EXPECT_FALSE(lex.contains("\xFF"));
}

// Every inserted form is found; strings that are neither inserted nor a
// Title/UPPER variant of an inserted form are not. Checked against a linear
// scan.
TEST(ContainsProperty, AgreesWithLinearScan) {
  std::mt19937 g(3);
  const std::u32string_view alphabet = U"abcčdeiklmnoprsštuvzž";
  for (int round = 0; round < 20; ++round) {
    const auto forms = testing_corpus::distinct_words(g, 500, alphabet, 1, 6);
    const auto lex = Lexicon::from_forms(forms);
    ASSERT_EQ(lex.form_count(), forms.size());
    for (const auto& f : forms) ASSERT_TRUE(lex.contains(f)) << f;
    for (int q = 0; q < 500; ++q) {
      const auto s = testing_corpus::random_word(g, alphabet, 1, 6);
      const bool scan = std::find(forms.begin(), forms.end(), s) != forms.end();
      ASSERT_EQ(lex.contains(s), scan) << s;
    }
  }
}

TEST(LoadLexicon, Idempotent) {
  const std::string text = "b\na\nc\nA\nč\n";
  const auto one = from_text(text);
  const auto two = from_text(text);
  EXPECT_EQ(one.forms(), two.forms());
  for (const char* q : {"a", "A", "B", "x", "Č", "č"})
    EXPECT_EQ(one.contains(q), two.contains(q)) << q;
}

}  // namespace
}  // namespace slospell
