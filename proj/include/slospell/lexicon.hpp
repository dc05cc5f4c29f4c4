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
#include <filesystem>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>

#include "slospell/error.hpp"
#include "slospell/unicode.hpp"
#include "slospell/utf8.hpp"

namespace slospell {

class Lexicon;
inline Lexicon load_lexicon(std::istream& in,
                            std::string source_name = "<stream>");

/// Immutable set of valid word forms.
///
/// Forms are stored NFC-normalized. A query first looks up the normalized
/// form as-is; if that misses and the form is Titlecase or ALL-CAPS, its
/// lowercase version is looked up as well. Mixed-case forms ("mAčKa") get no
/// second chance.
///
/// Safe to share between threads once constructed.
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::string source_name) : source_(std::move(source_name)) {}

  /// Builds a lexicon from already-clean forms (tests, programmatic use).
  /// Forms are NFC-normalized; empty forms or forms with whitespace throw.
  template <class Range>
  static Lexicon from_forms(const Range& forms,
                            std::string source_name = "<memory>") {
    Lexicon lex(std::move(source_name));
    for (const auto& f : forms) lex.insert(std::string_view(f));
    return lex;
  }

  bool contains(std::string_view form) const {
    if (form.empty() || forms_.empty()) return false;
    if (!utf8::is_valid(form)) return false;
    const std::string norm = unicode::nfc(form);
    if (forms_.count(norm) != 0) return true;
    const auto shape = unicode::casing(norm);
    if (shape == unicode::Casing::Title || shape == unicode::Casing::Upper)
      return forms_.count(unicode::lower(norm)) != 0;
    return false;
  }

  std::size_t form_count() const noexcept { return forms_.size(); }
  const std::string& source_name() const noexcept { return source_; }

  const std::unordered_set<std::string>& forms() const noexcept {
    return forms_;
  }

 private:
  friend Lexicon load_lexicon(std::istream&, std::string);

  void insert(std::string_view form) {
    utf8::validate(form);
    if (form.empty()) throw FormatError("empty word form");
    for (char32_t c : utf8::decode(form))
      if (unicode::is_space(c))
        throw FormatError("word form contains whitespace: '" +
                          std::string(form) + "'");
    forms_.insert(unicode::nfc(form));
  }

  std::unordered_set<std::string> forms_;
  std::string source_;
};

namespace detail {

inline std::string_view trim_ascii(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\v\f";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace detail

/// Reads a one-form-per-line UTF-8 word list.
///
/// Lines are trimmed; blank lines and lines starting with '#' are skipped;
/// LF and CRLF endings are accepted; duplicates collapse. A leading byte
/// order mark is ignored. Invalid UTF-8 throws DecodeError with the byte
/// offset in the stream. A form containing inner whitespace throws
/// FormatError with the line number.
inline Lexicon load_lexicon(std::istream& in, std::string source_name) {
  Lexicon lex(std::move(source_name));
  std::string line;
  std::size_t offset = 0;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    std::size_t skip = 0;
    if (lineno == 1 && view.substr(0, 3) == "\xEF\xBB\xBF") skip = 3;
    utf8::validate(view.substr(skip), offset + skip);
    const std::size_t consumed = line.size() + 1;
    const auto form = detail::trim_ascii(view.substr(skip));
    offset += consumed;
    if (form.empty() || form.front() == '#') continue;
    try {
      lex.insert(form);
    } catch (const FormatError& e) {
      throw FormatError(at_line(lex.source_name(), lineno) + e.what());
    }
  }
  return lex;
}

inline Lexicon load_lexicon_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open lexicon file: " + path.string());
  return load_lexicon(in, path.string());
}

}  // namespace slospell
