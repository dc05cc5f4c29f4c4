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

#include <string>
#include <string_view>

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "slospell/error.hpp"
#include "slospell/utf8.hpp"

// Thin wrappers over ICU for the handful of Unicode services the library
// needs: NFC, lowercasing, and character classes.
namespace slospell::unicode {

inline bool is_letter(char32_t c) noexcept { return u_isalpha(c) != 0; }

inline bool is_mark(char32_t c) noexcept {
  return (U_GET_GC_MASK(c) & U_GC_M_MASK) != 0;
}

inline bool is_digit(char32_t c) noexcept { return u_isdigit(c) != 0; }

inline bool is_punct(char32_t c) noexcept { return u_ispunct(c) != 0; }

inline bool is_space(char32_t c) noexcept { return u_isUWhiteSpace(c) != 0; }

inline bool is_upper(char32_t c) noexcept {
  return u_isupper(c) != 0 || u_istitle(c) != 0;
}

inline bool is_lower(char32_t c) noexcept { return u_islower(c) != 0; }

inline char32_t to_lower(char32_t c) noexcept {
  return static_cast<char32_t>(u_tolower(static_cast<UChar32>(c)));
}

inline char32_t to_upper(char32_t c) noexcept {
  return static_cast<char32_t>(u_toupper(static_cast<UChar32>(c)));
}

namespace detail {

inline const icu::Normalizer2& nfc_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const auto* n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || n == nullptr)
    throw Error(std::string("ICU NFC normalizer unavailable: ") +
                u_errorName(status));
  return *n;
}

inline std::string to_utf8(const icu::UnicodeString& u) {
  std::string out;
  u.toUTF8String(out);
  return out;
}

}  // namespace detail

/// NFC-normalizes valid UTF-8. ASCII input is returned unchanged.
inline std::string nfc(std::string_view s) {
  if (utf8::is_ascii(s)) return std::string(s);
  static const icu::Normalizer2& norm = detail::nfc_instance();
  const auto u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
  UErrorCode status = U_ZERO_ERROR;
  if (norm.isNormalized(u, status) && U_SUCCESS(status)) return std::string(s);
  status = U_ZERO_ERROR;
  const auto out = norm.normalize(u, status);
  if (U_FAILURE(status))
    throw Error(std::string("NFC normalization failed: ") +
                u_errorName(status));
  return detail::to_utf8(out);
}

/// Full (locale-independent) lowercase mapping.
inline std::string lower(std::string_view s) {
  if (utf8::is_ascii(s)) {
    std::string out(s);
    for (auto& c : out)
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
  }
  auto u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
  u.toLower(icu::Locale::getRoot());
  return detail::to_utf8(u);
}

enum class Casing {
  Uncased,  // no cased letters at all
  Lower,
  Title,  // first letter upper, the rest lower
  Upper,  // every cased letter upper, at least two cased letters
  Mixed,
};

/// Classifies the letter case shape of valid UTF-8 text.
inline Casing casing(std::string_view s) {
  std::size_t upper = 0, lower = 0;
  bool first_cased_is_upper = false;
  bool seen_cased = false;
  bool first_char_cased = false;
  bool first = true;
  for (char32_t c : utf8::decode(s)) {
    const bool up = is_upper(c);
    const bool lo = is_lower(c);
    if (first) {
      first_char_cased = up || lo;
      first = false;
    }
    if (!up && !lo) continue;
    if (!seen_cased) {
      first_cased_is_upper = up;
      seen_cased = true;
    }
    up ? ++upper : ++lower;
  }
  if (upper == 0 && lower == 0) return Casing::Uncased;
  if (upper == 0) return Casing::Lower;
  if (upper == 1 && first_cased_is_upper && first_char_cased)
    return Casing::Title;
  if (lower == 0) return Casing::Upper;
  return Casing::Mixed;
}

}  // namespace slospell::unicode
