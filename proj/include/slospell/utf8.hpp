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
#include <cstdint>
#include <string>
#include <string_view>

#include "slospell/error.hpp"

// Strict UTF-8 codec: rejects overlong forms, surrogates and code points
// above U+10FFFF.
namespace slospell::utf8 {

namespace detail {

// Decodes one code point starting at s[i]. Returns the sequence length, or 0
// on malformed input (with `why` set).
inline std::size_t decode_one(std::string_view s, std::size_t i, char32_t& cp,
                              const char*& why) noexcept {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    cp = b0;
    return 1;
  }
  std::size_t len;
  char32_t min;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    min = 0x80;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    min = 0x800;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    min = 0x10000;
    cp = b0 & 0x07;
  } else {
    why = "invalid lead byte";
    return 0;
  }
  if (i + len > s.size()) {
    why = "truncated sequence";
    return 0;
  }
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) {
      why = "invalid continuation byte";
      return 0;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min) {
    why = "overlong encoding";
    return 0;
  }
  if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    why = "code point out of range";
    return 0;
  }
  return len;
}

}  // namespace detail

inline void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

/// Throws DecodeError naming `base_offset` plus the local byte offset of the
/// first malformed sequence.
inline void validate(std::string_view s, std::size_t base_offset = 0) {
  char32_t cp;
  const char* why = nullptr;
  for (std::size_t i = 0; i < s.size();) {
    if (static_cast<unsigned char>(s[i]) < 0x80) {
      ++i;
      continue;
    }
    const auto n = detail::decode_one(s, i, cp, why);
    if (n == 0) throw DecodeError(base_offset + i, why);
    i += n;
  }
}

inline bool is_valid(std::string_view s) noexcept {
  char32_t cp;
  const char* why = nullptr;
  for (std::size_t i = 0; i < s.size();) {
    const auto n = detail::decode_one(s, i, cp, why);
    if (n == 0) return false;
    i += n;
  }
  return true;
}

inline std::u32string decode(std::string_view s, std::size_t base_offset = 0) {
  std::u32string out;
  out.reserve(s.size());
  char32_t cp;
  const char* why = nullptr;
  for (std::size_t i = 0; i < s.size();) {
    const auto n = detail::decode_one(s, i, cp, why);
    if (n == 0) throw DecodeError(base_offset + i, why);
    out.push_back(cp);
    i += n;
  }
  return out;
}

inline std::string encode(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) append(out, cp);
  return out;
}

/// Number of code points; `s` must be valid.
inline std::size_t length(std::string_view s) noexcept {
  std::size_t n = 0;
  for (char c : s)
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  return n;
}

inline bool is_ascii(std::string_view s) noexcept {
  for (char c : s)
    if (static_cast<unsigned char>(c) >= 0x80) return false;
  return true;
}

}  // namespace slospell::utf8
