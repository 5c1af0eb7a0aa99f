//
// Copyright 2026 The REDA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "reda/text_model.h"

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reda/error.h"

namespace reda {

const char* LanguageModeName(LanguageMode mode) {
  return mode == LanguageMode::kChinese ? "zh" : "en";
}

LanguageMode ParseLanguageMode(std::string_view name) {
  if (name == "en" || name == "english") return LanguageMode::kEnglish;
  if (name == "zh" || name == "chinese") return LanguageMode::kChinese;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown language '" + std::string(name) + "'");
}

namespace utf8 {

char32_t Next(std::string_view text, std::size_t& pos) {
  const auto lead = static_cast<unsigned char>(text[pos]);
  std::size_t extra = 0;
  char32_t cp = 0;
  if (lead < 0x80) {
    ++pos;
    return lead;
  } else if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    ++pos;
    return 0xFFFD;
  }
  if (pos + extra >= text.size()) {
    ++pos;
    return 0xFFFD;
  }
  for (std::size_t k = 1; k <= extra; ++k) {
    const auto cont = static_cast<unsigned char>(text[pos + k]);
    if ((cont & 0xC0) != 0x80) {
      ++pos;
      return 0xFFFD;
    }
    cp = (cp << 6) | (cont & 0x3F);
  }
  pos += extra + 1;
  return cp;
}

std::size_t CountCodePoints(std::string_view text) {
  std::size_t count = 0;
  for (std::size_t pos = 0; pos < text.size(); ++count) Next(text, pos);
  return count;
}

bool IsWhitespace(char32_t c) {
  if (c == ' ' || (c >= 0x09 && c <= 0x0D)) return true;
  switch (c) {
    case 0x85:
    case 0xA0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

namespace {

bool InRange(char32_t c, char32_t lo, char32_t hi) {
  return c >= lo && c <= hi;
}

// Non-ASCII punctuation and symbol blocks. Everything else outside ASCII is
// treated as a letter.
bool IsNonAsciiSymbol(char32_t c) {
  if (InRange(c, 0x80, 0xBF)) return c != 0xAA && c != 0xB5 && c != 0xBA;
  if (c == 0xD7 || c == 0xF7) return true;
  if (InRange(c, 0x2000, 0x206F) || InRange(c, 0x20A0, 0x20CF) ||
      InRange(c, 0x2100, 0x214F) || InRange(c, 0x2190, 0x2BFF) ||
      InRange(c, 0x2E00, 0x2E7F)) {
    return true;
  }
  if (InRange(c, 0x3000, 0x303F)) return c < 0x3005 || c > 0x3007;
  if (InRange(c, 0xFE10, 0xFE1F) || InRange(c, 0xFE30, 0xFE6F)) return true;
  if (InRange(c, 0xFF01, 0xFF0F) || InRange(c, 0xFF1A, 0xFF20) ||
      InRange(c, 0xFF3B, 0xFF40) || InRange(c, 0xFF5B, 0xFF65)) {
    return true;
  }
  if (c == 0xFFFD) return true;
  return InRange(c, 0x1F000, 0x1FAFF);
}

}  // namespace

bool IsWordChar(char32_t c) {
  if (c < 0x80) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '\'' || c == '-';
  }
  return !IsWhitespace(c) && !IsNonAsciiSymbol(c);
}

}  // namespace utf8

bool IsPunctuationToken(std::string_view token) {
  if (token.empty()) return false;
  for (std::size_t pos = 0; pos < token.size();) {
    if (utf8::IsWordChar(utf8::Next(token, pos))) return false;
  }
  return true;
}

void SegmentationDictionary::Add(std::string_view word) {
  if (word.empty()) return;
  words_.emplace(word);
  max_word_chars_ = std::max(max_word_chars_, utf8::CountCodePoints(word));
}

bool SegmentationDictionary::Contains(std::string_view word) const {
  return words_.find(std::string(word)) != words_.end();
}

Tokenizer::Tokenizer(LanguageMode mode,
                     std::shared_ptr<const SegmentationDictionary> dictionary)
    : mode_(mode), dictionary_(std::move(dictionary)) {}

TokenSeq Tokenizer::Tokenize(std::string_view text) const {
  TokenSeq seq = mode_ == LanguageMode::kChinese ? TokenizeChinese(text)
                                                 : TokenizeEnglish(text);
  if (seq.empty()) {
    throw Error(ErrorCode::kEmptyText, "text is empty or whitespace-only");
  }
  return seq;
}

TokenSeq Tokenizer::TokenizeEnglish(std::string_view text) const {
  TokenSeq seq;
  seq.mode = LanguageMode::kEnglish;
  std::size_t run_start = std::string_view::npos;
  auto flush = [&](std::size_t end) {
    if (run_start == std::string_view::npos) return;
    seq.tokens.emplace_back(text.substr(run_start, end - run_start));
    seq.word_flags.push_back(true);
    run_start = std::string_view::npos;
  };
  for (std::size_t pos = 0; pos < text.size();) {
    const std::size_t start = pos;
    const char32_t c = utf8::Next(text, pos);
    if (utf8::IsWordChar(c)) {
      if (run_start == std::string_view::npos) run_start = start;
      continue;
    }
    flush(start);
    if (!utf8::IsWhitespace(c)) {
      seq.tokens.emplace_back(text.substr(start, pos - start));
      seq.word_flags.push_back(false);
    }
  }
  flush(text.size());
  return seq;
}

TokenSeq Tokenizer::TokenizeChinese(std::string_view text) const {
  // Whitespace-free character stream plus code point boundaries into it.
  std::string stream;
  std::vector<std::size_t> bounds;
  for (std::size_t pos = 0; pos < text.size();) {
    const std::size_t start = pos;
    if (utf8::IsWhitespace(utf8::Next(text, pos))) continue;
    bounds.push_back(stream.size());
    stream.append(text.substr(start, pos - start));
  }
  bounds.push_back(stream.size());

  TokenSeq seq;
  seq.mode = LanguageMode::kChinese;
  const std::size_t chars = bounds.size() - 1;
  const std::size_t longest = dictionary_ ? dictionary_->max_word_chars() : 1;
  const std::string_view view = stream;
  for (std::size_t i = 0; i < chars;) {
    std::size_t take = 1;
    for (std::size_t len = std::min(longest, chars - i); len > 1; --len) {
      if (dictionary_->Contains(
              view.substr(bounds[i], bounds[i + len] - bounds[i]))) {
        take = len;
        break;
      }
    }
    std::string token(view.substr(bounds[i], bounds[i + take] - bounds[i]));
    seq.word_flags.push_back(!IsPunctuationToken(token));
    seq.tokens.push_back(std::move(token));
    i += take;
  }
  return seq;
}

TokenSeq Tokenize(std::string_view text, LanguageMode mode) {
  return Tokenizer(mode).Tokenize(text);
}

std::string Detokenize(const TokenSeq& seq) {
  std::string out;
  const bool spaced = seq.mode == LanguageMode::kEnglish;
  for (std::size_t i = 0; i < seq.tokens.size(); ++i) {
    if (spaced && i > 0) out.push_back(' ');
    out += seq.tokens[i];
  }
  return out;
}

}  // namespace reda
