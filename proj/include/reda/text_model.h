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

#ifndef REDA_TEXT_MODEL_H_
#define REDA_TEXT_MODEL_H_

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace reda {

enum class LanguageMode { kEnglish, kChinese };

const char* LanguageModeName(LanguageMode mode);
// Accepts "en"/"english" and "zh"/"chinese".
LanguageMode ParseLanguageMode(std::string_view name);

// A tokenized text. word_flags[i] is false for tokens made only of
// punctuation or symbol characters; such tokens are never lexicon targets.
struct TokenSeq {
  std::vector<std::string> tokens;
  std::vector<bool> word_flags;
  LanguageMode mode = LanguageMode::kEnglish;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }

  friend bool operator==(const TokenSeq&, const TokenSeq&) = default;
};

// Word list used by forward maximum matching in Chinese mode.
class SegmentationDictionary {
 public:
  SegmentationDictionary() = default;

  void Add(std::string_view word);
  bool Contains(std::string_view word) const;
  // Longest entry, in code points.
  std::size_t max_word_chars() const { return max_word_chars_; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
  std::size_t max_word_chars_ = 0;
};

// Splits text into tokens without any normalization: punctuation and stop
// words are kept, case is untouched.
//
// English: maximal runs of letters, digits, apostrophes and hyphens form word
// tokens; every other non-whitespace character is its own token.
// Chinese: whitespace is discarded and the remaining characters are segmented
// by forward maximum matching against the dictionary, falling back to single
// characters.
//
// Immutable after construction and safe to share across threads.
class Tokenizer {
 public:
  explicit Tokenizer(
      LanguageMode mode,
      std::shared_ptr<const SegmentationDictionary> dictionary = nullptr);

  // Throws Error(kEmptyText) for empty or whitespace-only input.
  TokenSeq Tokenize(std::string_view text) const;

  LanguageMode mode() const { return mode_; }

 private:
  TokenSeq TokenizeEnglish(std::string_view text) const;
  TokenSeq TokenizeChinese(std::string_view text) const;

  LanguageMode mode_;
  std::shared_ptr<const SegmentationDictionary> dictionary_;
};

// Dictionary-free tokenization. Chinese text falls back to one token per
// character.
TokenSeq Tokenize(std::string_view text, LanguageMode mode);

// English joins tokens with single spaces; Chinese concatenates them.
std::string Detokenize(const TokenSeq& seq);

// True when every character of the token is punctuation or a symbol.
bool IsPunctuationToken(std::string_view token);

namespace utf8 {

// Decodes one code point starting at text[pos] and advances pos. Invalid
// bytes decode as U+FFFD and consume one byte.
char32_t Next(std::string_view text, std::size_t& pos);
std::size_t CountCodePoints(std::string_view text);
bool IsWhitespace(char32_t c);
// Letters, digits, apostrophe, hyphen.
bool IsWordChar(char32_t c);

}  // namespace utf8

}  // namespace reda

#endif  // REDA_TEXT_MODEL_H_
