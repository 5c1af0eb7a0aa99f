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

#ifndef REDA_SYNONYM_LEXICON_H_
#define REDA_SYNONYM_LEXICON_H_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "reda/text_model.h"

namespace reda {

// Headword -> synonyms map backing synonym replacement and random insertion.
//
// Invariants: no list contains its own headword, no list is empty, and every
// string is non-empty and whitespace-free. Lookups are exact and
// case-sensitive.
class SynonymLexicon {
 public:
  explicit SynonymLexicon(LanguageMode language = LanguageMode::kEnglish)
      : language_(language) {}

  // Merges synonyms into the entry for headword, dropping self references and
  // duplicates. Throws Error(kInvalidArgument) for empty or whitespace-bearing
  // strings.
  void Add(std::string_view headword, const std::vector<std::string>& synonyms);

  // Returns the stored list, or an empty list for unknown words.
  const std::vector<std::string>& SynonymsOf(std::string_view word) const;
  bool HasSynonyms(std::string_view word) const;

  // Word-token indices whose token has at least one synonym, ascending.
  std::vector<std::size_t> EligiblePositions(const TokenSeq& seq) const;

  // Headwords in first-appearance order.
  const std::vector<std::string>& headwords() const { return headwords_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  LanguageMode language() const { return language_; }

  // Headwords as a forward-maximum-matching dictionary for Chinese text.
  std::shared_ptr<const SegmentationDictionary> SegmentationWords() const;

  friend bool operator==(const SynonymLexicon& a, const SynonymLexicon& b) {
    return a.language_ == b.language_ && a.entries_ == b.entries_ &&
           a.headwords_ == b.headwords_;
  }

 private:
  LanguageMode language_;
  std::unordered_map<std::string, std::vector<std::string>> entries_;
  std::vector<std::string> headwords_;
};

// Parses the TSV lexicon format: "headword<TAB>syn1<TAB>syn2...". Lines
// starting with '#' and blank lines are skipped; duplicate headword lines are
// merged. Throws Error(kParse) with the line number for lines with fewer than
// two fields or with whitespace inside a field.
SynonymLexicon ParseLexicon(std::istream& in, LanguageMode language);

// Throws Error(kIo) if the file cannot be opened.
SynonymLexicon LoadLexicon(const std::filesystem::path& path,
                           LanguageMode language);

}  // namespace reda

#endif  // REDA_SYNONYM_LEXICON_H_
