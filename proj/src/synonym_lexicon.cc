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

#include "reda/synonym_lexicon.h"

#include <algorithm>
#include <fstream>
#include <string>
#include <vector>

#include "reda/error.h"

namespace reda {

namespace {

bool HasWhitespace(std::string_view s) {
  for (std::size_t pos = 0; pos < s.size();) {
    if (utf8::IsWhitespace(utf8::Next(s, pos))) return true;
  }
  return false;
}

std::string_view TrimSpaces(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

void SynonymLexicon::Add(std::string_view headword,
                         const std::vector<std::string>& synonyms) {
  if (headword.empty() || HasWhitespace(headword)) {
    throw Error(ErrorCode::kInvalidArgument,
                "invalid headword '" + std::string(headword) + "'");
  }
  std::vector<std::string> accepted;
  for (const std::string& synonym : synonyms) {
    if (synonym.empty() || HasWhitespace(synonym)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "invalid synonym '" + synonym + "'");
    }
    if (synonym != headword) accepted.push_back(synonym);
  }
  if (accepted.empty()) return;

  auto [it, inserted] = entries_.try_emplace(std::string(headword));
  if (inserted) headwords_.emplace_back(headword);
  std::vector<std::string>& list = it->second;
  for (std::string& synonym : accepted) {
    if (std::find(list.begin(), list.end(), synonym) == list.end()) {
      list.push_back(std::move(synonym));
    }
  }
}

const std::vector<std::string>& SynonymLexicon::SynonymsOf(
    std::string_view word) const {
  static const std::vector<std::string> kNone;
  auto it = entries_.find(std::string(word));
  return it == entries_.end() ? kNone : it->second;
}

bool SynonymLexicon::HasSynonyms(std::string_view word) const {
  return entries_.find(std::string(word)) != entries_.end();
}

std::vector<std::size_t> SynonymLexicon::EligiblePositions(
    const TokenSeq& seq) const {
  std::vector<std::size_t> positions;
  if (entries_.empty()) return positions;
  for (std::size_t i = 0; i < seq.tokens.size(); ++i) {
    if (seq.word_flags[i] && HasSynonyms(seq.tokens[i])) positions.push_back(i);
  }
  return positions;
}

std::shared_ptr<const SegmentationDictionary>
SynonymLexicon::SegmentationWords() const {
  auto dictionary = std::make_shared<SegmentationDictionary>();
  for (const std::string& headword : headwords_) dictionary->Add(headword);
  return dictionary;
}

SynonymLexicon ParseLexicon(std::istream& in, LanguageMode language) {
  SynonymLexicon lexicon(language);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view trimmed = TrimSpaces(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;

    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = trimmed.find('\t', start);
      const std::string_view field = TrimSpaces(trimmed.substr(
          start, tab == std::string_view::npos ? tab : tab - start));
      if (!field.empty()) fields.emplace_back(field);
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (fields.size() < 2) {
      throw Error(ErrorCode::kParse, "expected headword and at least one synonym",
                  line_no);
    }
    for (const std::string& field : fields) {
      if (HasWhitespace(field)) {
        throw Error(ErrorCode::kParse,
                    "multi-word entry '" + field + "' is not supported",
                    line_no);
      }
    }
    lexicon.Add(fields.front(),
                std::vector<std::string>(fields.begin() + 1, fields.end()));
  }
  return lexicon;
}

SynonymLexicon LoadLexicon(const std::filesystem::path& path,
                           LanguageMode language) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open lexicon '" + path.string() + "'");
  }
  return ParseLexicon(in, language);
}

}  // namespace reda
