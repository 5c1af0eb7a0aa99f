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

#include "reda/reda_engine.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "reda/error.h"

namespace reda {

const char* EditOpName(EditOp op) {
  switch (op) {
    case EditOp::kSR:
      return "SR";
    case EditOp::kRI:
      return "RI";
    case EditOp::kRS:
      return "RS";
    case EditOp::kRD:
      return "RD";
    case EditOp::kRM:
      return "RM";
  }
  return "?";
}

EditOp ParseEditOp(std::string_view name) {
  std::string upper(name);
  for (char& c : upper) c = static_cast<char>(std::toupper(c));
  for (EditOp op : kAllEditOps) {
    if (upper == EditOpName(op)) return op;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown edit operation '" + std::string(name) + "'");
}

std::vector<EditOp> ParseEditOps(std::string_view list) {
  std::vector<EditOp> ops;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = std::min(list.find(',', start), list.size());
    ops.push_back(ParseEditOp(list.substr(start, comma - start)));
    start = comma + 1;
  }
  return ops;
}

EditRate EditRate::FromDouble(double rate) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "editing rate must lie in [0, 1]");
  }
  return EditRate(static_cast<std::uint32_t>(std::llround(rate * 10000.0)));
}

std::size_t NumEdits(EditRate rate, std::size_t length) {
  const std::uint64_t product =
      static_cast<std::uint64_t>(rate.ten_thousandths()) * length;
  const std::uint64_t whole = product / 10000;
  const std::uint64_t rest = product % 10000;
  if (rest > 5000 || (rest == 5000 && whole % 2 == 1)) return whole + 1;
  return whole;
}

RedaConfig RedaConfig::ExperimentPreset() {
  RedaConfig config;
  config.rm_min_ops = 2;
  config.rm_max_ops = 2;
  config.rm_edits_per_op = 1;
  return config;
}

EditRate RedaConfig::RateFor(EditOp op) const {
  switch (op) {
    case EditOp::kSR:
      return rate_sr;
    case EditOp::kRI:
      return rate_ri;
    case EditOp::kRS:
      return rate_rs;
    case EditOp::kRD:
      return rate_rd;
    case EditOp::kRM:
      break;
  }
  throw Error(ErrorCode::kInvalidArgument, "RM has no editing rate");
}

void RedaConfig::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
  };
  for (EditRate rate : {rate_sr, rate_rs, rate_ri, rate_rd}) {
    require(rate.ten_thousandths() <= 10000, "editing rate must lie in [0, 1]");
  }
  require(rm_min_ops >= 2, "rm_min_ops must be at least 2");
  require(rm_max_ops <= 4, "rm_max_ops must be at most 4");
  require(rm_min_ops <= rm_max_ops, "rm_min_ops must not exceed rm_max_ops");
  require(rm_edits_per_op >= 1, "rm_edits_per_op must be at least 1");
  require(n_aug_small >= 1 && n_aug_large >= 1, "n_aug must be at least 1");
  require(retry_factor >= 1, "retry_factor must be at least 1");
}

TokenSeq SynonymReplacement(TokenSeq seq, std::size_t n,
                            const SynonymLexicon& lexicon, RandomSource& rng) {
  for (std::size_t step = 0; step < n; ++step) {
    const std::vector<std::size_t> eligible = lexicon.EligiblePositions(seq);
    if (eligible.empty()) break;
    const std::size_t pos = eligible[rng.Below(eligible.size())];
    const std::vector<std::string>& synonyms =
        lexicon.SynonymsOf(seq.tokens[pos]);
    seq.tokens[pos] = synonyms[rng.Below(synonyms.size())];
  }
  return seq;
}

TokenSeq RandomInsertion(TokenSeq seq, std::size_t n,
                         const SynonymLexicon& lexicon, RandomSource& rng) {
  for (std::size_t step = 0; step < n; ++step) {
    const std::vector<std::size_t> eligible = lexicon.EligiblePositions(seq);
    if (eligible.empty()) break;
    const std::size_t source = eligible[rng.Below(eligible.size())];
    const std::vector<std::string>& synonyms =
        lexicon.SynonymsOf(seq.tokens[source]);
    std::string inserted = synonyms[rng.Below(synonyms.size())];
    const std::size_t gap = rng.Below(seq.tokens.size() + 1);
    seq.tokens.insert(seq.tokens.begin() + static_cast<std::ptrdiff_t>(gap),
                      std::move(inserted));
    seq.word_flags.insert(
        seq.word_flags.begin() + static_cast<std::ptrdiff_t>(gap), true);
  }
  return seq;
}

TokenSeq RandomSwap(TokenSeq seq, std::size_t n, RandomSource& rng) {
  const std::size_t size = seq.tokens.size();
  if (size < 2) return seq;
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t i = rng.Below(size);
    std::size_t j = rng.Below(size - 1);
    if (j >= i) ++j;
    std::swap(seq.tokens[i], seq.tokens[j]);
    const bool flag = seq.word_flags[i];
    seq.word_flags[i] = seq.word_flags[j];
    seq.word_flags[j] = flag;
  }
  return seq;
}

TokenSeq RandomDeletion(TokenSeq seq, std::size_t n, RandomSource& rng) {
  const std::size_t size = seq.tokens.size();
  if (size < 2 || n == 0) return seq;
  const std::size_t count = std::min(n, size - 1);

  // Partial Fisher-Yates: the first count slots become a uniform subset.
  std::vector<std::size_t> order(size);
  for (std::size_t i = 0; i < size; ++i) order[i] = i;
  std::vector<bool> doomed(size, false);
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(order[i], order[i + rng.Below(size - i)]);
    doomed[order[i]] = true;
  }

  TokenSeq out;
  out.mode = seq.mode;
  out.tokens.reserve(size - count);
  for (std::size_t i = 0; i < size; ++i) {
    if (doomed[i]) continue;
    out.tokens.push_back(std::move(seq.tokens[i]));
    out.word_flags.push_back(seq.word_flags[i]);
  }
  return out;
}

TokenSeq RandomMix(TokenSeq seq, const RedaConfig& config,
                   const SynonymLexicon& lexicon, RandomSource& rng) {
  std::array<EditOp, 4> ops = {EditOp::kSR, EditOp::kRI, EditOp::kRS,
                               EditOp::kRD};
  const std::size_t count =
      config.rm_min_ops + rng.Below(config.rm_max_ops - config.rm_min_ops + 1);
  // Partial Fisher-Yates yields a uniformly random ordered selection.
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(ops[i], ops[i + rng.Below(ops.size() - i)]);
  }
  const std::size_t edits = config.rm_edits_per_op;
  for (std::size_t i = 0; i < count; ++i) {
    switch (ops[i]) {
      case EditOp::kSR:
        seq = SynonymReplacement(std::move(seq), edits, lexicon, rng);
        break;
      case EditOp::kRI:
        seq = RandomInsertion(std::move(seq), edits, lexicon, rng);
        break;
      case EditOp::kRS:
        seq = RandomSwap(std::move(seq), edits, rng);
        break;
      case EditOp::kRD:
        seq = RandomDeletion(std::move(seq), edits, rng);
        break;
      case EditOp::kRM:
        break;
    }
  }
  return seq;
}

TokenSeq ApplyEditOp(TokenSeq seq, EditOp op, const RedaConfig& config,
                     const SynonymLexicon& lexicon, RandomSource& rng) {
  if (op == EditOp::kRM) return RandomMix(std::move(seq), config, lexicon, rng);
  const std::size_t n = NumEdits(config.RateFor(op), seq.size());
  switch (op) {
    case EditOp::kSR:
      return SynonymReplacement(std::move(seq), n, lexicon, rng);
    case EditOp::kRI:
      return RandomInsertion(std::move(seq), n, lexicon, rng);
    case EditOp::kRS:
      return RandomSwap(std::move(seq), n, rng);
    case EditOp::kRD:
      return RandomDeletion(std::move(seq), n, rng);
    case EditOp::kRM:
      break;
  }
  return seq;
}

AugmentStats& AugmentStats::operator+=(const AugmentStats& other) {
  attempted += other.attempted;
  produced += other.produced;
  dedup_rejected += other.dedup_rejected;
  shortfall += other.shortfall;
  return *this;
}

Augmenter::Augmenter(RedaConfig config, const SynonymLexicon& lexicon)
    : config_(config),
      lexicon_(&lexicon),
      tokenizer_(lexicon.language(),
                 lexicon.language() == LanguageMode::kChinese
                     ? lexicon.SegmentationWords()
                     : nullptr) {
  config_.Validate();
}

std::vector<std::string> Augmenter::Augment(std::string_view text, EditOp op,
                                            std::size_t n_aug,
                                            RandomSource& rng,
                                            AugmentStats* stats) const {
  const TokenSeq original = tokenizer_.Tokenize(text);
  const std::string canonical = Detokenize(original);

  std::vector<std::string> results;
  std::unordered_set<std::string> seen = {canonical, std::string(text)};
  AugmentStats local;
  const std::size_t budget = config_.retry_factor * n_aug;
  while (results.size() < n_aug && local.attempted < budget) {
    ++local.attempted;
    std::string candidate =
        Detokenize(ApplyEditOp(original, op, config_, *lexicon_, rng));
    if (!seen.insert(candidate).second) {
      ++local.dedup_rejected;
      continue;
    }
    results.push_back(std::move(candidate));
  }
  local.produced = results.size();
  local.shortfall = n_aug - results.size();
  if (stats != nullptr) *stats += local;
  return results;
}

std::vector<std::string> Augment(std::string_view text, EditOp op,
                                 std::size_t n_aug, const RedaConfig& config,
                                 const SynonymLexicon& lexicon,
                                 RandomSource& rng) {
  return Augmenter(config, lexicon).Augment(text, op, n_aug, rng);
}

}  // namespace reda
