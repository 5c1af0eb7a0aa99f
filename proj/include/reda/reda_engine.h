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

#ifndef REDA_REDA_ENGINE_H_
#define REDA_REDA_ENGINE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "reda/random.h"
#include "reda/synonym_lexicon.h"
#include "reda/text_model.h"

namespace reda {

enum class EditOp { kSR, kRI, kRS, kRD, kRM };

inline constexpr std::array<EditOp, 5> kAllEditOps = {
    EditOp::kSR, EditOp::kRI, EditOp::kRS, EditOp::kRD, EditOp::kRM};

// "SR", "RI", "RS", "RD", "RM".
const char* EditOpName(EditOp op);
// Case-insensitive; throws Error(kInvalidArgument).
EditOp ParseEditOp(std::string_view name);
// Comma-separated list such as "sr,ri,rs,rd,rm".
std::vector<EditOp> ParseEditOps(std::string_view list);

// An editing rate held as an exact count of ten-thousandths, so that edit
// counts never go through binary floating point.
class EditRate {
 public:
  constexpr EditRate() = default;
  static constexpr EditRate FromTenThousandths(std::uint32_t units) {
    return EditRate(units);
  }
  // Rounds to the nearest ten-thousandth. Throws Error(kInvalidArgument)
  // outside [0, 1].
  static EditRate FromDouble(double rate);

  constexpr std::uint32_t ten_thousandths() const { return units_; }
  double value() const { return units_ / 10000.0; }

  friend constexpr bool operator==(EditRate, EditRate) = default;

 private:
  constexpr explicit EditRate(std::uint32_t units) : units_(units) {}
  std::uint32_t units_ = 0;
};

// rate * length rounded half to even, so a product of exactly 0.5 gives no
// edit at all.
std::size_t NumEdits(EditRate rate, std::size_t length);

struct RedaConfig {
  EditRate rate_sr = EditRate::FromTenThousandths(2000);
  EditRate rate_rs = EditRate::FromTenThousandths(2000);
  EditRate rate_ri = EditRate::FromTenThousandths(1000);
  EditRate rate_rd = EditRate::FromTenThousandths(1000);
  // Random Mix picks between rm_min_ops and rm_max_ops of the other four
  // operations and applies each with rm_edits_per_op edits.
  std::size_t rm_min_ops = 2;
  std::size_t rm_max_ops = 4;
  std::size_t rm_edits_per_op = 1;
  std::size_t n_aug_small = 2;
  std::size_t n_aug_large = 1;
  // Corpora with fewer examples than this use n_aug_small.
  std::size_t small_corpus_threshold = 50000;
  std::size_t retry_factor = 10;
  std::uint64_t seed = 0;

  // Random Mix restricted to exactly two operations with one edit each.
  static RedaConfig ExperimentPreset();

  EditRate RateFor(EditOp op) const;
  std::size_t NAugFor(std::size_t corpus_size) const {
    return corpus_size < small_corpus_threshold ? n_aug_small : n_aug_large;
  }
  // Throws Error(kInvalidArgument) on out-of-range fields.
  void Validate() const;
};

// Each operation performs its steps sequentially on a copy of seq. Steps that
// find nothing to act on are no-ops, and n == 0 returns seq unchanged.

// Replaces the token at one uniformly chosen eligible position per step with a
// uniformly chosen synonym. Eligibility is recomputed after every step.
TokenSeq SynonymReplacement(TokenSeq seq, std::size_t n,
                            const SynonymLexicon& lexicon, RandomSource& rng);

// Picks an eligible word and one of its synonyms, then inserts the synonym at
// a uniformly chosen gap in [0, size].
TokenSeq RandomInsertion(TokenSeq seq, std::size_t n,
                         const SynonymLexicon& lexicon, RandomSource& rng);

// Exchanges the tokens at two distinct uniformly chosen positions per step.
TokenSeq RandomSwap(TokenSeq seq, std::size_t n, RandomSource& rng);

// Deletes min(n, size - 1) tokens at distinct uniformly chosen positions.
TokenSeq RandomDeletion(TokenSeq seq, std::size_t n, RandomSource& rng);

// Applies k distinct operations from {SR, RI, RS, RD} in random order, where
// k is uniform in [rm_min_ops, rm_max_ops].
TokenSeq RandomMix(TokenSeq seq, const RedaConfig& config,
                   const SynonymLexicon& lexicon, RandomSource& rng);

// One application of op, with the edit count derived from the configured rate
// and the token count.
TokenSeq ApplyEditOp(TokenSeq seq, EditOp op, const RedaConfig& config,
                     const SynonymLexicon& lexicon, RandomSource& rng);

struct AugmentStats {
  std::size_t attempted = 0;
  std::size_t produced = 0;
  std::size_t dedup_rejected = 0;
  std::size_t shortfall = 0;

  AugmentStats& operator+=(const AugmentStats& other);
  friend bool operator==(const AugmentStats&, const AugmentStats&) = default;
};

// Produces distinct augmented versions of texts. Holds a reference to the
// lexicon, which must outlive the augmenter. Const methods are thread-safe.
class Augmenter {
 public:
  Augmenter(RedaConfig config, const SynonymLexicon& lexicon);

  // Up to n_aug distinct detokenized variants of text, none equal to the
  // original. Gives up after retry_factor * n_aug attempts. Throws
  // Error(kEmptyText) for blank text.
  std::vector<std::string> Augment(std::string_view text, EditOp op,
                                   std::size_t n_aug, RandomSource& rng,
                                   AugmentStats* stats = nullptr) const;

  const RedaConfig& config() const { return config_; }
  const Tokenizer& tokenizer() const { return tokenizer_; }
  const SynonymLexicon& lexicon() const { return *lexicon_; }

 private:
  RedaConfig config_;
  const SynonymLexicon* lexicon_;
  Tokenizer tokenizer_;
};

std::vector<std::string> Augment(std::string_view text, EditOp op,
                                 std::size_t n_aug, const RedaConfig& config,
                                 const SynonymLexicon& lexicon,
                                 RandomSource& rng);

}  // namespace reda

#endif  // REDA_REDA_ENGINE_H_
