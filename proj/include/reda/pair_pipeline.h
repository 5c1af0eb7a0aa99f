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

#ifndef REDA_PAIR_PIPELINE_H_
#define REDA_PAIR_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "reda/random.h"
#include "reda/reda_engine.h"
#include "reda/synonym_lexicon.h"

namespace reda {

// A labeled text pair. label 1 means the texts express the same intent.
struct PairExample {
  std::string text_a;
  std::string text_b;
  int label = 0;

  friend bool operator==(const PairExample&, const PairExample&) = default;
};

enum class SplitName { kTrain, kDev, kTest, kAugmented };

const char* SplitNameString(SplitName split);

struct Corpus {
  std::vector<PairExample> examples;
  SplitName split = SplitName::kTrain;

  std::size_t size() const { return examples.size(); }
  bool empty() const { return examples.empty(); }
};

struct CorpusStats {
  std::size_t total = 0;
  std::size_t matched = 0;
  std::size_t mismatched = 0;

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

CorpusStats ComputeCorpusStats(const Corpus& corpus);

// "total N matched M mismatched K".
std::string FormatCorpusStats(const CorpusStats& stats);

// Corpus files are UTF-8 TSV, one "text_a<TAB>text_b<TAB>label" per line, no
// header. Blank lines are skipped; anything else malformed throws
// Error(kParse) with the line number.
Corpus ParseCorpus(std::istream& in, SplitName split = SplitName::kTrain);
Corpus LoadCorpus(const std::filesystem::path& path,
                  SplitName split = SplitName::kTrain);
void WriteCorpus(std::ostream& out, const Corpus& corpus);
void SaveCorpus(const std::filesystem::path& path, const Corpus& corpus);

// Per-operation augmentation accounting, summed over both sides of every
// pair. For each op, produced + shortfall == 2 * n_aug * input_pairs.
struct AugmentationReport {
  std::size_t n_aug = 0;
  std::size_t input_pairs = 0;
  std::size_t output_pairs = 0;
  std::map<EditOp, AugmentStats> per_op;

  AugmentationReport& operator+=(const AugmentationReport& other);

  // key=value lines.
  std::string ToKeyValue() const;
  // Header "op,attempted,produced,dedup_rejected,shortfall", one row per op.
  std::string ToCsv() const;
};

// Cross pairing: each augmented variant of text_a is paired with the original
// text_b and vice versa, keeping the label. The source pair itself is not
// included. Per-op stats are added to report when given.
std::vector<PairExample> AugmentPair(const PairExample& pair,
                                     std::span<const EditOp> ops,
                                     std::size_t n_aug,
                                     const Augmenter& augmenter,
                                     RandomSource& rng,
                                     AugmentationReport* report = nullptr);

struct AugmentedCorpus {
  Corpus corpus;
  AugmentationReport report;
};

// Every original example followed by its augmentations, in input order.
// n_aug follows config.NAugFor(corpus.size()). Example i draws from
// Rng(DeriveSeed(config.seed, i)), so the result does not depend on `jobs`.
// Throws Error(kEmptyCorpus) for an empty corpus.
AugmentedCorpus AugmentCorpus(const Corpus& corpus,
                              std::span<const EditOp> ops,
                              const RedaConfig& config,
                              const SynonymLexicon& lexicon,
                              std::size_t jobs = 1);

struct Splits {
  Corpus train;
  Corpus dev;
  Corpus test;
};

// Three disjoint label-balanced corpora sampled without replacement. Sizes
// must be even (Error(kOddSize)) and each label must have enough examples
// (Error(kInsufficientExamples)).
Splits BalancedSplit(std::span<const PairExample> pairs, std::size_t train_n,
                     std::size_t dev_n, std::size_t test_n, std::uint64_t seed);

// Samples n examples with labels as balanced as availability allows: half from
// each label, topping up from the other label when one runs short.
std::vector<PairExample> StratifiedSample(std::span<const PairExample> pairs,
                                          std::size_t n, std::uint64_t seed);

}  // namespace reda

#endif  // REDA_PAIR_PIPELINE_H_
