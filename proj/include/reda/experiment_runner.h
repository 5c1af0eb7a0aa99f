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

#ifndef REDA_EXPERIMENT_RUNNER_H_
#define REDA_EXPERIMENT_RUNNER_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "reda/matcher.h"
#include "reda/pair_pipeline.h"
#include "reda/reda_engine.h"
#include "reda/synonym_lexicon.h"

namespace reda {

// Synthetic matching task. Each text is 4-8 filler tokens plus one topic
// token at a random position; label 1 iff both texts carry the same topic.
// Half the pairs are matched. n_pairs must be even and vocab_size >= 20.
Corpus GenerateToyCorpus(std::size_t n_pairs, std::size_t vocab_size,
                         std::uint64_t seed);

// Sparse synonym lexicon over the toy corpus's filler words; topic tokens are
// never covered. About `coverage` of the fillers get 1-3 synonyms.
SynonymLexicon GenerateToyLexicon(std::size_t vocab_size, std::uint64_t seed,
                                  double coverage = 0.3);

enum class OpsMode { kCombined, kAblation };

struct SweepSpec {
  std::vector<std::size_t> sizes;
  OpsMode ops_mode = OpsMode::kCombined;
  RedaConfig reda = RedaConfig::ExperimentPreset();
  TrainConfig train;
  LanguageMode mode = LanguageMode::kEnglish;
  // Held out once, before any subsampling.
  std::size_t dev_size = 400;
  std::size_t test_size = 400;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
};

struct SweepRow {
  std::size_t size = 0;
  std::string op;       // "combined" or an EditOp name
  std::string variant;  // "baseline" or "augmented"
  std::string model = "cbow";
  Metrics metrics;
  std::size_t train_examples = 0;
  std::size_t augmented_examples = 0;
  std::uint64_t seed = 0;
};

struct MetricAverages {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  // Per size, the augmented train set size for each op column.
  std::map<std::size_t, std::map<std::string, std::size_t>> augmented_sizes;
  std::map<std::string, std::string> metadata;

  // Arithmetic mean over all rows with the given op and variant.
  MetricAverages Average(const std::string& op,
                         const std::string& variant) const;

  // Header "size,op,variant,accuracy,precision,recall,train_examples,
  // augmented_examples,seed" and one row per run.
  std::string ToCsv() const;
  // Metric x variant rows against size columns plus an average column.
  std::string ToTable() const;
  // Header "size,<op>,<op>..." with augmented train set sizes.
  std::string AugmentedSizesCsv() const;
  std::string AugmentedSizesTable() const;
};

struct ExperimentData {
  Corpus pool;
  Corpus dev;
  Corpus test;
};

// Holds out label-balanced dev and test splits; everything else forms the
// training pool.
ExperimentData PrepareExperimentData(const Corpus& corpus, std::size_t dev_n,
                                     std::size_t test_n, std::uint64_t seed);

// For every size: a stratified subsample trained as-is (baseline) and after
// augmentation with all five operations, both evaluated on the same test
// split.
SweepReport RunSizeSweep(const Corpus& corpus, const SweepSpec& spec,
                         const SynonymLexicon& lexicon);

// For every size and every single operation: one augmented run, compared
// against the shared baseline for that size.
SweepReport RunAblation(const Corpus& corpus, const SweepSpec& spec,
                        const SynonymLexicon& lexicon);

}  // namespace reda

#endif  // REDA_EXPERIMENT_RUNNER_H_
