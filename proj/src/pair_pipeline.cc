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

#include "reda/pair_pipeline.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "reda/error.h"
#include "reda/parallel.h"

namespace reda {

const char* SplitNameString(SplitName split) {
  switch (split) {
    case SplitName::kTrain:
      return "train";
    case SplitName::kDev:
      return "dev";
    case SplitName::kTest:
      return "test";
    case SplitName::kAugmented:
      return "augmented";
  }
  return "?";
}

CorpusStats ComputeCorpusStats(const Corpus& corpus) {
  CorpusStats stats;
  stats.total = corpus.size();
  for (const PairExample& example : corpus.examples) {
    if (example.label == 1) ++stats.matched;
  }
  stats.mismatched = stats.total - stats.matched;
  return stats;
}

std::string FormatCorpusStats(const CorpusStats& stats) {
  std::ostringstream out;
  out << "total " << stats.total << " matched " << stats.matched
      << " mismatched " << stats.mismatched;
  return out.str();
}

namespace {

bool IsBlank(std::string_view text) {
  for (std::size_t pos = 0; pos < text.size();) {
    if (!utf8::IsWhitespace(utf8::Next(text, pos))) return false;
  }
  return true;
}

}  // namespace

Corpus ParseCorpus(std::istream& in, SplitName split) {
  Corpus corpus;
  corpus.split = split;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (IsBlank(line)) continue;

    const std::size_t first = line.find('\t');
    const std::size_t second =
        first == std::string::npos ? first : line.find('\t', first + 1);
    if (second == std::string::npos ||
        line.find('\t', second + 1) != std::string::npos) {
      throw Error(ErrorCode::kParse, "expected 3 tab-separated fields",
                  line_no);
    }
    PairExample example;
    example.text_a = line.substr(0, first);
    example.text_b = line.substr(first + 1, second - first - 1);
    const std::string label = line.substr(second + 1);
    if (label != "0" && label != "1") {
      throw Error(ErrorCode::kParse, "label must be 0 or 1, got '" + label + "'",
                  line_no);
    }
    example.label = label == "1" ? 1 : 0;
    if (IsBlank(example.text_a) || IsBlank(example.text_b)) {
      throw Error(ErrorCode::kParse, "empty text field", line_no);
    }
    corpus.examples.push_back(std::move(example));
  }
  return corpus;
}

Corpus LoadCorpus(const std::filesystem::path& path, SplitName split) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open corpus '" + path.string() + "'");
  }
  return ParseCorpus(in, split);
}

void WriteCorpus(std::ostream& out, const Corpus& corpus) {
  for (const PairExample& example : corpus.examples) {
    out << example.text_a << '\t' << example.text_b << '\t' << example.label
        << '\n';
  }
}

void SaveCorpus(const std::filesystem::path& path, const Corpus& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  }
  WriteCorpus(out, corpus);
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path.string() + "'");
}

AugmentationReport& AugmentationReport::operator+=(
    const AugmentationReport& other) {
  input_pairs += other.input_pairs;
  output_pairs += other.output_pairs;
  for (const auto& [op, stats] : other.per_op) per_op[op] += stats;
  return *this;
}

std::string AugmentationReport::ToKeyValue() const {
  std::ostringstream out;
  out << "n_aug=" << n_aug << '\n'
      << "input_pairs=" << input_pairs << '\n'
      << "output_pairs=" << output_pairs << '\n';
  for (const auto& [op, stats] : per_op) {
    const char* name = EditOpName(op);
    out << name << ".attempted=" << stats.attempted << '\n'
        << name << ".produced=" << stats.produced << '\n'
        << name << ".dedup_rejected=" << stats.dedup_rejected << '\n'
        << name << ".shortfall=" << stats.shortfall << '\n';
  }
  return out.str();
}

std::string AugmentationReport::ToCsv() const {
  std::ostringstream out;
  out << "op,attempted,produced,dedup_rejected,shortfall\n";
  for (const auto& [op, stats] : per_op) {
    out << EditOpName(op) << ',' << stats.attempted << ',' << stats.produced
        << ',' << stats.dedup_rejected << ',' << stats.shortfall << '\n';
  }
  return out.str();
}

std::vector<PairExample> AugmentPair(const PairExample& pair,
                                     std::span<const EditOp> ops,
                                     std::size_t n_aug,
                                     const Augmenter& augmenter,
                                     RandomSource& rng,
                                     AugmentationReport* report) {
  std::vector<PairExample> out;
  for (EditOp op : ops) {
    AugmentStats stats;
    for (std::string& variant :
         augmenter.Augment(pair.text_a, op, n_aug, rng, &stats)) {
      out.push_back({std::move(variant), pair.text_b, pair.label});
    }
    for (std::string& variant :
         augmenter.Augment(pair.text_b, op, n_aug, rng, &stats)) {
      out.push_back({pair.text_a, std::move(variant), pair.label});
    }
    if (report != nullptr) report->per_op[op] += stats;
  }
  return out;
}

AugmentedCorpus AugmentCorpus(const Corpus& corpus,
                              std::span<const EditOp> ops,
                              const RedaConfig& config,
                              const SynonymLexicon& lexicon,
                              std::size_t jobs) {
  if (corpus.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "cannot augment an empty corpus");
  }
  const Augmenter augmenter(config, lexicon);
  const std::size_t n_aug = config.NAugFor(corpus.size());

  std::vector<std::vector<PairExample>> produced(corpus.size());
  std::vector<AugmentationReport> reports(corpus.size());
  ParallelFor(corpus.size(), jobs, [&](std::size_t i) {
    Rng rng(DeriveSeed(config.seed, i));
    produced[i] =
        AugmentPair(corpus.examples[i], ops, n_aug, augmenter, rng, &reports[i]);
  });

  AugmentedCorpus result;
  result.corpus.split = SplitName::kAugmented;
  result.report.n_aug = n_aug;
  for (EditOp op : ops) result.report.per_op[op];
  std::size_t total = corpus.size();
  for (const auto& batch : produced) total += batch.size();
  result.corpus.examples.reserve(total);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    result.corpus.examples.push_back(corpus.examples[i]);
    for (PairExample& example : produced[i]) {
      result.corpus.examples.push_back(std::move(example));
    }
    result.report += reports[i];
  }
  result.report.input_pairs = corpus.size();
  result.report.output_pairs = result.corpus.size();
  return result;
}

namespace {

void SplitByLabel(std::span<const PairExample> pairs,
                  std::vector<PairExample>& positives,
                  std::vector<PairExample>& negatives) {
  for (const PairExample& pair : pairs) {
    (pair.label == 1 ? positives : negatives).push_back(pair);
  }
}

}  // namespace

Splits BalancedSplit(std::span<const PairExample> pairs, std::size_t train_n,
                     std::size_t dev_n, std::size_t test_n,
                     std::uint64_t seed) {
  for (std::size_t n : {train_n, dev_n, test_n}) {
    if (n % 2 != 0) {
      throw Error(ErrorCode::kOddSize,
                  "split size " + std::to_string(n) + " is odd");
    }
  }
  std::vector<PairExample> positives;
  std::vector<PairExample> negatives;
  SplitByLabel(pairs, positives, negatives);
  const std::size_t per_label = (train_n + dev_n + test_n) / 2;
  if (positives.size() < per_label || negatives.size() < per_label) {
    throw Error(ErrorCode::kInsufficientExamples,
                "need " + std::to_string(per_label) + " examples per label, have " +
                    std::to_string(positives.size()) + " matched and " +
                    std::to_string(negatives.size()) + " mismatched");
  }

  Rng rng(seed);
  rng.Shuffle(positives);
  rng.Shuffle(negatives);
  std::size_t offset = 0;
  auto take = [&](std::size_t n, SplitName name) {
    Corpus corpus;
    corpus.split = name;
    const auto half = static_cast<std::ptrdiff_t>(n / 2);
    const auto begin = static_cast<std::ptrdiff_t>(offset);
    corpus.examples.assign(positives.begin() + begin,
                           positives.begin() + begin + half);
    corpus.examples.insert(corpus.examples.end(), negatives.begin() + begin,
                           negatives.begin() + begin + half);
    rng.Shuffle(corpus.examples);
    offset += n / 2;
    return corpus;
  };
  Splits splits;
  splits.train = take(train_n, SplitName::kTrain);
  splits.dev = take(dev_n, SplitName::kDev);
  splits.test = take(test_n, SplitName::kTest);
  return splits;
}

std::vector<PairExample> StratifiedSample(std::span<const PairExample> pairs,
                                          std::size_t n, std::uint64_t seed) {
  if (n > pairs.size()) {
    throw Error(ErrorCode::kInsufficientExamples,
                "cannot sample " + std::to_string(n) + " of " +
                    std::to_string(pairs.size()) + " examples");
  }
  std::vector<PairExample> positives;
  std::vector<PairExample> negatives;
  SplitByLabel(pairs, positives, negatives);
  Rng rng(seed);
  rng.Shuffle(positives);
  rng.Shuffle(negatives);

  std::size_t from_positive = std::min(positives.size(), (n + 1) / 2);
  std::size_t from_negative = std::min(negatives.size(), n - from_positive);
  from_positive = n - from_negative;

  std::vector<PairExample> sample(positives.begin(),
                                  positives.begin() + static_cast<std::ptrdiff_t>(from_positive));
  sample.insert(sample.end(), negatives.begin(),
                negatives.begin() + static_cast<std::ptrdiff_t>(from_negative));
  rng.Shuffle(sample);
  return sample;
}

}  // namespace reda
