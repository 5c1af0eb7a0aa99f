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

#include "reda/experiment_runner.h"

#include <algorithm>
#include <array>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "reda/error.h"
#include "reda/parallel.h"
#include "reda/random.h"

namespace reda {

namespace {

std::size_t TopicCount(std::size_t vocab_size) {
  return std::max<std::size_t>(2, vocab_size / 10);
}

std::string FillerToken(std::size_t i) { return "w" + std::to_string(i); }
std::string TopicToken(std::size_t i) { return "topic" + std::to_string(i); }

std::string ToyText(std::size_t topic, std::size_t fillers, Rng& rng) {
  const std::size_t length = 4 + rng.Below(5);
  std::vector<std::string> tokens;
  tokens.reserve(length + 1);
  for (std::size_t i = 0; i < length; ++i) {
    tokens.push_back(FillerToken(rng.Below(fillers)));
  }
  tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(rng.Below(length + 1)),
                TopicToken(topic));
  std::string text;
  for (const std::string& token : tokens) {
    if (!text.empty()) text.push_back(' ');
    text += token;
  }
  return text;
}

}  // namespace

Corpus GenerateToyCorpus(std::size_t n_pairs, std::size_t vocab_size,
                         std::uint64_t seed) {
  if (n_pairs % 2 != 0) {
    throw Error(ErrorCode::kOddSize, "toy corpus size must be even");
  }
  if (vocab_size < 20) {
    throw Error(ErrorCode::kInvalidArgument, "toy vocabulary must be >= 20");
  }
  const std::size_t topics = TopicCount(vocab_size);
  const std::size_t fillers = vocab_size - topics;
  Rng rng(seed);
  Corpus corpus;
  corpus.examples.reserve(n_pairs);
  for (std::size_t i = 0; i < n_pairs; ++i) {
    const bool matched = i < n_pairs / 2;
    const std::size_t topic_a = rng.Below(topics);
    std::size_t topic_b = topic_a;
    if (!matched) {
      topic_b = rng.Below(topics - 1);
      if (topic_b >= topic_a) ++topic_b;
    }
    std::string text_a = ToyText(topic_a, fillers, rng);
    std::string text_b = ToyText(topic_b, fillers, rng);
    corpus.examples.push_back(
        {std::move(text_a), std::move(text_b), matched ? 1 : 0});
  }
  rng.Shuffle(corpus.examples);
  return corpus;
}

SynonymLexicon GenerateToyLexicon(std::size_t vocab_size, std::uint64_t seed,
                                  double coverage) {
  if (vocab_size < 20) {
    throw Error(ErrorCode::kInvalidArgument, "toy vocabulary must be >= 20");
  }
  const std::size_t fillers = vocab_size - TopicCount(vocab_size);
  Rng rng(seed);
  SynonymLexicon lexicon(LanguageMode::kEnglish);
  for (std::size_t i = 0; i < fillers; ++i) {
    if (rng.Uniform01() >= coverage) continue;
    const std::size_t count = 1 + rng.Below(3);
    std::vector<std::string> synonyms;
    for (std::size_t k = 0; k < count; ++k) {
      std::size_t other = rng.Below(fillers - 1);
      if (other >= i) ++other;
      synonyms.push_back(FillerToken(other));
    }
    lexicon.Add(FillerToken(i), synonyms);
  }
  return lexicon;
}

ExperimentData PrepareExperimentData(const Corpus& corpus, std::size_t dev_n,
                                     std::size_t test_n, std::uint64_t seed) {
  if (dev_n % 2 != 0 || test_n % 2 != 0) {
    throw Error(ErrorCode::kOddSize, "dev and test sizes must be even");
  }
  std::vector<PairExample> positives;
  std::vector<PairExample> negatives;
  for (const PairExample& example : corpus.examples) {
    (example.label == 1 ? positives : negatives).push_back(example);
  }
  const std::size_t held = (dev_n + test_n) / 2;
  if (positives.size() < held || negatives.size() < held) {
    throw Error(ErrorCode::kInsufficientExamples,
                "not enough examples per label for dev and test splits");
  }
  Rng rng(seed);
  rng.Shuffle(positives);
  rng.Shuffle(negatives);

  ExperimentData data;
  data.dev.split = SplitName::kDev;
  data.test.split = SplitName::kTest;
  data.pool.split = SplitName::kTrain;
  auto move_range = [](std::vector<PairExample>& from, std::size_t begin,
                       std::size_t end, std::vector<PairExample>& to) {
    for (std::size_t i = begin; i < end; ++i) to.push_back(std::move(from[i]));
  };
  for (std::vector<PairExample>* label_pool : {&positives, &negatives}) {
    move_range(*label_pool, 0, dev_n / 2, data.dev.examples);
    move_range(*label_pool, dev_n / 2, held, data.test.examples);
    move_range(*label_pool, held, label_pool->size(), data.pool.examples);
  }
  rng.Shuffle(data.dev.examples);
  rng.Shuffle(data.test.examples);
  rng.Shuffle(data.pool.examples);
  return data;
}

namespace {

// Ablation columns follow the published per-op size table.
constexpr std::array<EditOp, 5> kAblationOps = {
    EditOp::kSR, EditOp::kRS, EditOp::kRI, EditOp::kRD, EditOp::kRM};
constexpr char kCombined[] = "combined";
constexpr char kBaseline[] = "baseline";
constexpr char kAugmented[] = "augmented";

struct RunOutcome {
  Metrics metrics;
  std::size_t train_examples = 0;
  std::size_t augmented_examples = 0;
  std::size_t n_aug = 0;
};

// One training run: optionally augments the sample first.
RunOutcome RunOne(const std::vector<PairExample>& sample,
                  const ExperimentData& data, const SweepSpec& spec,
                  const SynonymLexicon& lexicon, const Tokenizer& tokenizer,
                  std::span<const EditOp> ops, std::uint64_t unit_seed,
                  std::size_t op_slot) {
  Corpus train;
  train.examples = sample;
  RunOutcome outcome;
  outcome.train_examples = train.size();
  outcome.augmented_examples = train.size();
  if (!ops.empty()) {
    RedaConfig reda = spec.reda;
    reda.seed = DeriveSeed(unit_seed, 2 + op_slot);
    AugmentedCorpus augmented = AugmentCorpus(train, ops, reda, lexicon);
    outcome.n_aug = augmented.report.n_aug;
    train = std::move(augmented.corpus);
    outcome.augmented_examples = train.size();
  }
  TrainConfig config = spec.train;
  config.seed = DeriveSeed(unit_seed, 1);
  const TrainResult result = Train(train, data.dev, config, tokenizer);
  outcome.metrics = Evaluate(result.model, data.test, tokenizer);
  return outcome;
}

void CheckSpec(const Corpus& corpus, const SweepSpec& spec,
               const SynonymLexicon& lexicon, std::size_t pool_size) {
  if (spec.sizes.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no sweep sizes given");
  }
  if (!std::is_sorted(spec.sizes.begin(), spec.sizes.end()) ||
      std::adjacent_find(spec.sizes.begin(), spec.sizes.end()) !=
          spec.sizes.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "sweep sizes must be strictly ascending");
  }
  if (spec.sizes.front() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "sweep sizes must be positive");
  }
  if (spec.sizes.back() > pool_size) {
    throw Error(ErrorCode::kInsufficientExamples,
                "largest size " + std::to_string(spec.sizes.back()) +
                    " exceeds the " + std::to_string(pool_size) +
                    " examples left after holding out dev and test (corpus " +
                    std::to_string(corpus.size()) + ")");
  }
  if (lexicon.language() != spec.mode) {
    throw Error(ErrorCode::kInvalidArgument,
                "lexicon language does not match the experiment language");
  }
}

Tokenizer ExperimentTokenizer(const SweepSpec& spec,
                              const SynonymLexicon& lexicon) {
  return Tokenizer(spec.mode, spec.mode == LanguageMode::kChinese
                                  ? lexicon.SegmentationWords()
                                  : nullptr);
}

void FillMetadata(SweepReport& report, const SweepSpec& spec,
                  const ExperimentData& data) {
  report.metadata["model"] = "cbow";
  report.metadata["ops_mode"] =
      spec.ops_mode == OpsMode::kCombined ? "combined" : "ablation";
  report.metadata["sampling"] = "label-stratified";
  report.metadata["master_seed"] = std::to_string(spec.seed);
  report.metadata["language"] = LanguageModeName(spec.mode);
  report.metadata["dev_examples"] = std::to_string(data.dev.size());
  report.metadata["test_examples"] = std::to_string(data.test.size());
  report.metadata["pool_examples"] = std::to_string(data.pool.size());
  report.metadata["rm_ops"] = std::to_string(spec.reda.rm_min_ops) + "-" +
                              std::to_string(spec.reda.rm_max_ops);
  report.metadata["rm_edits_per_op"] = std::to_string(spec.reda.rm_edits_per_op);
  report.metadata["epochs"] = std::to_string(spec.train.epochs);
  report.metadata["batch_size"] = std::to_string(spec.train.batch_size);
  report.metadata["learning_rate"] = fmt::format("{}", spec.train.learning_rate);
  for (std::size_t size : spec.sizes) {
    report.metadata["n_aug@" + std::to_string(size)] =
        std::to_string(spec.reda.NAugFor(size));
  }
}

SweepRow MakeRow(std::size_t size, std::string op, const char* variant,
                 const RunOutcome& outcome, std::uint64_t seed) {
  SweepRow row;
  row.size = size;
  row.op = std::move(op);
  row.variant = variant;
  row.metrics = outcome.metrics;
  row.train_examples = outcome.train_examples;
  row.augmented_examples = outcome.augmented_examples;
  row.seed = seed;
  return row;
}

// Runs a baseline plus one augmented run per op set for every size.
SweepReport RunGrid(const Corpus& corpus, const SweepSpec& spec,
                    const SynonymLexicon& lexicon,
                    const std::vector<std::vector<EditOp>>& op_sets,
                    const std::vector<std::string>& op_labels) {
  spec.reda.Validate();
  spec.train.Validate();
  const ExperimentData data = PrepareExperimentData(
      corpus, spec.dev_size, spec.test_size, DeriveSeed(spec.seed, 0));
  CheckSpec(corpus, spec, lexicon, data.pool.size());
  const Tokenizer tokenizer = ExperimentTokenizer(spec, lexicon);

  const std::size_t runs_per_size = 1 + op_sets.size();
  std::vector<std::uint64_t> unit_seeds;
  std::vector<std::vector<PairExample>> samples;
  for (std::size_t size : spec.sizes) {
    const std::uint64_t unit_seed = DeriveSeed(spec.seed, 1000 + size);
    unit_seeds.push_back(unit_seed);
    samples.push_back(
        StratifiedSample(data.pool.examples, size, DeriveSeed(unit_seed, 0)));
  }

  std::vector<RunOutcome> outcomes(spec.sizes.size() * runs_per_size);
  ParallelFor(outcomes.size(), spec.jobs, [&](std::size_t task) {
    const std::size_t s = task / runs_per_size;
    const std::size_t slot = task % runs_per_size;
    const std::span<const EditOp> ops =
        slot == 0 ? std::span<const EditOp>() : std::span<const EditOp>(op_sets[slot - 1]);
    outcomes[task] = RunOne(samples[s], data, spec, lexicon, tokenizer, ops,
                            unit_seeds[s], slot);
  });

  SweepReport report;
  FillMetadata(report, spec, data);
  for (std::size_t s = 0; s < spec.sizes.size(); ++s) {
    const std::size_t size = spec.sizes[s];
    const RunOutcome& baseline = outcomes[s * runs_per_size];
    report.augmented_sizes[size]["original"] = baseline.train_examples;
    for (std::size_t k = 0; k < op_sets.size(); ++k) {
      const RunOutcome& augmented = outcomes[s * runs_per_size + 1 + k];
      report.rows.push_back(
          MakeRow(size, op_labels[k], kBaseline, baseline, unit_seeds[s]));
      report.rows.push_back(
          MakeRow(size, op_labels[k], kAugmented, augmented, unit_seeds[s]));
      report.augmented_sizes[size][op_labels[k]] = augmented.augmented_examples;
    }
  }
  report.metadata["op_columns"] = [&] {
    std::string joined;
    for (const std::string& label : op_labels) {
      if (!joined.empty()) joined += ',';
      joined += label;
    }
    return joined;
  }();
  return report;
}

}  // namespace

SweepReport RunSizeSweep(const Corpus& corpus, const SweepSpec& spec,
                         const SynonymLexicon& lexicon) {
  const std::vector<EditOp> all(kAllEditOps.begin(), kAllEditOps.end());
  return RunGrid(corpus, spec, lexicon, {all}, {kCombined});
}

SweepReport RunAblation(const Corpus& corpus, const SweepSpec& spec,
                        const SynonymLexicon& lexicon) {
  std::vector<std::vector<EditOp>> op_sets;
  std::vector<std::string> labels;
  for (EditOp op : kAblationOps) {
    op_sets.push_back({op});
    labels.emplace_back(EditOpName(op));
  }
  return RunGrid(corpus, spec, lexicon, op_sets, labels);
}

MetricAverages SweepReport::Average(const std::string& op,
                                    const std::string& variant) const {
  MetricAverages averages;
  std::size_t count = 0;
  for (const SweepRow& row : rows) {
    if (row.op != op || row.variant != variant) continue;
    averages.accuracy += row.metrics.accuracy;
    averages.precision += row.metrics.precision;
    averages.recall += row.metrics.recall;
    ++count;
  }
  if (count > 0) {
    averages.accuracy /= static_cast<double>(count);
    averages.precision /= static_cast<double>(count);
    averages.recall /= static_cast<double>(count);
  }
  return averages;
}

std::string SweepReport::ToCsv() const {
  std::string out =
      "size,op,variant,accuracy,precision,recall,train_examples,"
      "augmented_examples,seed\n";
  for (const SweepRow& row : rows) {
    out += fmt::format("{},{},{},{:.6f},{:.6f},{:.6f},{},{},{}\n", row.size,
                       row.op, row.variant, row.metrics.accuracy,
                       row.metrics.precision, row.metrics.recall,
                       row.train_examples, row.augmented_examples, row.seed);
  }
  return out;
}

namespace {

std::vector<std::string> SplitColumns(const std::string& joined) {
  std::vector<std::string> columns;
  std::stringstream in(joined);
  std::string column;
  while (std::getline(in, column, ',')) columns.push_back(column);
  return columns;
}

std::vector<std::size_t> ReportSizes(const SweepReport& report) {
  std::vector<std::size_t> sizes;
  for (const auto& [size, unused] : report.augmented_sizes) sizes.push_back(size);
  return sizes;
}

}  // namespace

std::string SweepReport::ToTable() const {
  const std::vector<std::size_t> sizes = ReportSizes(*this);
  auto it = metadata.find("op_columns");
  const std::vector<std::string> ops =
      it == metadata.end() ? std::vector<std::string>{} : SplitColumns(it->second);

  auto lookup = [&](std::size_t size, const std::string& op,
                    const std::string& variant) -> const SweepRow* {
    for (const SweepRow& row : rows) {
      if (row.size == size && row.op == op && row.variant == variant) return &row;
    }
    return nullptr;
  };

  std::string out = fmt::format("{:<10}{:<12}", "Metric", "Run");
  for (std::size_t size : sizes) out += fmt::format("{:>10}", size);
  out += fmt::format("{:>10}\n", "Average");

  const std::array<std::pair<const char*, double Metrics::*>, 3> metrics = {{
      {"Accuracy", &Metrics::accuracy},
      {"Precision", &Metrics::precision},
      {"Recall", &Metrics::recall},
  }};
  for (const auto& [metric_name, field] : metrics) {
    std::vector<std::pair<std::string, std::string>> lines;
    if (!ops.empty()) lines.emplace_back(ops.front(), kBaseline);
    for (const std::string& op : ops) lines.emplace_back(op, kAugmented);
    bool first = true;
    for (const auto& [op, variant] : lines) {
      const std::string label =
          variant == kBaseline ? "baseline"
                               : (op == kCombined ? "REDA" : op);
      out += fmt::format("{:<10}{:<12}", first ? metric_name : "", label);
      first = false;
      double sum = 0.0;
      std::size_t count = 0;
      for (std::size_t size : sizes) {
        const SweepRow* row = lookup(size, op, variant);
        if (row == nullptr) {
          out += fmt::format("{:>10}", "-");
          continue;
        }
        const double value = row->metrics.*field * 100.0;
        sum += value;
        ++count;
        out += fmt::format("{:>10.2f}", value);
      }
      out += count == 0 ? fmt::format("{:>10}\n", "-")
                        : fmt::format("{:>10.2f}\n", sum / static_cast<double>(count));
    }
  }
  return out;
}

std::string SweepReport::AugmentedSizesCsv() const {
  auto it = metadata.find("op_columns");
  const std::vector<std::string> ops =
      it == metadata.end() ? std::vector<std::string>{} : SplitColumns(it->second);
  std::string out = "size,original";
  for (const std::string& op : ops) out += "," + op;
  out += '\n';
  for (const auto& [size, columns] : augmented_sizes) {
    out += std::to_string(size);
    auto original = columns.find("original");
    out += "," + std::to_string(original == columns.end() ? 0 : original->second);
    for (const std::string& op : ops) {
      auto cell = columns.find(op);
      out += "," + std::to_string(cell == columns.end() ? 0 : cell->second);
    }
    out += '\n';
  }
  return out;
}

std::string SweepReport::AugmentedSizesTable() const {
  auto it = metadata.find("op_columns");
  const std::vector<std::string> ops =
      it == metadata.end() ? std::vector<std::string>{} : SplitColumns(it->second);
  std::string out = fmt::format("{:<10}", "Size");
  for (const std::string& op : ops) out += fmt::format("{:>12}", op);
  out += '\n';
  for (const auto& [size, columns] : augmented_sizes) {
    out += fmt::format("{:<10}", size);
    for (const std::string& op : ops) {
      auto cell = columns.find(op);
      out += fmt::format("{:>12}", cell == columns.end() ? 0 : cell->second);
    }
    out += '\n';
  }
  return out;
}

}  // namespace reda
