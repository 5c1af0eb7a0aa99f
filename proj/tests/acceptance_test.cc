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

// Standalone acceptance suite. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fmt/core.h"
#include "oracles/choice_enumerator.h"
#include "oracles/gradient_oracle.h"
#include "oracles/outcome_oracle.h"
#include "oracles/rounding_oracle.h"
#include "reda/cli.h"
#include "reda/experiment_runner.h"
#include "reda/matcher.h"
#include "reda/pair_pipeline.h"
#include "reda/reda_engine.h"

namespace reda {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
  bool pass;
  std::string detail;
};

// Random English lexicon over vocab; at most max_entries headwords.
SynonymLexicon RandomLexicon(const std::vector<std::string>& vocab,
                             std::size_t max_entries, std::mt19937_64& gen,
                             oracle::Lexicon* mirror = nullptr) {
  SynonymLexicon lexicon;
  const std::size_t entries = gen() % (max_entries + 1);
  for (std::size_t e = 0; e < entries; ++e) {
    const std::string& head = vocab[gen() % vocab.size()];
    std::vector<std::string> synonyms;
    for (std::size_t s = 1 + gen() % 2; s > 0; --s) {
      synonyms.push_back(vocab[gen() % vocab.size()]);
    }
    lexicon.Add(head, synonyms);
  }
  if (mirror != nullptr) {
    mirror->clear();
    for (const std::string& head : lexicon.headwords()) {
      (*mirror)[head] = lexicon.SynonymsOf(head);
    }
  }
  return lexicon;
}

std::string RandomText(const std::vector<std::string>& vocab, std::size_t lo,
                       std::size_t hi, std::mt19937_64& gen) {
  std::string text;
  for (std::size_t n = lo + gen() % (hi - lo + 1); n > 0; --n) {
    if (!text.empty()) text += ' ';
    text += vocab[gen() % vocab.size()];
  }
  return text;
}

const std::vector<std::string> kVocab = {"a", "b", "c", "d", "e", "f",
                                         "g", "h", ",", ".", "i", "j"};

Verdict Criterion1() {
  const auto start = Clock::now();
  std::size_t checked = 0, mismatches = 0;
  for (const char* rate : {"0.1", "0.2", "0.3", "0.5"}) {
    const EditRate edit_rate = EditRate::FromDouble(std::stod(rate));
    for (std::size_t length = 0; length <= 200; ++length) {
      ++checked;
      if (NumEdits(edit_rate, length) != oracle::RoundedEdits(rate, length)) {
        ++mismatches;
      }
    }
  }
  const bool example = NumEdits(EditRate::FromDouble(0.1), 5) == 0;
  const double seconds = SecondsSince(start);
  return {mismatches == 0 && example && seconds < 1.0,
          fmt::format("{} cases, {} mismatches, (0.1,5)->{}, {:.3f}s", checked,
                      mismatches, NumEdits(EditRate::FromDouble(0.1), 5),
                      seconds)};
}

Verdict Criterion2() {
  std::mt19937_64 gen(2);
  const auto start = Clock::now();
  std::size_t violations = 0, outputs = 0;
  for (int call = 0; call < 10000; ++call) {
    const SynonymLexicon lexicon = RandomLexicon(kVocab, 6, gen);
    const std::string text = RandomText(kVocab, 1, 20, gen);
    const EditOp op = kAllEditOps[gen() % kAllEditOps.size()];
    Rng rng(gen());
    const auto out = Augment(text, op, 1 + gen() % 4, RedaConfig(), lexicon, rng);
    outputs += out.size();
    const std::set<std::string> unique(out.begin(), out.end());
    const std::string canonical =
        Detokenize(Tokenize(text, LanguageMode::kEnglish));
    if (unique.size() != out.size() || unique.count(text) ||
        unique.count(canonical)) {
      ++violations;
    }
  }
  const double seconds = SecondsSince(start);
  return {violations == 0 && seconds < 10.0,
          fmt::format("10000 calls, {} outputs, {} violations, {:.2f}s", outputs,
                      violations, seconds)};
}

Verdict Criterion3() {
  std::mt19937_64 gen(3);
  std::size_t sr = 0, rs = 0, rd = 0, ri = 0, identity = 0;
  const int cases = 2000;
  for (int trial = 0; trial < cases; ++trial) {
    const SynonymLexicon lexicon = RandomLexicon(kVocab, 6, gen);
    const TokenSeq seq =
        Tokenize(RandomText(kVocab, 1, 20, gen), LanguageMode::kEnglish);
    const std::size_t n = 1 + gen() % 6;
    Rng rng(gen());
    if (SynonymReplacement(seq, n, lexicon, rng).size() != seq.size()) ++sr;
    auto before = seq.tokens;
    auto after = RandomSwap(seq, n, rng).tokens;
    std::sort(before.begin(), before.end());
    std::sort(after.begin(), after.end());
    if (before != after) ++rs;
    const std::size_t deleted = RandomDeletion(seq, n, rng).size();
    if (deleted != seq.size() - std::min(n, seq.size() - 1) || deleted == 0) ++rd;
    const std::size_t insertions =
        lexicon.EligiblePositions(seq).empty() ? 0 : n;
    if (RandomInsertion(seq, n, lexicon, rng).size() != seq.size() + insertions) {
      ++ri;
    }
    if (SynonymReplacement(seq, 0, lexicon, rng) != seq ||
        RandomInsertion(seq, 0, lexicon, rng) != seq ||
        RandomSwap(seq, 0, rng) != seq || RandomDeletion(seq, 0, rng) != seq) {
      ++identity;
    }
  }
  const std::size_t total = sr + rs + rd + ri + identity;
  return {total == 0,
          fmt::format("{} cases per law; violations SR {} RS {} RD {} RI {} "
                      "n=0 {}",
                      cases, sr, rs, rd, ri, identity)};
}

using OpFn = std::function<TokenSeq(const TokenSeq&, std::size_t,
                                    const SynonymLexicon&, RandomSource&)>;

Verdict Criterion4() {
  std::mt19937_64 gen(4);
  const std::vector<std::string> vocab = {"a", "b", "c", "d", ","};
  const std::vector<std::pair<oracle::Op, OpFn>> ops = {
      {oracle::Op::kSR,
       [](const TokenSeq& s, std::size_t n, const SynonymLexicon& l,
          RandomSource& r) { return SynonymReplacement(s, n, l, r); }},
      {oracle::Op::kRI,
       [](const TokenSeq& s, std::size_t n, const SynonymLexicon& l,
          RandomSource& r) { return RandomInsertion(s, n, l, r); }},
      {oracle::Op::kRS, [](const TokenSeq& s, std::size_t n,
                           const SynonymLexicon&,
                           RandomSource& r) { return RandomSwap(s, n, r); }},
      {oracle::Op::kRD, [](const TokenSeq& s, std::size_t n,
                           const SynonymLexicon&,
                           RandomSource& r) { return RandomDeletion(s, n, r); }},
  };
  auto to_strings = [](const oracle::StateSet& states) {
    std::set<std::string> out;
    for (const oracle::State& s : states) {
      out.insert(Detokenize(TokenSeq{s.tokens, s.words, LanguageMode::kEnglish}));
    }
    return out;
  };
  const RedaConfig preset = RedaConfig::ExperimentPreset();
  const int instances = 250;
  std::size_t comparisons = 0, mismatches = 0;
  for (int instance = 0; instance < instances; ++instance) {
    oracle::Lexicon entries;
    const SynonymLexicon lexicon = RandomLexicon(vocab, 3, gen, &entries);
    const TokenSeq seq =
        Tokenize(RandomText(vocab, 1, 4, gen), LanguageMode::kEnglish);
    const oracle::State start{seq.tokens, seq.word_flags};
    for (std::size_t n = 1; n <= 2; ++n) {
      for (const auto& [op, run] : ops) {
        std::set<std::string> engine;
        oracle::ForEachDecisionPath([&](RandomSource& rng) {
          engine.insert(Detokenize(run(seq, n, lexicon, rng)));
        });
        ++comparisons;
        if (engine != to_strings(oracle::Apply({start}, op, n, entries))) {
          ++mismatches;
        }
      }
    }
    std::set<std::string> engine;
    oracle::ForEachDecisionPath([&](RandomSource& rng) {
      engine.insert(Detokenize(RandomMix(seq, preset, lexicon, rng)));
    });
    ++comparisons;
    if (engine != to_strings(oracle::ApplyMix(start, preset.rm_min_ops,
                                              preset.rm_max_ops,
                                              preset.rm_edits_per_op, entries))) {
      ++mismatches;
    }
  }
  return {mismatches == 0 && instances >= 200,
          fmt::format("{} instances, {} outcome-set comparisons, {} mismatches",
                      instances, comparisons, mismatches)};
}

Verdict Criterion5() {
  std::mt19937_64 gen(5);
  std::size_t violations = 0, produced = 0;
  for (int p = 0; p < 1000; ++p) {
    const SynonymLexicon lexicon = RandomLexicon(kVocab, 6, gen);
    const PairExample pair{RandomText(kVocab, 1, 12, gen),
                           RandomText(kVocab, 1, 12, gen),
                           static_cast<int>(gen() % 2)};
    std::vector<EditOp> ops;
    for (EditOp op : kAllEditOps) {
      if (gen() % 2) ops.push_back(op);
    }
    if (ops.empty()) ops.push_back(EditOp::kRS);
    const std::size_t n_aug = 1 + gen() % 2;
    const Augmenter augmenter(RedaConfig(), lexicon);
    Rng rng(gen());
    const auto out = AugmentPair(pair, ops, n_aug, augmenter, rng);
    produced += out.size();
    if (out.size() > 2 * n_aug * ops.size()) ++violations;
    for (const PairExample& augmented : out) {
      const bool a_same = augmented.text_a == pair.text_a;
      const bool b_same = augmented.text_b == pair.text_b;
      if (a_same == b_same || augmented.label != pair.label) ++violations;
    }
  }
  return {violations == 0, fmt::format("1000 pairs, {} augmented pairs, {} "
                                       "violations",
                                       produced, violations)};
}

Verdict Criterion6() {
  const std::vector<EditOp> ops(kAllEditOps.begin(), kAllEditOps.end());
  bool bound_held = true;
  std::string detail;
  for (double coverage : {0.3, 1.0}) {
    const Corpus corpus = GenerateToyCorpus(1000, 200, 6);
    const SynonymLexicon lexicon = GenerateToyLexicon(200, 6, coverage);
    const AugmentedCorpus result =
        AugmentCorpus(corpus, ops, RedaConfig(), lexicon);
    const double ratio =
        static_cast<double>(result.corpus.size()) / corpus.size();
    bound_held = bound_held && result.report.n_aug == 2 &&
                 result.corpus.size() <= 21 * corpus.size();
    detail += fmt::format("coverage {:.1f}: {} -> {} (ratio {:.2f}{}); ",
                          coverage, corpus.size(), result.corpus.size(), ratio,
                          ratio < 21.0 ? ", strictly below 21" : "");
  }
  return {bound_held, detail + "bound 21x"};
}

Verdict Criterion7() {
  std::mt19937_64 gen(7);
  const auto start = Clock::now();
  std::size_t coordinates = 0, failures = 0;
  double worst = 0.0;
  for (int instance = 0; instance < 50; ++instance) {
    const std::size_t vocab = 3 + gen() % 6;
    const MatcherParams params =
        oracle::RandomParams(vocab, 2 + gen() % 4, 2 + gen() % 4, 0.8, gen);
    const auto batch = oracle::RandomBatch(vocab, 1 + gen() % 5, 5, gen);
    const oracle::GradientCheck check = oracle::CheckGradients(params, batch);
    coordinates += check.coordinates;
    failures += check.failures;
    worst = std::max(worst, check.worst_relative_error);
  }
  const double seconds = SecondsSince(start);
  return {failures == 0 && seconds < 5.0,
          fmt::format("50 instances, {} coordinates, {} over 1e-4, worst "
                      "relative error {:.2e}, {:.2f}s",
                      coordinates, failures, worst, seconds)};
}

Verdict Criterion8() {
  std::mt19937_64 gen(8);
  double worst = 0.0;
  const MatcherParams params = MatcherParams::Zeros(50);
  for (int trial = 0; trial < 100; ++trial) {
    const auto batch = oracle::RandomBatch(50, 1 + gen() % 64, 12, gen);
    worst = std::max(worst, std::abs(LossAndGradients(params, batch, nullptr) -
                                     std::log(2.0)));
  }
  return {worst <= 1e-12,
          fmt::format("100 batches, max |loss - ln 2| = {:.3e}", worst)};
}

Verdict Criterion9() {
  const auto start = Clock::now();
  const Corpus corpus = GenerateToyCorpus(2800, 200, 9);
  const Splits splits = BalancedSplit(corpus.examples, 2000, 400, 400, 9);
  TrainConfig config;  // batch 64, lr 0.0005, 3 epochs
  config.seed = 9;
  const Tokenizer tokenizer(LanguageMode::kEnglish);
  const TrainResult result = Train(splits.train, splits.dev, config, tokenizer);
  const Metrics test = Evaluate(result.model, splits.test, tokenizer);
  const double seconds = SecondsSince(start);
  return {test.accuracy >= 0.95 && seconds < 60.0,
          fmt::format("test accuracy {:.4f} (dev {:.4f}) after {} epochs, "
                      "threshold 0.95, {:.2f}s",
                      test.accuracy, result.dev_history.back().accuracy,
                      config.epochs, seconds)};
}

Verdict Criterion10() {
  std::mt19937_64 gen(10);
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + gen() % 200;
    std::vector<int> labels(n), preds(n);
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = static_cast<int>(gen() % 2);
      preds[i] = static_cast<int>(gen() % 2);
    }
    const oracle::Confusion c = oracle::CountConfusion(labels, preds);
    const double accuracy = static_cast<double>(c.tp + c.tn) / n;
    const double precision =
        c.tp + c.fp == 0 ? 0.0 : static_cast<double>(c.tp) / (c.tp + c.fp);
    const double recall =
        c.tp + c.fn == 0 ? 0.0 : static_cast<double>(c.tp) / (c.tp + c.fn);
    const Metrics m = ComputeMetrics(labels, preds);
    if (m.accuracy != accuracy || m.precision != precision ||
        m.recall != recall || m.tp != c.tp || m.fp != c.fp || m.tn != c.tn ||
        m.fn != c.fn) {
      ++mismatches;
    }
  }
  return {mismatches == 0,
          fmt::format("1000 vectors, {} mismatches", mismatches)};
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int RunCli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::Run(args, out, err);
  if (code != 0) std::fprintf(stderr, "%s", err.str().c_str());
  return code;
}

Verdict Criterion11() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "reda_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto path = [&](const char* name) { return (dir / name).string(); };
  const auto start = Clock::now();
  bool ok = RunCli({"toygen", "--n", "3000", "--vocab", "200", "--seed", "11",
                    "--out", path("toy.tsv"), "--lex-out", path("lex.tsv")}) == 0;
  const std::vector<std::string> common = {
      "--in", path("toy.tsv"), "--lex", path("lex.tsv"), "--sizes",
      "200,500,1000,2000", "--seed", "11"};
  for (const char* name : {"sweep1.csv", "sweep2.csv"}) {
    std::vector<std::string> args = {"sweep", "--out", path(name)};
    args.insert(args.end(), common.begin(), common.end());
    ok = ok && RunCli(args) == 0;
  }
  const std::string first = ReadFile(path("sweep1.csv"));
  const bool identical = !first.empty() && first == ReadFile(path("sweep2.csv"));

  std::vector<std::string> args = {"ablate", "--out", path("ablate.csv"),
                                   "--sizes-out", path("sizes.csv")};
  args.insert(args.end(), common.begin(), common.end());
  ok = ok && RunCli(args) == 0;
  const std::string ablate = ReadFile(path("ablate.csv"));
  std::set<std::string> cells;
  std::istringstream lines(ablate);
  std::string line;
  std::getline(lines, line);
  const bool header =
      line ==
      "size,op,variant,accuracy,precision,recall,train_examples,"
      "augmented_examples,seed";
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    std::istringstream fields(line);
    std::string size, op, variant;
    std::getline(fields, size, ',');
    std::getline(fields, op, ',');
    std::getline(fields, variant, ',');
    cells.insert(size + "/" + op + "/" + variant);
  }
  const std::string sizes = ReadFile(path("sizes.csv"));
  const bool sizes_table =
      sizes.rfind("size,original,SR,RS,RI,RD,RM\n", 0) == 0 &&
      std::count(sizes.begin(), sizes.end(), '\n') == 5;
  const double seconds = SecondsSince(start);
  fs::remove_all(dir);
  const bool grid = header && rows == 4 * 5 * 2 && cells.size() == 40;
  return {ok && identical && grid && sizes_table && seconds < 300.0,
          fmt::format("sweep byte-identical: {}; ablate rows {} (distinct cells "
                      "{}), sizes table: {}; {:.1f}s",
                      identical ? "yes" : "no", rows, cells.size(),
                      sizes_table ? "yes" : "no", seconds)};
}

Verdict Criterion12() {
  const Corpus corpus = GenerateToyCorpus(10000, 200, 12);
  const SynonymLexicon lexicon = GenerateToyLexicon(200, 12);
  const std::vector<EditOp> ops(kAllEditOps.begin(), kAllEditOps.end());
  const auto start = Clock::now();
  const AugmentedCorpus result =
      AugmentCorpus(corpus, ops, RedaConfig(), lexicon, 1);
  const double seconds = SecondsSince(start);
  return {seconds < 10.0,
          fmt::format("10000 pairs -> {} pairs with 5 ops, single thread, "
                      "{:.2f}s",
                      result.corpus.size(), seconds)};
}

}  // namespace
}  // namespace reda

int main() {
  const std::vector<std::pair<const char*, reda::Verdict (*)()>> criteria = {
      {"edit-count rounding", reda::Criterion1},
      {"dedup guarantee", reda::Criterion2},
      {"operation laws", reda::Criterion3},
      {"outcome-set equivalence", reda::Criterion4},
      {"cross pairing", reda::Criterion5},
      {"augmented size bound", reda::Criterion6},
      {"gradient check", reda::Criterion7},
      {"zero-init loss", reda::Criterion8},
      {"toy training accuracy", reda::Criterion9},
      {"metrics oracle", reda::Criterion10},
      {"end-to-end determinism", reda::Criterion11},
      {"augmentation throughput", reda::Criterion12},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    reda::Verdict verdict;
    try {
      verdict = criteria[i].second();
    } catch (const std::exception& e) {
      verdict = {false, std::string("exception: ") + e.what()};
    }
    if (!verdict.pass) ++failed;
    std::printf("[criterion %zu] %s %s: %s\n", i + 1,
                verdict.pass ? "PASS" : "FAIL", criteria[i].first,
                verdict.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
