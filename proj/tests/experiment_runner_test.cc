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
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "reda/error.h"

namespace reda {
namespace {

bool IsTopic(const std::string& token) { return token.rfind("topic", 0) == 0; }

std::set<std::string> Topics(const std::string& text) {
  std::set<std::string> topics;
  for (const std::string& token : Tokenize(text, LanguageMode::kEnglish).tokens) {
    if (IsTopic(token)) topics.insert(token);
  }
  return topics;
}

TEST(ToyCorpusTest, BalancedAndLawful) {
  const Corpus four = GenerateToyCorpus(4, 50, 1);
  EXPECT_EQ(ComputeCorpusStats(four), (CorpusStats{4, 2, 2}));

  const Corpus corpus = GenerateToyCorpus(500, 100, 2);
  EXPECT_EQ(ComputeCorpusStats(corpus), (CorpusStats{500, 250, 250}));
  for (const PairExample& pair : corpus.examples) {
    for (const std::string* text : {&pair.text_a, &pair.text_b}) {
      const TokenSeq seq = Tokenize(*text, LanguageMode::kEnglish);
      EXPECT_GE(seq.size(), 5u);
      EXPECT_LE(seq.size(), 9u);
      EXPECT_EQ(Topics(*text).size(), 1u);
    }
    const auto a = Topics(pair.text_a);
    const auto b = Topics(pair.text_b);
    EXPECT_EQ(pair.label == 1, a == b);
  }
}

TEST(ToyCorpusTest, DeterministicAndValidated) {
  EXPECT_EQ(GenerateToyCorpus(100, 40, 3).examples,
            GenerateToyCorpus(100, 40, 3).examples);
  EXPECT_NE(GenerateToyCorpus(100, 40, 3).examples,
            GenerateToyCorpus(100, 40, 4).examples);
  EXPECT_THROW(GenerateToyCorpus(5, 40, 1), Error);
  EXPECT_THROW(GenerateToyCorpus(4, 19, 1), Error);
}

TEST(ToyLexiconTest, CoversFillersOnly) {
  const SynonymLexicon lexicon = GenerateToyLexicon(200, 5);
  EXPECT_FALSE(lexicon.empty());
  EXPECT_LT(lexicon.size(), 200u);
  for (const std::string& headword : lexicon.headwords()) {
    EXPECT_FALSE(IsTopic(headword));
    const auto& synonyms = lexicon.SynonymsOf(headword);
    EXPECT_GE(synonyms.size(), 1u);
    EXPECT_LE(synonyms.size(), 3u);
  }
  EXPECT_EQ(GenerateToyLexicon(200, 5), lexicon);
}

SweepSpec SmallSpec() {
  SweepSpec spec;
  spec.sizes = {100, 200};
  spec.dev_size = 100;
  spec.test_size = 100;
  spec.train.embedding_dim = 16;
  spec.train.hidden_dim = 16;
  spec.seed = 11;
  return spec;
}

TEST(SizeSweepTest, Schema) {
  const Corpus corpus = GenerateToyCorpus(600, 60, 6);
  const SynonymLexicon lexicon = GenerateToyLexicon(60, 6);
  const SweepReport report = RunSizeSweep(corpus, SmallSpec(), lexicon);
  ASSERT_EQ(report.rows.size(), 4u);
  EXPECT_EQ(report.metadata.at("n_aug@100"), "2");
  EXPECT_EQ(report.metadata.at("sampling"), "label-stratified");
  for (std::size_t i = 0; i < report.rows.size(); i += 2) {
    const SweepRow& baseline = report.rows[i];
    const SweepRow& augmented = report.rows[i + 1];
    EXPECT_EQ(baseline.variant, "baseline");
    EXPECT_EQ(augmented.variant, "augmented");
    EXPECT_EQ(baseline.op, "combined");
    EXPECT_EQ(baseline.size, augmented.size);
    EXPECT_EQ(baseline.train_examples, baseline.size);
    EXPECT_EQ(augmented.train_examples, baseline.train_examples);
    EXPECT_EQ(baseline.augmented_examples, baseline.size);
    EXPECT_GT(augmented.augmented_examples, augmented.train_examples);
    EXPECT_LE(augmented.augmented_examples, 21 * augmented.train_examples);
  }

  const std::string csv = report.ToCsv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "size,op,variant,accuracy,precision,recall,train_examples,"
            "augmented_examples,seed");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  EXPECT_NE(report.ToTable().find("Accuracy"), std::string::npos);
}

TEST(SizeSweepTest, AveragesMatchRecomputation) {
  const Corpus corpus = GenerateToyCorpus(600, 60, 7);
  const SweepReport report =
      RunSizeSweep(corpus, SmallSpec(), GenerateToyLexicon(60, 7));
  for (const char* variant : {"baseline", "augmented"}) {
    double sum = 0.0;
    int count = 0;
    for (const SweepRow& row : report.rows) {
      if (row.variant != variant) continue;
      sum += row.metrics.accuracy;
      ++count;
    }
    EXPECT_DOUBLE_EQ(report.Average("combined", variant).accuracy, sum / count);
  }
}

TEST(SizeSweepTest, DeterministicAcrossJobs) {
  const Corpus corpus = GenerateToyCorpus(600, 60, 8);
  const SynonymLexicon lexicon = GenerateToyLexicon(60, 8);
  SweepSpec spec = SmallSpec();
  const std::string once = RunSizeSweep(corpus, spec, lexicon).ToCsv();
  spec.jobs = 3;
  EXPECT_EQ(RunSizeSweep(corpus, spec, lexicon).ToCsv(), once);
}

TEST(SizeSweepTest, RejectsBadSpecs) {
  const Corpus corpus = GenerateToyCorpus(400, 60, 9);
  const SynonymLexicon lexicon = GenerateToyLexicon(60, 9);
  SweepSpec spec = SmallSpec();
  spec.sizes = {200, 100};
  EXPECT_THROW(RunSizeSweep(corpus, spec, lexicon), Error);
  spec.sizes = {1000};
  EXPECT_THROW(RunSizeSweep(corpus, spec, lexicon), Error);
  spec.sizes = {};
  EXPECT_THROW(RunSizeSweep(corpus, spec, lexicon), Error);
}

TEST(AblationTest, FullGrid) {
  const Corpus corpus = GenerateToyCorpus(600, 60, 10);
  SweepSpec spec = SmallSpec();
  spec.ops_mode = OpsMode::kAblation;
  const SweepReport report =
      RunAblation(corpus, spec, GenerateToyLexicon(60, 10));
  ASSERT_EQ(report.rows.size(), 2u * 5u * 2u);
  std::set<std::pair<std::size_t, std::string>> cells;
  for (const SweepRow& row : report.rows) cells.insert({row.size, row.op});
  EXPECT_EQ(cells.size(), 10u);
  EXPECT_EQ(report.rows[1].op, "SR");
  EXPECT_EQ(report.rows[3].op, "RS");
  EXPECT_EQ(report.rows[5].op, "RI");
  EXPECT_EQ(report.rows[7].op, "RD");
  EXPECT_EQ(report.rows[9].op, "RM");

  // Every op shares one baseline per size.
  for (std::size_t i = 2; i < 10; i += 2) {
    EXPECT_EQ(report.rows[i].metrics, report.rows[0].metrics);
  }

  const std::string csv = report.ToCsv();
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2 * 5 * 2 + 1);
  const auto& sizes = report.augmented_sizes.at(100);
  EXPECT_EQ(sizes.at("original"), 100u);
  for (const char* op : {"SR", "RS", "RI", "RD", "RM"}) {
    EXPECT_GE(sizes.at(op), 100u);
    EXPECT_LE(sizes.at(op), 100u + 100u * 2u * 2u);
  }
  const std::string table = report.AugmentedSizesCsv();
  EXPECT_EQ(table.substr(0, table.find('\n')), "size,original,SR,RS,RI,RD,RM");
}

TEST(PrepareExperimentDataTest, DisjointBalancedHoldouts) {
  const Corpus corpus = GenerateToyCorpus(300, 40, 12);
  const ExperimentData data = PrepareExperimentData(corpus, 40, 60, 1);
  EXPECT_EQ(data.dev.size(), 40u);
  EXPECT_EQ(data.test.size(), 60u);
  EXPECT_EQ(data.pool.size(), 200u);
  EXPECT_EQ(ComputeCorpusStats(data.test).matched, 30u);
}

}  // namespace
}  // namespace reda
