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

#include "reda/cli.h"

#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "reda/error.h"
#include "reda/experiment_runner.h"
#include "reda/matcher.h"
#include "reda/pair_pipeline.h"
#include "reda/reda_engine.h"
#include "reda/synonym_lexicon.h"

namespace reda::cli {

namespace {

struct CommonFlags {
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::string lang = "en";
  std::string lex;
};

struct RedaFlags {
  double rate_sr = 0.2;
  double rate_rs = 0.2;
  double rate_ri = 0.1;
  double rate_rd = 0.1;
  std::size_t naug_small = 2;
  std::size_t naug_large = 1;
  std::size_t threshold = 50000;
  std::size_t rm_min = 2;
  std::size_t rm_max = 2;
  std::size_t rm_edits = 1;
  std::size_t retry = 10;

  RedaConfig ToConfig(std::uint64_t seed) const {
    RedaConfig config = RedaConfig::ExperimentPreset();
    config.rate_sr = EditRate::FromDouble(rate_sr);
    config.rate_rs = EditRate::FromDouble(rate_rs);
    config.rate_ri = EditRate::FromDouble(rate_ri);
    config.rate_rd = EditRate::FromDouble(rate_rd);
    config.n_aug_small = naug_small;
    config.n_aug_large = naug_large;
    config.small_corpus_threshold = threshold;
    config.rm_min_ops = rm_min;
    config.rm_max_ops = rm_max;
    config.rm_edits_per_op = rm_edits;
    config.retry_factor = retry;
    config.seed = seed;
    config.Validate();
    return config;
  }
};

struct TrainFlags {
  std::size_t epochs = 3;
  std::size_t batch = 64;
  double lr = 0.0005;

  TrainConfig ToConfig(std::uint64_t seed) const {
    TrainConfig config;
    config.epochs = epochs;
    config.batch_size = batch;
    config.learning_rate = lr;
    config.seed = seed;
    config.Validate();
    return config;
  }
};

void AddCommon(CLI::App* app, CommonFlags& flags, bool with_lex) {
  app->add_option("--seed", flags.seed, "Master random seed");
  app->add_option("--jobs", flags.jobs, "Worker threads")
      ->check(CLI::PositiveNumber);
  app->add_option("--lang", flags.lang, "Text language")
      ->check(CLI::IsMember({"en", "zh"}));
  if (with_lex) {
    app->add_option("--lex", flags.lex, "Synonym lexicon TSV")
        ->check(CLI::ExistingFile);
  }
}

void AddReda(CLI::App* app, RedaFlags& flags) {
  const auto unit = CLI::Range(0.0, 1.0);
  app->add_option("--rate-sr", flags.rate_sr, "SR editing rate")->check(unit);
  app->add_option("--rate-rs", flags.rate_rs, "RS editing rate")->check(unit);
  app->add_option("--rate-ri", flags.rate_ri, "RI editing rate")->check(unit);
  app->add_option("--rate-rd", flags.rate_rd, "RD editing rate")->check(unit);
  app->add_option("--naug-small", flags.naug_small,
                  "Augmentations per text below the threshold");
  app->add_option("--naug-large", flags.naug_large,
                  "Augmentations per text at or above the threshold");
  app->add_option("--threshold", flags.threshold, "Small corpus threshold");
  app->add_option("--rm-min", flags.rm_min, "Fewest operations mixed by RM");
  app->add_option("--rm-max", flags.rm_max, "Most operations mixed by RM");
  app->add_option("--rm-edits", flags.rm_edits, "Edits per RM operation");
  app->add_option("--retry", flags.retry, "Attempts per requested augmentation");
}

void AddTrain(CLI::App* app, TrainFlags& flags) {
  app->add_option("--epochs", flags.epochs, "Training epochs");
  app->add_option("--batch", flags.batch, "Minibatch size");
  app->add_option("--lr", flags.lr, "Adam learning rate");
}

SynonymLexicon LexiconFor(const CommonFlags& flags) {
  const LanguageMode mode = ParseLanguageMode(flags.lang);
  return flags.lex.empty() ? SynonymLexicon(mode) : LoadLexicon(flags.lex, mode);
}

Tokenizer TokenizerFor(const CommonFlags& flags,
                       const SynonymLexicon& lexicon) {
  const LanguageMode mode = ParseLanguageMode(flags.lang);
  return Tokenizer(mode, mode == LanguageMode::kChinese
                             ? lexicon.SegmentationWords()
                             : nullptr);
}

std::vector<std::size_t> ParseSizes(const std::string& list) {
  std::vector<std::size_t> sizes;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw Error(ErrorCode::kInvalidArgument, "bad size '" + item + "'");
    }
    sizes.push_back(static_cast<std::size_t>(value));
  }
  if (sizes.empty()) throw Error(ErrorCode::kInvalidArgument, "no sizes given");
  return sizes;
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  file << text;
  if (!file) throw Error(ErrorCode::kIo, "write failed for '" + path + "'");
}

std::string FormatMetrics(const Metrics& m) {
  return fmt::format(
      "accuracy {:.6f} precision {:.6f} recall {:.6f} tp {} fp {} tn {} fn {}",
      m.accuracy, m.precision, m.recall, m.tp, m.fp, m.tn, m.fn);
}

}  // namespace

int Run(std::span<const std::string> args, std::ostream& out,
        std::ostream& err) {
  CLI::App app("Random text perturbation augmentation for text-pair corpora",
               "reda");
  app.require_subcommand(1);
  std::function<void()> action;

  // augment
  CommonFlags augment_common;
  RedaFlags augment_reda;
  std::string augment_in, augment_out, augment_report;
  std::string augment_ops = "sr,ri,rs,rd,rm";
  {
    CLI::App* cmd = app.add_subcommand("augment", "Augment a pair corpus");
    cmd->add_option("--in", augment_in, "Input corpus TSV")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", augment_out, "Augmented corpus TSV")->required();
    cmd->add_option("--ops", augment_ops, "Comma-separated operations");
    cmd->add_option("--report", augment_report, "Augmentation report CSV");
    AddCommon(cmd, augment_common, true);
    AddReda(cmd, augment_reda);
    cmd->callback([&] {
      action = [&] {
        const std::vector<EditOp> ops = ParseEditOps(augment_ops);
        const RedaConfig config = augment_reda.ToConfig(augment_common.seed);
        const SynonymLexicon lexicon = LexiconFor(augment_common);
        const Corpus corpus = LoadCorpus(augment_in);
        const AugmentedCorpus result =
            AugmentCorpus(corpus, ops, config, lexicon, augment_common.jobs);
        SaveCorpus(augment_out, result.corpus);
        if (!augment_report.empty()) {
          WriteText(augment_report, result.report.ToCsv());
        }
        out << result.report.ToKeyValue();
      };
    });
  }

  // stats
  std::string stats_in;
  {
    CLI::App* cmd = app.add_subcommand("stats", "Print label counts");
    cmd->add_option("--in", stats_in, "Corpus TSV")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->callback([&] {
      action = [&] {
        out << FormatCorpusStats(ComputeCorpusStats(LoadCorpus(stats_in)))
            << '\n';
      };
    });
  }

  // split
  CommonFlags split_common;
  std::string split_in, split_out, split_sizes;
  {
    CLI::App* cmd =
        app.add_subcommand("split", "Label-balanced train/dev/test split");
    cmd->add_option("--in", split_in, "Corpus TSV")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--sizes", split_sizes, "train,dev,test sizes")->required();
    cmd->add_option("--out", split_out,
                    "Output prefix; writes PREFIX.{train,dev,test}.tsv")
        ->required();
    cmd->add_option("--seed", split_common.seed, "Random seed");
    cmd->callback([&] {
      action = [&] {
        const std::vector<std::size_t> sizes = ParseSizes(split_sizes);
        if (sizes.size() != 3) {
          throw Error(ErrorCode::kInvalidArgument,
                      "--sizes needs exactly three values");
        }
        const Corpus corpus = LoadCorpus(split_in);
        const Splits splits = BalancedSplit(corpus.examples, sizes[0], sizes[1],
                                            sizes[2], split_common.seed);
        for (const Corpus* part : {&splits.train, &splits.dev, &splits.test}) {
          const std::string path =
              split_out + "." + SplitNameString(part->split) + ".tsv";
          SaveCorpus(path, *part);
          out << SplitNameString(part->split) << ' '
              << FormatCorpusStats(ComputeCorpusStats(*part)) << '\n';
        }
      };
    });
  }

  // train
  CommonFlags train_common;
  TrainFlags train_flags;
  std::string train_in, train_dev, train_out;
  {
    CLI::App* cmd = app.add_subcommand("train", "Train the CBOW matcher");
    cmd->add_option("--in", train_in, "Training corpus TSV")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--dev", train_dev, "Dev corpus TSV")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", train_out, "Model checkpoint path")->required();
    AddCommon(cmd, train_common, true);
    AddTrain(cmd, train_flags);
    cmd->callback([&] {
      action = [&] {
        const TrainConfig config = train_flags.ToConfig(train_common.seed);
        const SynonymLexicon lexicon = LexiconFor(train_common);
        const Tokenizer tokenizer = TokenizerFor(train_common, lexicon);
        const TrainResult result =
            Train(LoadCorpus(train_in), LoadCorpus(train_dev, SplitName::kDev),
                  config, tokenizer);
        SaveModel(train_out, result.model);
        for (std::size_t epoch = 0; epoch < result.dev_history.size(); ++epoch) {
          out << "epoch " << epoch + 1 << " dev "
              << FormatMetrics(result.dev_history[epoch]) << '\n';
        }
      };
    });
  }

  // eval
  CommonFlags eval_common;
  std::string eval_in, eval_model;
  {
    CLI::App* cmd = app.add_subcommand("eval", "Evaluate a checkpoint");
    cmd->add_option("--in", eval_in, "Corpus TSV")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--model", eval_model, "Model checkpoint")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--jobs", eval_common.jobs, "Worker threads")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--lex", eval_common.lex,
                    "Lexicon whose headwords segment Chinese text")
        ->check(CLI::ExistingFile);
    cmd->callback([&] {
      action = [&] {
        const Model model = LoadModel(eval_model);
        eval_common.lang = LanguageModeName(model.mode);
        const SynonymLexicon lexicon = LexiconFor(eval_common);
        const Tokenizer tokenizer = TokenizerFor(eval_common, lexicon);
        out << FormatMetrics(Evaluate(model, LoadCorpus(eval_in, SplitName::kTest),
                                      tokenizer, eval_common.jobs))
            << '\n';
      };
    });
  }

  // sweep / ablate share their flags.
  CommonFlags exp_common;
  RedaFlags exp_reda;
  TrainFlags exp_train;
  std::string exp_in, exp_out, exp_sizes, exp_sizes_out, exp_table_out;
  std::size_t exp_dev_n = 400;
  std::size_t exp_test_n = 400;
  auto add_experiment = [&](const char* name, const char* help,
                            OpsMode mode) {
    CLI::App* cmd = app.add_subcommand(name, help);
    cmd->add_option("--in", exp_in, "Corpus TSV")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", exp_out, "Result CSV")->required();
    cmd->add_option("--sizes", exp_sizes, "Comma-separated training sizes")
        ->required();
    cmd->add_option("--dev-n", exp_dev_n, "Held-out dev examples");
    cmd->add_option("--test-n", exp_test_n, "Held-out test examples");
    cmd->add_option("--table-out", exp_table_out, "Plain-text results table");
    cmd->add_option("--sizes-out", exp_sizes_out,
                    "CSV of augmented train set sizes");
    AddCommon(cmd, exp_common, true);
    AddReda(cmd, exp_reda);
    AddTrain(cmd, exp_train);
    cmd->callback([&, mode] {
      action = [&, mode] {
        SweepSpec spec;
        spec.sizes = ParseSizes(exp_sizes);
        spec.ops_mode = mode;
        spec.reda = exp_reda.ToConfig(exp_common.seed);
        spec.train = exp_train.ToConfig(exp_common.seed);
        spec.mode = ParseLanguageMode(exp_common.lang);
        spec.dev_size = exp_dev_n;
        spec.test_size = exp_test_n;
        spec.seed = exp_common.seed;
        spec.jobs = exp_common.jobs;
        const SynonymLexicon lexicon = LexiconFor(exp_common);
        const Corpus corpus = LoadCorpus(exp_in);
        const SweepReport report = mode == OpsMode::kCombined
                                       ? RunSizeSweep(corpus, spec, lexicon)
                                       : RunAblation(corpus, spec, lexicon);
        WriteText(exp_out, report.ToCsv());
        if (!exp_table_out.empty()) WriteText(exp_table_out, report.ToTable());
        if (!exp_sizes_out.empty()) {
          WriteText(exp_sizes_out, report.AugmentedSizesCsv());
        }
        out << report.ToTable() << '\n' << report.AugmentedSizesTable();
      };
    });
  };
  add_experiment("sweep", "Baseline vs. all-ops augmentation across sizes",
                 OpsMode::kCombined);
  add_experiment("ablate", "Baseline vs. each single operation across sizes",
                 OpsMode::kAblation);

  // toygen
  std::size_t toy_n = 0;
  std::size_t toy_vocab = 200;
  double toy_coverage = 0.3;
  std::uint64_t toy_seed = 0;
  std::string toy_out, toy_lex_out;
  {
    CLI::App* cmd = app.add_subcommand("toygen", "Write a synthetic corpus");
    cmd->add_option("--n", toy_n, "Number of pairs (even)")->required();
    cmd->add_option("--vocab", toy_vocab, "Vocabulary size (>= 20)");
    cmd->add_option("--seed", toy_seed, "Random seed");
    cmd->add_option("--out", toy_out, "Corpus TSV")->required();
    cmd->add_option("--lex-out", toy_lex_out, "Also write a toy lexicon TSV");
    cmd->add_option("--coverage", toy_coverage,
                    "Fraction of filler words given synonyms")
        ->check(CLI::Range(0.0, 1.0));
    cmd->callback([&] {
      action = [&] {
        const Corpus corpus = GenerateToyCorpus(toy_n, toy_vocab, toy_seed);
        SaveCorpus(toy_out, corpus);
        if (!toy_lex_out.empty()) {
          const SynonymLexicon lexicon =
              GenerateToyLexicon(toy_vocab, toy_seed, toy_coverage);
          std::string text;
          for (const std::string& headword : lexicon.headwords()) {
            text += headword;
            for (const std::string& synonym : lexicon.SynonymsOf(headword)) {
              text += '\t' + synonym;
            }
            text += '\n';
          }
          WriteText(toy_lex_out, text);
        }
        out << FormatCorpusStats(ComputeCorpusStats(corpus)) << '\n';
      };
    });
  }

  std::vector<const char*> argv = {"reda"};
  for (const std::string& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    action();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kInvalidArgument ? kExitUsage
                                                    : kExitDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitOk;
}

}  // namespace reda::cli
