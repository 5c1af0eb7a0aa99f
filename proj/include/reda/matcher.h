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

#ifndef REDA_MATCHER_H_
#define REDA_MATCHER_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "reda/pair_pipeline.h"
#include "reda/text_model.h"

namespace reda {

// Token -> dense index. Index 0 is reserved for out-of-vocabulary tokens.
class Vocab {
 public:
  static constexpr std::uint32_t kOov = 0;
  static constexpr std::string_view kOovToken = "<oov>";

  Vocab();

  // Returns the existing index or assigns the next one.
  std::uint32_t Add(std::string_view token);
  std::uint32_t Lookup(std::string_view token) const;
  std::vector<std::uint32_t> Encode(const TokenSeq& seq) const;

  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  friend bool operator==(const Vocab& a, const Vocab& b) {
    return a.tokens_ == b.tokens_;
  }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// Both sides of every example, indexed by first appearance.
Vocab BuildVocab(const Corpus& corpus, const Tokenizer& tokenizer);

// Row-major dense matrix of doubles.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data[r * cols + c];
  }
  std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
  std::span<const double> row(std::size_t r) const {
    return {data.data() + r * cols, cols};
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

inline constexpr std::size_t kEmbeddingDim = 128;
inline constexpr std::size_t kHiddenDim = 128;
inline constexpr std::size_t kNumClasses = 2;

// CBOW matcher: each text is the mean of its token embeddings; the two
// encodings are concatenated and passed through Linear -> Tanh -> Linear to
// two logits.
struct MatcherParams {
  Matrix embeddings;        // vocab x embedding_dim
  Matrix w1;                // 2*embedding_dim x hidden_dim
  std::vector<double> b1;   // hidden_dim
  Matrix w2;                // hidden_dim x 2
  std::vector<double> b2;   // 2

  static MatcherParams Zeros(std::size_t vocab_size,
                             std::size_t embedding_dim = kEmbeddingDim,
                             std::size_t hidden_dim = kHiddenDim);

  std::size_t vocab_size() const { return embeddings.rows; }
  std::size_t embedding_dim() const { return embeddings.cols; }
  std::size_t hidden_dim() const { return w1.cols; }
  std::size_t num_values() const;

  // The five tensors in a fixed order: embeddings, w1, b1, w2, b2.
  std::array<std::span<double>, 5> tensors();
  std::array<std::span<const double>, 5> tensors() const;

  friend bool operator==(const MatcherParams&, const MatcherParams&) = default;
};

// Token indices of both texts plus the gold label.
struct EncodedPair {
  std::vector<std::uint32_t> a;
  std::vector<std::uint32_t> b;
  int label = 0;
};

std::vector<EncodedPair> EncodeCorpus(const Corpus& corpus, const Vocab& vocab,
                                      const Tokenizer& tokenizer);

// Throws Error(kIndexOutOfRange) for an index >= vocab size and
// Error(kInvalidArgument) for an empty side.
std::array<double, 2> Forward(const MatcherParams& params,
                              std::span<const std::uint32_t> a,
                              std::span<const std::uint32_t> b);

// Mean softmax cross entropy over the batch. When grads is non-null it is
// overwritten with the exact gradient of that loss.
double LossAndGradients(const MatcherParams& params,
                        std::span<const EncodedPair> batch,
                        MatcherParams* grads);

struct TrainConfig {
  std::size_t batch_size = 64;
  double learning_rate = 0.0005;
  std::size_t epochs = 3;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  double init_scale = 0.05;
  std::uint64_t seed = 0;
  std::size_t embedding_dim = kEmbeddingDim;
  std::size_t hidden_dim = kHiddenDim;

  // Throws Error(kInvalidArgument).
  void Validate() const;
};

// Adam with bias correction. First and second moments have the parameter
// shapes.
class AdamOptimizer {
 public:
  AdamOptimizer(const MatcherParams& like, const TrainConfig& config);

  // Advances the step counter, then updates params in place.
  void Step(MatcherParams& params, const MatcherParams& grads);
  std::size_t steps() const { return step_; }

 private:
  double lr_;
  double beta1_;
  double beta2_;
  double eps_;
  std::size_t step_ = 0;
  MatcherParams m_;
  MatcherParams v_;
};

struct Metrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  // Label 1 is the positive class; a zero denominator yields 0.
  static Metrics FromCounts(std::size_t tp, std::size_t fp, std::size_t tn,
                            std::size_t fn);

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

Metrics ComputeMetrics(std::span<const int> labels,
                       std::span<const int> predictions);

struct Model {
  MatcherParams params;
  Vocab vocab;
  LanguageMode mode = LanguageMode::kEnglish;

  friend bool operator==(const Model&, const Model&) = default;
};

struct TrainResult {
  Model model;
  // Dev metrics after each epoch.
  std::vector<Metrics> dev_history;
  // Mean training loss of every minibatch, before its update.
  std::vector<double> batch_losses;
};

// Uniform init in [-init_scale, init_scale], a seeded shuffle every epoch,
// one Adam step per minibatch, no early stopping. Deterministic given seed.
// Throws Error(kEmptyCorpus).
TrainResult Train(const Corpus& train, const Corpus& dev,
                  const TrainConfig& config, const Tokenizer& tokenizer);

// Predicts argmax of the logits (ties go to label 0).
std::vector<int> Predict(const Model& model, const Corpus& corpus,
                         const Tokenizer& tokenizer, std::size_t jobs = 1);

Metrics Evaluate(const Model& model, const Corpus& corpus,
                 const Tokenizer& tokenizer, std::size_t jobs = 1);

// Binary checkpoint: magic, dimensions, the five tensors as little-endian
// IEEE-754 doubles in row-major order, then the vocabulary. Round-trips
// bit-exactly.
void SaveModel(const std::filesystem::path& path, const Model& model);
Model LoadModel(const std::filesystem::path& path);

}  // namespace reda

#endif  // REDA_MATCHER_H_
