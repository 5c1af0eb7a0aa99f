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

#include "reda/matcher.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "reda/error.h"
#include "reda/parallel.h"
#include "reda/random.h"

namespace reda {

Vocab::Vocab() { Add(kOovToken); }

std::uint32_t Vocab::Add(std::string_view token) {
  auto [it, inserted] = index_.try_emplace(
      std::string(token), static_cast<std::uint32_t>(tokens_.size()));
  if (inserted) tokens_.emplace_back(token);
  return it->second;
}

std::uint32_t Vocab::Lookup(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? kOov : it->second;
}

std::vector<std::uint32_t> Vocab::Encode(const TokenSeq& seq) const {
  std::vector<std::uint32_t> ids;
  ids.reserve(seq.size());
  for (const std::string& token : seq.tokens) ids.push_back(Lookup(token));
  return ids;
}

Vocab BuildVocab(const Corpus& corpus, const Tokenizer& tokenizer) {
  Vocab vocab;
  for (const PairExample& example : corpus.examples) {
    for (const std::string* text : {&example.text_a, &example.text_b}) {
      for (const std::string& token : tokenizer.Tokenize(*text).tokens) {
        vocab.Add(token);
      }
    }
  }
  return vocab;
}

MatcherParams MatcherParams::Zeros(std::size_t vocab_size,
                                   std::size_t embedding_dim,
                                   std::size_t hidden_dim) {
  MatcherParams params;
  params.embeddings = Matrix(vocab_size, embedding_dim);
  params.w1 = Matrix(2 * embedding_dim, hidden_dim);
  params.b1.assign(hidden_dim, 0.0);
  params.w2 = Matrix(hidden_dim, kNumClasses);
  params.b2.assign(kNumClasses, 0.0);
  return params;
}

std::size_t MatcherParams::num_values() const {
  std::size_t total = 0;
  for (std::span<const double> tensor : tensors()) total += tensor.size();
  return total;
}

std::array<std::span<double>, 5> MatcherParams::tensors() {
  return {std::span<double>(embeddings.data), std::span<double>(w1.data),
          std::span<double>(b1), std::span<double>(w2.data),
          std::span<double>(b2)};
}

std::array<std::span<const double>, 5> MatcherParams::tensors() const {
  return {std::span<const double>(embeddings.data),
          std::span<const double>(w1.data), std::span<const double>(b1),
          std::span<const double>(w2.data), std::span<const double>(b2)};
}

std::vector<EncodedPair> EncodeCorpus(const Corpus& corpus, const Vocab& vocab,
                                      const Tokenizer& tokenizer) {
  std::vector<EncodedPair> encoded;
  encoded.reserve(corpus.size());
  for (const PairExample& example : corpus.examples) {
    encoded.push_back({vocab.Encode(tokenizer.Tokenize(example.text_a)),
                       vocab.Encode(tokenizer.Tokenize(example.text_b)),
                       example.label});
  }
  return encoded;
}

namespace {

// Activations kept for the backward pass.
struct ForwardCache {
  std::vector<double> input;   // [enc_a, enc_b]
  std::vector<double> hidden;  // tanh output
  std::array<double, 2> logits{};
};

void CheckIndices(const MatcherParams& params,
                  std::span<const std::uint32_t> ids) {
  if (ids.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "text has no tokens");
  }
  for (std::uint32_t id : ids) {
    if (id >= params.vocab_size()) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "token index " + std::to_string(id) + " >= vocab size " +
                      std::to_string(params.vocab_size()));
    }
  }
}

void MeanPool(const MatcherParams& params, std::span<const std::uint32_t> ids,
              std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::uint32_t id : ids) {
    std::span<const double> row = params.embeddings.row(id);
    for (std::size_t d = 0; d < out.size(); ++d) out[d] += row[d];
  }
  const double scale = 1.0 / static_cast<double>(ids.size());
  for (double& value : out) value *= scale;
}

void ForwardInto(const MatcherParams& params, std::span<const std::uint32_t> a,
                 std::span<const std::uint32_t> b, ForwardCache& cache) {
  CheckIndices(params, a);
  CheckIndices(params, b);
  const std::size_t dim = params.embedding_dim();
  const std::size_t hidden = params.hidden_dim();
  cache.input.resize(2 * dim);
  MeanPool(params, a, std::span<double>(cache.input).first(dim));
  MeanPool(params, b, std::span<double>(cache.input).subspan(dim));

  cache.hidden.assign(params.b1.begin(), params.b1.end());
  for (std::size_t i = 0; i < 2 * dim; ++i) {
    const double x = cache.input[i];
    std::span<const double> w = params.w1.row(i);
    for (std::size_t j = 0; j < hidden; ++j) cache.hidden[j] += x * w[j];
  }
  for (double& h : cache.hidden) h = std::tanh(h);

  cache.logits = {params.b2[0], params.b2[1]};
  for (std::size_t j = 0; j < hidden; ++j) {
    cache.logits[0] += cache.hidden[j] * params.w2(j, 0);
    cache.logits[1] += cache.hidden[j] * params.w2(j, 1);
  }
}

// -log softmax(logits)[label], and softmax into probs.
double CrossEntropy(const std::array<double, 2>& logits, int label,
                    std::array<double, 2>& probs) {
  const double top = std::max(logits[0], logits[1]);
  const double e0 = std::exp(logits[0] - top);
  const double e1 = std::exp(logits[1] - top);
  const double sum = e0 + e1;
  probs = {e0 / sum, e1 / sum};
  return top + std::log(sum) - logits[static_cast<std::size_t>(label)];
}

void ZeroLike(const MatcherParams& like, MatcherParams& out) {
  if (out.embeddings.rows != like.embeddings.rows ||
      out.embeddings.cols != like.embeddings.cols ||
      out.hidden_dim() != like.hidden_dim()) {
    out = MatcherParams::Zeros(like.vocab_size(), like.embedding_dim(),
                               like.hidden_dim());
    return;
  }
  for (std::span<double> tensor : out.tensors()) {
    std::fill(tensor.begin(), tensor.end(), 0.0);
  }
}

}  // namespace

std::array<double, 2> Forward(const MatcherParams& params,
                              std::span<const std::uint32_t> a,
                              std::span<const std::uint32_t> b) {
  ForwardCache cache;
  ForwardInto(params, a, b, cache);
  return cache.logits;
}

double LossAndGradients(const MatcherParams& params,
                        std::span<const EncodedPair> batch,
                        MatcherParams* grads) {
  if (batch.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty batch");
  }
  if (grads != nullptr) ZeroLike(params, *grads);
  const std::size_t dim = params.embedding_dim();
  const std::size_t hidden = params.hidden_dim();
  const double inv_batch = 1.0 / static_cast<double>(batch.size());

  ForwardCache cache;
  std::vector<double> d_hidden(hidden);
  std::vector<double> d_input(2 * dim);
  double loss = 0.0;
  for (const EncodedPair& example : batch) {
    ForwardInto(params, example.a, example.b, cache);
    std::array<double, 2> probs;
    loss += CrossEntropy(cache.logits, example.label, probs);
    if (grads == nullptr) continue;

    // d loss / d logits = (softmax - onehot) / batch.
    std::array<double, 2> d_logits = {probs[0] * inv_batch,
                                      probs[1] * inv_batch};
    d_logits[static_cast<std::size_t>(example.label)] -= inv_batch;
    grads->b2[0] += d_logits[0];
    grads->b2[1] += d_logits[1];
    for (std::size_t j = 0; j < hidden; ++j) {
      const double h = cache.hidden[j];
      grads->w2(j, 0) += h * d_logits[0];
      grads->w2(j, 1) += h * d_logits[1];
      const double upstream =
          params.w2(j, 0) * d_logits[0] + params.w2(j, 1) * d_logits[1];
      d_hidden[j] = upstream * (1.0 - h * h);
      grads->b1[j] += d_hidden[j];
    }
    for (std::size_t i = 0; i < 2 * dim; ++i) {
      const double x = cache.input[i];
      std::span<double> gw = grads->w1.row(i);
      std::span<const double> w = params.w1.row(i);
      double back = 0.0;
      for (std::size_t j = 0; j < hidden; ++j) {
        gw[j] += x * d_hidden[j];
        back += w[j] * d_hidden[j];
      }
      d_input[i] = back;
    }
    // Mean pooling spreads the encoding gradient evenly over the tokens.
    auto scatter = [&](std::span<const std::uint32_t> ids,
                       std::size_t offset) {
      const double share = 1.0 / static_cast<double>(ids.size());
      for (std::uint32_t id : ids) {
        std::span<double> row = grads->embeddings.row(id);
        for (std::size_t d = 0; d < dim; ++d) {
          row[d] += d_input[offset + d] * share;
        }
      }
    };
    scatter(example.a, 0);
    scatter(example.b, dim);
  }
  return loss * inv_batch;
}

void TrainConfig::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
  };
  require(batch_size >= 1, "batch size must be positive");
  require(learning_rate > 0.0, "learning rate must be positive");
  require(epochs >= 1, "epochs must be at least 1");
  require(adam_beta1 > 0.0 && adam_beta1 < 1.0, "beta1 must lie in (0, 1)");
  require(adam_beta2 > 0.0 && adam_beta2 < 1.0, "beta2 must lie in (0, 1)");
  require(adam_eps > 0.0, "epsilon must be positive");
  require(init_scale > 0.0, "init scale must be positive");
  require(embedding_dim >= 1 && hidden_dim >= 1, "layer widths must be positive");
}

AdamOptimizer::AdamOptimizer(const MatcherParams& like,
                             const TrainConfig& config)
    : lr_(config.learning_rate),
      beta1_(config.adam_beta1),
      beta2_(config.adam_beta2),
      eps_(config.adam_eps),
      m_(MatcherParams::Zeros(like.vocab_size(), like.embedding_dim(),
                              like.hidden_dim())),
      v_(m_) {}

void AdamOptimizer::Step(MatcherParams& params, const MatcherParams& grads) {
  ++step_;
  const double t = static_cast<double>(step_);
  const double correction1 = 1.0 - std::pow(beta1_, t);
  const double correction2 = 1.0 - std::pow(beta2_, t);
  auto theta = params.tensors();
  auto g = grads.tensors();
  auto m = m_.tensors();
  auto v = v_.tensors();
  for (std::size_t k = 0; k < theta.size(); ++k) {
    for (std::size_t i = 0; i < theta[k].size(); ++i) {
      const double gi = g[k][i];
      m[k][i] = beta1_ * m[k][i] + (1.0 - beta1_) * gi;
      v[k][i] = beta2_ * v[k][i] + (1.0 - beta2_) * gi * gi;
      const double m_hat = m[k][i] / correction1;
      const double v_hat = v[k][i] / correction2;
      theta[k][i] -= lr_ * m_hat / (std::sqrt(v_hat) + eps_);
    }
  }
}

Metrics Metrics::FromCounts(std::size_t tp, std::size_t fp, std::size_t tn,
                            std::size_t fn) {
  auto ratio = [](std::size_t num, std::size_t den) {
    return den == 0 ? 0.0
                    : static_cast<double>(num) / static_cast<double>(den);
  };
  Metrics metrics;
  metrics.tp = tp;
  metrics.fp = fp;
  metrics.tn = tn;
  metrics.fn = fn;
  metrics.accuracy = ratio(tp + tn, tp + fp + tn + fn);
  metrics.precision = ratio(tp, tp + fp);
  metrics.recall = ratio(tp, tp + fn);
  return metrics;
}

Metrics ComputeMetrics(std::span<const int> labels,
                       std::span<const int> predictions) {
  if (labels.size() != predictions.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "labels and predictions differ in length");
  }
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (predictions[i] == 1) {
      (labels[i] == 1 ? tp : fp) += 1;
    } else {
      (labels[i] == 1 ? fn : tn) += 1;
    }
  }
  return Metrics::FromCounts(tp, fp, tn, fn);
}

namespace {

std::vector<int> PredictEncoded(const MatcherParams& params,
                                std::span<const EncodedPair> encoded,
                                std::size_t jobs) {
  std::vector<int> predictions(encoded.size());
  ParallelFor(encoded.size(), jobs, [&](std::size_t i) {
    const auto logits = Forward(params, encoded[i].a, encoded[i].b);
    predictions[i] = logits[1] > logits[0] ? 1 : 0;
  });
  return predictions;
}

Metrics EvaluateEncoded(const MatcherParams& params,
                        std::span<const EncodedPair> encoded,
                        std::size_t jobs) {
  std::vector<int> labels;
  labels.reserve(encoded.size());
  for (const EncodedPair& example : encoded) labels.push_back(example.label);
  return ComputeMetrics(labels, PredictEncoded(params, encoded, jobs));
}

}  // namespace

TrainResult Train(const Corpus& train, const Corpus& dev,
                  const TrainConfig& config, const Tokenizer& tokenizer) {
  config.Validate();
  if (train.empty() || dev.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "training and dev corpora must be non-empty");
  }
  TrainResult result;
  result.model.mode = tokenizer.mode();
  result.model.vocab = BuildVocab(train, tokenizer);
  const std::vector<EncodedPair> train_set =
      EncodeCorpus(train, result.model.vocab, tokenizer);
  const std::vector<EncodedPair> dev_set =
      EncodeCorpus(dev, result.model.vocab, tokenizer);

  MatcherParams& params = result.model.params;
  params = MatcherParams::Zeros(result.model.vocab.size(), config.embedding_dim,
                                config.hidden_dim);
  Rng init_rng(config.seed);
  for (std::span<double> tensor : params.tensors()) {
    for (double& value : tensor) {
      value = init_rng.Uniform(-config.init_scale, config.init_scale);
    }
  }

  AdamOptimizer optimizer(params, config);
  Rng shuffle_rng(DeriveSeed(config.seed, 1));
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  MatcherParams grads;
  std::vector<EncodedPair> batch;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    shuffle_rng.Shuffle(order);
    for (std::size_t start = 0; start < order.size();
         start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      batch.clear();
      for (std::size_t i = start; i < end; ++i) {
        batch.push_back(train_set[order[i]]);
      }
      result.batch_losses.push_back(LossAndGradients(params, batch, &grads));
      optimizer.Step(params, grads);
    }
    result.dev_history.push_back(EvaluateEncoded(params, dev_set, 1));
  }
  return result;
}

std::vector<int> Predict(const Model& model, const Corpus& corpus,
                         const Tokenizer& tokenizer, std::size_t jobs) {
  return PredictEncoded(model.params,
                        EncodeCorpus(corpus, model.vocab, tokenizer), jobs);
}

Metrics Evaluate(const Model& model, const Corpus& corpus,
                 const Tokenizer& tokenizer, std::size_t jobs) {
  if (corpus.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "cannot evaluate an empty corpus");
  }
  return EvaluateEncoded(model.params,
                         EncodeCorpus(corpus, model.vocab, tokenizer), jobs);
}

namespace {

constexpr char kMagic[8] = {'R', 'E', 'D', 'A', 'M', 'D', 'L', '1'};

void PutU64(std::ostream& out, std::uint64_t value) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) {
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  }
  out.write(bytes, 8);
}

std::uint64_t GetU64(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) {
    throw Error(ErrorCode::kParse, "truncated checkpoint");
  }
  std::uint64_t value = 0;
  for (int i = 7; i >= 0; --i) value = (value << 8) | bytes[i];
  return value;
}

void PutTensor(std::ostream& out, std::span<const double> values) {
  for (double value : values) PutU64(out, std::bit_cast<std::uint64_t>(value));
}

void GetTensor(std::istream& in, std::span<double> values) {
  for (double& value : values) value = std::bit_cast<double>(GetU64(in));
}

}  // namespace

void SaveModel(const std::filesystem::path& path, const Model& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  const MatcherParams& params = model.params;
  out.write(kMagic, sizeof(kMagic));
  PutU64(out, model.mode == LanguageMode::kChinese ? 1 : 0);
  PutU64(out, params.vocab_size());
  PutU64(out, params.embedding_dim());
  PutU64(out, params.hidden_dim());
  for (std::span<const double> tensor : params.tensors()) PutTensor(out, tensor);
  PutU64(out, model.vocab.size());
  for (const std::string& token : model.vocab.tokens()) {
    PutU64(out, token.size());
    out.write(token.data(), static_cast<std::streamsize>(token.size()));
  }
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path.string() + "'");
}

Model LoadModel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  char magic[sizeof(kMagic)];
  if (!in.read(magic, sizeof(magic)) ||
      std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw Error(ErrorCode::kParse, "not a model checkpoint");
  }
  Model model;
  model.mode = GetU64(in) == 1 ? LanguageMode::kChinese : LanguageMode::kEnglish;
  const std::uint64_t vocab_size = GetU64(in);
  const std::uint64_t embedding_dim = GetU64(in);
  const std::uint64_t hidden_dim = GetU64(in);
  constexpr std::uint64_t kSane = std::uint64_t{1} << 32;
  if (vocab_size >= kSane || embedding_dim >= kSane || hidden_dim >= kSane) {
    throw Error(ErrorCode::kParse, "implausible checkpoint dimensions");
  }
  model.params = MatcherParams::Zeros(vocab_size, embedding_dim, hidden_dim);
  for (std::span<double> tensor : model.params.tensors()) GetTensor(in, tensor);

  const std::uint64_t tokens = GetU64(in);
  if (tokens != vocab_size) {
    throw Error(ErrorCode::kParse, "vocabulary size does not match embeddings");
  }
  for (std::uint64_t i = 0; i < tokens; ++i) {
    const std::uint64_t length = GetU64(in);
    if (length >= kSane) throw Error(ErrorCode::kParse, "implausible token length");
    std::string token(length, '\0');
    if (!in.read(token.data(), static_cast<std::streamsize>(length))) {
      throw Error(ErrorCode::kParse, "truncated checkpoint");
    }
    if (model.vocab.Add(token) != i) {
      throw Error(ErrorCode::kParse, "vocabulary is not dense or has duplicates");
    }
  }
  return model;
}

}  // namespace reda
