//
// Copyright 2026 The synaug Authors
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

#ifndef SYNAUG_SGNS_H_
#define SYNAUG_SGNS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <vector>

#include "synaug/corpus.h"
#include "synaug/embed_io.h"
#include "synaug/error.h"
#include "synaug/matrix.h"
#include "synaug/pairgen.h"
#include "synaug/random.h"

namespace synaug {

// Skip-gram parameters: `input` holds focus vectors, `output` context
// vectors. Both are vocab_size x dim.
struct EmbeddingModel {
  Matrix input;
  Matrix output;

  std::size_t vocab_size() const { return input.rows(); }
  std::size_t dim() const { return input.cols(); }
  bool AllFinite() const { return input.AllFinite() && output.AllFinite(); }

  friend bool operator==(const EmbeddingModel&, const EmbeddingModel&) = default;
};

// Input rows i.i.d. uniform on [-0.5/dim, 0.5/dim], output rows zero.
EmbeddingModel InitRandom(std::size_t vocab_size, std::size_t dim,
                          std::uint64_t seed);

struct PretrainedInit {
  EmbeddingModel model;
  std::size_t found = 0;
  // found / vocab size.
  double coverage = 0.0;
};

// Copies input rows from `pretrained` for vocabulary words it contains;
// other input rows get the InitRandom values. Output rows are drawn from
// the same uniform distribution as input rows (pretrained releases carry
// no output vectors). Throws Error when pretrained.dim() != dim.
PretrainedInit InitPretrained(const Vocabulary& vocab,
                              const Embeddings& pretrained, std::size_t dim,
                              std::uint64_t seed);

// Input vectors labelled with vocabulary words.
Embeddings InputEmbeddings(const EmbeddingModel& model, const Vocabulary& vocab);

// Unigram noise: P(w) proportional to count(w)^exponent.
class NoiseDistribution {
 public:
  NoiseDistribution(const Vocabulary& vocab, double exponent = 0.75);

  double Probability(WordId id) const { return probabilities_.at(id); }
  std::span<const double> probabilities() const { return probabilities_; }
  double exponent() const { return exponent_; }
  std::size_t size() const { return probabilities_.size(); }

  WordId Sample(Rng& rng) const;

 private:
  double exponent_;
  std::vector<double> probabilities_;
  std::vector<double> cumulative_;
};

double Sigmoid(double x);

// -log s(u_ctx . v) - sum_n log s(-u_n . v), with v the focus input row
// and u output rows.
double PairLoss(const EmbeddingModel& model, WordId focus, WordId context,
                std::span<const WordId> negatives);

// Row-sparse gradient. Rows appear in first-touch order, which keeps the
// update order deterministic.
class SparseGradient {
 public:
  explicit SparseGradient(std::size_t dim) : dim_(dim) {}

  std::span<double> Row(WordId id);
  std::span<const double> Find(WordId id) const;
  std::span<const WordId> ids() const { return ids_; }
  void Clear();

 private:
  std::size_t dim_;
  std::vector<WordId> ids_;
  std::unordered_map<WordId, std::size_t> slot_;
  std::vector<double> values_;
};

// Adds the gradient of PairLoss w.r.t. the focus input row and the context
// and negative output rows. Returns the loss.
double AccumulatePairGradient(const EmbeddingModel& model, WordId focus,
                              WordId context, std::span<const WordId> negatives,
                              SparseGradient& input_grad,
                              SparseGradient& output_grad);

enum class InitMode { kRandom, kPretrained };

struct TrainConfig {
  std::size_t dim = 300;
  int negatives = 5;
  int epochs = 10;
  double learning_rate = 0.01;
  std::size_t batch_size = 10;
  std::uint64_t seed = 0;
  InitMode init_mode = InitMode::kRandom;
  double noise_exponent = 0.75;
  // 1 is the deterministic mode. More threads train disjoint shards of
  // each epoch concurrently with unsynchronized (Hogwild) updates.
  int threads = 1;
};

// Throws Error naming the first invalid field.
void ValidateConfig(const TrainConfig& config);

// Draws k = config.negatives noise words per pair, rejecting the pair's
// true context. Sums the pair gradients over the batch and applies them
// once with step config.learning_rate. Returns the mean pre-update loss.
double TrainStep(EmbeddingModel& model, std::span<const WordPair> batch,
                 const NoiseDistribution& noise, const TrainConfig& config,
                 Rng& rng);

class TrainingError : public Error {
 public:
  TrainingError(int epoch, std::size_t batch, double loss);

  int epoch() const { return epoch_; }
  std::size_t batch() const { return batch_; }

 private:
  int epoch_;
  std::size_t batch_;
};

struct TrainResult {
  EmbeddingModel model;
  // Mean pair loss per epoch.
  std::vector<double> epoch_losses;
};

// Called after each epoch with its 1-based index, mean loss and the model.
using EpochCallback = std::function<void(int epoch, double mean_loss,
                                         const EmbeddingModel& model)>;

// Runs config.epochs passes over `dataset` starting from `initial`. Each
// epoch reshuffles with DeriveSeed(seed, "shuffle", epoch) and draws
// negatives from DeriveSeed(seed, "negatives", epoch). Throws TrainingError
// on a non-finite batch loss.
TrainResult Train(const PairDataset& dataset, const Vocabulary& vocab,
                  const TrainConfig& config, EmbeddingModel initial,
                  const EpochCallback& on_epoch = {});

// Same, starting from InitRandom(vocab.size(), dim, seed).
TrainResult Train(const PairDataset& dataset, const Vocabulary& vocab,
                  const TrainConfig& config,
                  const EpochCallback& on_epoch = {});

// `epoch,mean_loss` with 1-based epochs.
void WriteLossCsv(std::span<const double> epoch_losses, std::ostream& out);

}  // namespace synaug

#endif  // SYNAUG_SGNS_H_
