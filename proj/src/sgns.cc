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

#include "synaug/sgns.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>
#include <thread>

namespace synaug {
namespace {

double LogSigmoid(double x) {
  return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

void FillUniform(Matrix& m, double half_width, Rng& rng) {
  for (double& x : m.data()) x = (rng.Uniform() - 0.5) * 2.0 * half_width;
}

// Reads rows straight from the model (single-threaded training).
struct DirectView {
  const EmbeddingModel& model;

  std::span<const double> Input(WordId id) { return model.input.Row(id); }
  std::span<const double> Output(WordId id) { return model.output.Row(id); }
};

// Snapshots rows with relaxed atomic loads so concurrent writers are
// well-defined; used by the Hogwild path.
class SharedView {
 public:
  SharedView(EmbeddingModel& model) : model_(model) {}

  std::span<const double> Input(WordId id) {
    return Load(model_.input, input_, id);
  }
  std::span<const double> Output(WordId id) {
    return Load(model_.output, output_, id);
  }
  void Clear() {
    input_.Clear();
    output_.Clear();
  }

 private:
  std::span<const double> Load(Matrix& matrix, SparseGradient& cache,
                               WordId id) {
    std::span<const double> cached = cache.Find(id);
    if (!cached.empty()) return cached;
    std::span<double> dst = cache.Row(id);
    std::span<double> src = matrix.Row(id);
    for (std::size_t i = 0; i < dst.size(); ++i) {
      dst[i] = std::atomic_ref<double>(src[i]).load(std::memory_order_relaxed);
    }
    return dst;
  }

  EmbeddingModel& model_;
  SparseGradient input_{model_.dim()};
  SparseGradient output_{model_.dim()};
};

template <typename View>
double AccumulateWithView(View& view, WordId focus, WordId context,
                          std::span<const WordId> negatives,
                          SparseGradient& input_grad,
                          SparseGradient& output_grad) {
  // Copies: views and gradient rows may reallocate while we work.
  thread_local std::vector<double> v, dv;
  const std::span<const double> focus_row = view.Input(focus);
  v.assign(focus_row.begin(), focus_row.end());
  const std::size_t dim = v.size();
  dv.assign(dim, 0.0);

  auto term = [&](WordId word, double label) {
    const std::span<const double> u = view.Output(word);
    const double score = Dot(u, v);
    // d/dscore of -log s(score) is s(score) - 1; of -log s(-score) is
    // s(score).
    const double g = Sigmoid(score) - label;
    std::span<double> du = output_grad.Row(word);
    for (std::size_t i = 0; i < dim; ++i) {
      du[i] += g * v[i];
      dv[i] += g * u[i];
    }
    return label > 0.0 ? -LogSigmoid(score) : -LogSigmoid(-score);
  };

  double loss = term(context, 1.0);
  for (WordId n : negatives) loss += term(n, 0.0);

  std::span<double> grad_v = input_grad.Row(focus);
  for (std::size_t i = 0; i < dim; ++i) grad_v[i] += dv[i];
  return loss;
}

struct Workspace {
  explicit Workspace(std::size_t dim) : input_grad(dim), output_grad(dim) {}

  SparseGradient input_grad;
  SparseGradient output_grad;
  std::vector<WordId> negatives;
};

void DrawNegatives(std::span<const WordPair> batch,
                   const NoiseDistribution& noise, int k, Rng& rng,
                   std::vector<WordId>& out) {
  out.resize(batch.size() * static_cast<std::size_t>(k));
  for (std::size_t p = 0; p < batch.size(); ++p) {
    const WordId context = batch[p].context;
    if (noise.Probability(context) >= 1.0) {
      throw Error("noise distribution has no mass outside the context word");
    }
    for (int j = 0; j < k; ++j) {
      WordId n;
      do {
        n = noise.Sample(rng);
      } while (n == context);
      out[p * k + j] = n;
    }
  }
}

template <typename View>
double BatchGradient(View& view, std::span<const WordPair> batch,
                     const NoiseDistribution& noise, int k, Rng& rng,
                     Workspace& ws) {
  ws.input_grad.Clear();
  ws.output_grad.Clear();
  DrawNegatives(batch, noise, k, rng, ws.negatives);
  double loss = 0.0;
  for (std::size_t p = 0; p < batch.size(); ++p) {
    std::span<const WordId> negs(ws.negatives.data() + p * k,
                                 static_cast<std::size_t>(k));
    loss += AccumulateWithView(view, batch[p].focus, batch[p].context, negs,
                               ws.input_grad, ws.output_grad);
  }
  return loss / static_cast<double>(batch.size());
}

void ApplyDirect(Matrix& matrix, const SparseGradient& grad, double lr) {
  for (WordId id : grad.ids()) {
    std::span<double> row = matrix.Row(id);
    std::span<const double> g = grad.Find(id);
    for (std::size_t i = 0; i < row.size(); ++i) row[i] -= lr * g[i];
  }
}

void ApplyShared(Matrix& matrix, const SparseGradient& grad, double lr) {
  for (WordId id : grad.ids()) {
    std::span<double> row = matrix.Row(id);
    std::span<const double> g = grad.Find(id);
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::atomic_ref<double> cell(row[i]);
      cell.store(cell.load(std::memory_order_relaxed) - lr * g[i],
                 std::memory_order_relaxed);
    }
  }
}

double StepDirect(EmbeddingModel& model, std::span<const WordPair> batch,
                  const NoiseDistribution& noise, const TrainConfig& config,
                  Rng& rng, Workspace& ws) {
  DirectView view{model};
  const double loss =
      BatchGradient(view, batch, noise, config.negatives, rng, ws);
  ApplyDirect(model.input, ws.input_grad, config.learning_rate);
  ApplyDirect(model.output, ws.output_grad, config.learning_rate);
  return loss;
}

}  // namespace

EmbeddingModel InitRandom(std::size_t vocab_size, std::size_t dim,
                          std::uint64_t seed) {
  if (vocab_size == 0 || dim == 0) {
    throw Error("model dimensions must be positive");
  }
  EmbeddingModel model{Matrix(vocab_size, dim), Matrix(vocab_size, dim)};
  Rng rng(DeriveSeed(seed, "init-input"));
  FillUniform(model.input, 0.5 / static_cast<double>(dim), rng);
  return model;
}

PretrainedInit InitPretrained(const Vocabulary& vocab,
                              const Embeddings& pretrained, std::size_t dim,
                              std::uint64_t seed) {
  if (pretrained.dim() != dim) {
    throw Error("pretrained embeddings have dimension " +
                std::to_string(pretrained.dim()) + ", expected " +
                std::to_string(dim));
  }
  PretrainedInit init;
  init.model = InitRandom(vocab.size(), dim, seed);
  Rng rng(DeriveSeed(seed, "init-output"));
  FillUniform(init.model.output, 0.5 / static_cast<double>(dim), rng);

  std::unordered_map<std::string_view, std::size_t> row_of;
  row_of.reserve(pretrained.size());
  for (std::size_t i = 0; i < pretrained.size(); ++i) {
    row_of.emplace(pretrained.words[i], i);
  }
  for (std::size_t id = 0; id < vocab.size(); ++id) {
    auto it = row_of.find(vocab.Word(static_cast<WordId>(id)));
    if (it == row_of.end()) continue;
    auto src = pretrained.vectors.Row(it->second);
    std::copy(src.begin(), src.end(), init.model.input.Row(id).begin());
    ++init.found;
  }
  init.coverage =
      static_cast<double>(init.found) / static_cast<double>(vocab.size());
  return init;
}

Embeddings InputEmbeddings(const EmbeddingModel& model,
                           const Vocabulary& vocab) {
  if (model.vocab_size() != vocab.size()) {
    throw Error("model has " + std::to_string(model.vocab_size()) +
                " rows but vocabulary has " + std::to_string(vocab.size()) +
                " words");
  }
  return Embeddings{vocab.words(), model.input};
}

NoiseDistribution::NoiseDistribution(const Vocabulary& vocab, double exponent)
    : exponent_(exponent) {
  if (vocab.empty()) throw Error("noise distribution over empty vocabulary");
  probabilities_.resize(vocab.size());
  double total = 0.0;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    const auto count = static_cast<double>(vocab.Count(static_cast<WordId>(i)));
    if (count <= 0.0) throw Error("vocabulary counts must be positive");
    probabilities_[i] = std::pow(count, exponent);
    total += probabilities_[i];
  }
  for (double& p : probabilities_) p /= total;
  cumulative_.resize(probabilities_.size());
  std::partial_sum(probabilities_.begin(), probabilities_.end(),
                   cumulative_.begin());
}

WordId NoiseDistribution::Sample(Rng& rng) const {
  const double u = rng.Uniform() * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  return static_cast<WordId>(it - cumulative_.begin());
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double PairLoss(const EmbeddingModel& model, WordId focus, WordId context,
                std::span<const WordId> negatives) {
  const auto v = model.input.Row(focus);
  double loss = -LogSigmoid(Dot(model.output.Row(context), v));
  for (WordId n : negatives) loss -= LogSigmoid(-Dot(model.output.Row(n), v));
  return loss;
}

std::span<double> SparseGradient::Row(WordId id) {
  auto [it, inserted] = slot_.try_emplace(id, ids_.size());
  if (inserted) {
    ids_.push_back(id);
    values_.resize(values_.size() + dim_, 0.0);
  }
  return {values_.data() + it->second * dim_, dim_};
}

std::span<const double> SparseGradient::Find(WordId id) const {
  auto it = slot_.find(id);
  if (it == slot_.end()) return {};
  return {values_.data() + it->second * dim_, dim_};
}

void SparseGradient::Clear() {
  ids_.clear();
  slot_.clear();
  values_.clear();
}

double AccumulatePairGradient(const EmbeddingModel& model, WordId focus,
                              WordId context, std::span<const WordId> negatives,
                              SparseGradient& input_grad,
                              SparseGradient& output_grad) {
  DirectView view{model};
  return AccumulateWithView(view, focus, context, negatives, input_grad,
                            output_grad);
}

void ValidateConfig(const TrainConfig& config) {
  if (config.dim == 0) throw Error("dim must be positive");
  if (config.negatives < 1) throw Error("negatives must be positive");
  if (config.epochs < 1) throw Error("epochs must be positive");
  if (!(config.learning_rate >= 0.0) || !std::isfinite(config.learning_rate)) {
    throw Error("learning rate must be finite and non-negative");
  }
  if (config.batch_size == 0) throw Error("batch size must be positive");
  if (config.threads < 1) throw Error("threads must be positive");
}

double TrainStep(EmbeddingModel& model, std::span<const WordPair> batch,
                 const NoiseDistribution& noise, const TrainConfig& config,
                 Rng& rng) {
  if (batch.empty()) throw Error("empty training batch");
  Workspace ws(model.dim());
  return StepDirect(model, batch, noise, config, rng, ws);
}

TrainingError::TrainingError(int epoch, std::size_t batch, double loss)
    : Error("non-finite loss " + std::to_string(loss) + " at epoch " +
            std::to_string(epoch) + ", batch " + std::to_string(batch)),
      epoch_(epoch),
      batch_(batch) {}

TrainResult Train(const PairDataset& dataset, const Vocabulary& vocab,
                  const TrainConfig& config, EmbeddingModel initial,
                  const EpochCallback& on_epoch) {
  ValidateConfig(config);
  if (dataset.empty()) throw Error("training dataset is empty");
  if (initial.vocab_size() != vocab.size() || initial.dim() != config.dim ||
      initial.output.rows() != initial.input.rows() ||
      initial.output.cols() != initial.input.cols()) {
    throw Error("initial model shape does not match vocabulary and dim");
  }
  for (const WordPair& p : dataset) {
    if (p.focus < 0 || p.context < 0 ||
        static_cast<std::size_t>(p.focus) >= vocab.size() ||
        static_cast<std::size_t>(p.context) >= vocab.size()) {
      throw Error("pair references a word outside the vocabulary");
    }
  }

  const NoiseDistribution noise(vocab, config.noise_exponent);
  TrainResult result{std::move(initial), {}};
  EmbeddingModel& model = result.model;
  std::vector<WordPair> order(dataset.begin(), dataset.end());
  const std::size_t batch_size = config.batch_size;
  const std::size_t batches = (order.size() + batch_size - 1) / batch_size;
  auto batch_at = [&](std::size_t b) {
    const std::size_t begin = b * batch_size;
    const std::size_t end = std::min(order.size(), begin + batch_size);
    return std::span<const WordPair>(order.data() + begin, end - begin);
  };

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::copy(dataset.begin(), dataset.end(), order.begin());
    Rng shuffle(DeriveSeed(config.seed, "shuffle", epoch));
    shuffle.Shuffle(std::span<WordPair>(order));
    const std::uint64_t negative_seed =
        DeriveSeed(config.seed, "negatives", epoch);

    double loss_sum = 0.0;
    if (config.threads == 1) {
      Rng rng(negative_seed);
      Workspace ws(model.dim());
      for (std::size_t b = 0; b < batches; ++b) {
        const auto batch = batch_at(b);
        const double loss = StepDirect(model, batch, noise, config, rng, ws);
        if (!std::isfinite(loss)) throw TrainingError(epoch + 1, b, loss);
        loss_sum += loss * static_cast<double>(batch.size());
      }
    } else {
      const auto threads = static_cast<std::size_t>(config.threads);
      std::vector<double> sums(threads, 0.0);
      std::atomic<bool> failed{false};
      std::vector<std::size_t> failed_batch(threads, 0);
      std::vector<double> failed_loss(threads, 0.0);
      std::vector<std::thread> pool;
      for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          Rng rng(DeriveSeed(negative_seed, "thread", t));
          Workspace ws(model.dim());
          SharedView view(model);
          for (std::size_t b = t * batches / threads;
               b < (t + 1) * batches / threads && !failed.load(); ++b) {
            const auto batch = batch_at(b);
            view.Clear();
            const double loss =
                BatchGradient(view, batch, noise, config.negatives, rng, ws);
            if (!std::isfinite(loss)) {
              failed_batch[t] = b;
              failed_loss[t] = loss;
              failed.store(true);
              return;
            }
            ApplyShared(model.input, ws.input_grad, config.learning_rate);
            ApplyShared(model.output, ws.output_grad, config.learning_rate);
            sums[t] += loss * static_cast<double>(batch.size());
          }
        });
      }
      for (auto& th : pool) th.join();
      for (std::size_t t = 0; t < threads; ++t) {
        if (!std::isfinite(failed_loss[t])) {
          throw TrainingError(epoch + 1, failed_batch[t], failed_loss[t]);
        }
        loss_sum += sums[t];
      }
    }
    const double mean = loss_sum / static_cast<double>(order.size());
    result.epoch_losses.push_back(mean);
    if (on_epoch) on_epoch(epoch + 1, mean, model);
  }
  return result;
}

TrainResult Train(const PairDataset& dataset, const Vocabulary& vocab,
                  const TrainConfig& config, const EpochCallback& on_epoch) {
  ValidateConfig(config);
  return Train(dataset, vocab, config,
               InitRandom(vocab.size(), config.dim, config.seed), on_epoch);
}

void WriteLossCsv(std::span<const double> epoch_losses, std::ostream& out) {
  out << "epoch,mean_loss\n";
  char buf[32];
  for (std::size_t i = 0; i < epoch_losses.size(); ++i) {
    auto res = std::to_chars(buf, buf + sizeof(buf), epoch_losses[i]);
    out << (i + 1) << ',' << std::string_view(buf, res.ptr - buf) << '\n';
  }
}

}  // namespace synaug
