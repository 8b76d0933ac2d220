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

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <gtest/gtest.h>

#include "synaug/eval_intrinsic.h"
#include "testing/gradient_check.h"
#include "testing/stats.h"

namespace synaug {
namespace {

EmbeddingModel RandomModel(std::size_t words, std::size_t dim,
                           std::uint64_t seed, double scale = 1.0) {
  EmbeddingModel model{Matrix(words, dim), Matrix(words, dim)};
  Rng rng(seed);
  for (double& x : model.input.data()) x = rng.Uniform(-scale, scale);
  for (double& x : model.output.data()) x = rng.Uniform(-scale, scale);
  return model;
}

TEST(InitRandomTest, InputBoundedOutputZero) {
  const auto model = InitRandom(50, 8, 3);
  double max_abs = 0.0;
  for (double x : model.input.data()) max_abs = std::max(max_abs, std::abs(x));
  EXPECT_LE(max_abs, 0.5 / 8);
  EXPECT_GT(max_abs, 0.0);
  for (double x : model.output.data()) EXPECT_EQ(x, 0.0);
}

TEST(InitRandomTest, DeterministicGivenSeed) {
  EXPECT_EQ(InitRandom(20, 4, 1), InitRandom(20, 4, 1));
  EXPECT_FALSE(InitRandom(20, 4, 1) == InitRandom(20, 4, 2));
  EXPECT_THROW(InitRandom(0, 4, 1), Error);
}

TEST(InitPretrainedTest, CopiesKnownRowsAndRandomizesTheRest) {
  const Vocabulary vocab({"a", "b", "c"}, {3, 2, 1}, 1);
  Embeddings pretrained{{"c", "zz", "a"}, Matrix(3, 2)};
  pretrained.vectors(0, 0) = 7.0;
  pretrained.vectors(0, 1) = -7.0;
  pretrained.vectors(2, 0) = 0.125;
  const auto init = InitPretrained(vocab, pretrained, 2, 4);
  EXPECT_EQ(init.found, 2u);
  EXPECT_DOUBLE_EQ(init.coverage, 2.0 / 3.0);
  EXPECT_EQ(init.model.input(2, 0), 7.0);
  EXPECT_EQ(init.model.input(2, 1), -7.0);
  EXPECT_EQ(init.model.input(0, 0), 0.125);
  const auto random = InitRandom(3, 2, 4);
  EXPECT_EQ(init.model.input(1, 0), random.input(1, 0));
  bool any_nonzero = false;
  for (double x : init.model.output.data()) {
    EXPECT_LE(std::abs(x), 0.25);
    any_nonzero |= x != 0.0;
  }
  EXPECT_TRUE(any_nonzero);
}

TEST(InitPretrainedTest, DimensionMismatchThrows) {
  const Vocabulary vocab({"a"}, {1}, 1);
  EXPECT_THROW(InitPretrained(vocab, {{"a"}, Matrix(1, 3)}, 2, 0), Error);
}

TEST(NoiseDistributionTest, PowerOfCounts) {
  const Vocabulary ab({"a", "b"}, {2, 1}, 1);
  const NoiseDistribution noise(ab, 0.75);
  const double brute = std::pow(2.0, 0.75) / (std::pow(2.0, 0.75) + 1.0);
  EXPECT_NEAR(noise.Probability(0), brute, 1e-15);
  EXPECT_NEAR(noise.Probability(0), 0.6271, 1e-4);
  EXPECT_NEAR(noise.Probability(1), 0.3729, 1e-4);

  const NoiseDistribution uniform(ab, 0.0);
  EXPECT_DOUBLE_EQ(uniform.Probability(0), 0.5);

  const Vocabulary three_one({"a", "b"}, {3, 1}, 1);
  EXPECT_DOUBLE_EQ(NoiseDistribution(three_one, 1.0).Probability(0), 0.75);
}

TEST(NoiseDistributionTest, SumsToOne) {
  std::vector<std::string> words;
  std::vector<std::int64_t> counts;
  for (int i = 0; i < 500; ++i) {
    words.push_back("w" + std::to_string(i));
    counts.push_back(1000 - i);
  }
  const NoiseDistribution noise(Vocabulary(words, counts, 1));
  const auto p = noise.probabilities();
  EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-12);
  for (double x : p) EXPECT_GT(x, 0.0);
}

TEST(PairLossTest, ZeroModelGivesLogTwoPerTerm) {
  const EmbeddingModel model{Matrix(4, 3), Matrix(4, 3)};
  const std::vector<WordId> negs = {2, 3, 3};
  EXPECT_NEAR(PairLoss(model, 0, 1, negs), 4.0 * std::log(2.0), 1e-15);
}

TEST(PairLossTest, VanishesAtTheAsymptote) {
  EmbeddingModel model{Matrix(3, 1), Matrix(3, 1)};
  model.input(0, 0) = 1.0;
  model.output(1, 0) = 100.0;
  model.output(2, 0) = -100.0;
  const std::vector<WordId> negs = {2};
  EXPECT_LT(PairLoss(model, 0, 1, negs), 1e-40);
  EXPECT_GE(PairLoss(model, 0, 1, negs), 0.0);
}

// Independent evaluation: plain 1 / (1 + exp(-x)) with no stabilization.
double NaiveLoss(const EmbeddingModel& m, WordId f, WordId c,
                 const std::vector<WordId>& negs) {
  auto dot = [&](WordId out, WordId in) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i) s += m.output(out, i) * m.input(in, i);
    return s;
  };
  double loss = -std::log(1.0 / (1.0 + std::exp(-dot(c, f))));
  for (WordId n : negs) loss -= std::log(1.0 / (1.0 + std::exp(dot(n, f))));
  return loss;
}

TEST(PairLossTest, MatchesIndependentFormula) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto model = RandomModel(6, 5, seed, 0.5);
    const std::vector<WordId> negs = {3, 5};
    EXPECT_NEAR(PairLoss(model, 0, 1, negs), NaiveLoss(model, 0, 1, negs),
                1e-12);
  }
}

TEST(GradientTest, ContextGradientWithZeroOutput) {
  auto model = InitRandom(4, 3, 5);
  SparseGradient in(3), out(3);
  const std::vector<WordId> negs;
  AccumulatePairGradient(model, 0, 1, negs, in, out);
  const auto g = out.Find(1);
  ASSERT_EQ(g.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_DOUBLE_EQ(g[i], -0.5 * model.input(0, i));
  }
  for (double x : in.Find(0)) EXPECT_EQ(x, 0.0);
}

TEST(GradientTest, MatchesFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto model = RandomModel(5, 4, seed);
    Rng rng(seed + 100);
    std::vector<WordId> negs;
    for (int i = 0; i < 3; ++i) negs.push_back(static_cast<WordId>(rng.Below(5)));
    const auto focus = static_cast<WordId>(rng.Below(5));
    const auto context = static_cast<WordId>(rng.Below(5));
    EXPECT_LT(testing::MaxGradientRelativeError(model, focus, context, negs),
              1e-5)
        << "seed " << seed;
  }
}

TEST(GradientTest, RepeatedRowsAccumulate) {
  // Focus equal to a negative and the context listed twice.
  const auto model = RandomModel(3, 4, 77);
  const std::vector<WordId> negs = {0, 2, 2};
  EXPECT_LT(testing::MaxGradientRelativeError(model, 0, 2, negs), 1e-5);
}

TrainConfig SmallConfig() {
  TrainConfig config;
  config.dim = 4;
  config.negatives = 2;
  config.epochs = 2;
  config.learning_rate = 0.1;
  config.batch_size = 3;
  config.seed = 9;
  return config;
}

Vocabulary TenWords() {
  std::vector<std::string> words;
  std::vector<std::int64_t> counts;
  for (int i = 0; i < 10; ++i) {
    words.push_back(std::string(1, static_cast<char>('a' + i)));
    counts.push_back(20 - i);
  }
  return Vocabulary(words, counts, 1);
}

TEST(TrainStepTest, UntouchedRowsAreBitwiseUnchanged) {
  const auto vocab = TenWords();
  const NoiseDistribution noise(vocab);
  auto model = RandomModel(10, 4, 1);
  const auto before = model;
  const std::vector<WordPair> batch = {{0, 1, 1, Origin::kNatural, 0},
                                       {2, 3, 2, Origin::kNatural, 1}};
  // Find which rows the step touched by comparing, then make sure the
  // untouched ones can only be ones never named in the batch.
  Rng rng(3);
  const double loss = TrainStep(model, batch, noise, SmallConfig(), rng);
  EXPECT_GT(loss, 0.0);
  for (WordId w = 0; w < 10; ++w) {
    const bool input_changed = !std::equal(
        model.input.Row(w).begin(), model.input.Row(w).end(),
        before.input.Row(w).begin());
    EXPECT_EQ(input_changed, w == 0 || w == 2) << w;
  }
  EXPECT_FALSE(model.output == before.output);
  // Output rows change only for contexts and drawn negatives: at most
  // 2 contexts + 2 * 2 negatives.
  int changed = 0;
  for (WordId w = 0; w < 10; ++w) {
    changed += !std::equal(model.output.Row(w).begin(),
                           model.output.Row(w).end(),
                           before.output.Row(w).begin());
  }
  EXPECT_LE(changed, 6);
  EXPECT_GE(changed, 2);
}

// With the focus row fixed to e_0, zero output rows and step 1, every draw
// of word n moves output(n, 0) by exactly -0.5, so the negatives of a
// single step can be read back from the model.
TEST(TrainStepTest, NegativesFollowNoiseExcludingContext) {
  const auto vocab = TenWords();
  const NoiseDistribution noise(vocab);
  TrainConfig config = SmallConfig();
  config.negatives = 5;
  config.learning_rate = 1.0;
  const WordId context = 0;  // the most likely noise word
  const std::vector<WordPair> batch = {{9, context, 1, Origin::kNatural, 0}};
  EmbeddingModel start{Matrix(10, 1), Matrix(10, 1)};
  start.input(9, 0) = 1.0;
  config.dim = 1;

  Rng rng(12);
  std::vector<std::size_t> counts(10, 0);
  std::size_t draws = 0;
  for (int step = 0; step < 20000; ++step) {
    EmbeddingModel model = start;
    TrainStep(model, batch, noise, config, rng);
    EXPECT_EQ(model.output(context, 0), 0.5);
    for (WordId w = 1; w < 10; ++w) {
      const double times = -model.output(w, 0) / 0.5;
      counts[w] += static_cast<std::size_t>(std::lround(times));
    }
  }
  draws = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  ASSERT_EQ(draws, 100000u);
  std::vector<std::size_t> observed(counts.begin() + 1, counts.end());
  std::vector<double> expected;
  const double rest = 1.0 - noise.Probability(context);
  for (WordId w = 1; w < 10; ++w) expected.push_back(noise.Probability(w) / rest);
  EXPECT_LT(testing::ChiSquareStatistic(observed, expected, draws),
            testing::ChiSquareCritical01(observed.size() - 1));
}

TEST(TrainStepTest, ThrowsWhenNoiseCannotAvoidContext) {
  const Vocabulary one({"a"}, {1}, 1);
  EmbeddingModel model{Matrix(1, 2), Matrix(1, 2)};
  Rng rng(0);
  const std::vector<WordPair> batch = {{0, 0, 1, Origin::kNatural, 0}};
  EXPECT_THROW(TrainStep(model, batch, NoiseDistribution(one), SmallConfig(), rng),
               Error);
  EXPECT_THROW(TrainStep(model, {}, NoiseDistribution(one), SmallConfig(), rng),
               Error);
}

PairDataset RandomPairs(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  PairDataset pairs;
  for (std::size_t i = 0; i < n; ++i) {
    pairs.push_back({static_cast<WordId>(rng.Below(10)),
                     static_cast<WordId>(rng.Below(10)), 1, Origin::kNatural, i});
  }
  return pairs;
}

TEST(TrainTest, ZeroLearningRateKeepsInitialization) {
  TrainConfig config = SmallConfig();
  config.learning_rate = 0.0;
  const auto result = Train(RandomPairs(50, 1), TenWords(), config);
  EXPECT_EQ(result.model, InitRandom(10, 4, config.seed));
  EXPECT_EQ(result.epoch_losses.size(), 2u);
}

TEST(TrainTest, DeterministicSingleThreaded) {
  const auto pairs = RandomPairs(200, 2);
  const auto a = Train(pairs, TenWords(), SmallConfig());
  const auto b = Train(pairs, TenWords(), SmallConfig());
  EXPECT_EQ(a.model, b.model);
  EXPECT_EQ(a.epoch_losses, b.epoch_losses);
}

TEST(TrainTest, CallbackSeesEveryEpoch) {
  std::vector<int> epochs;
  const auto result = Train(RandomPairs(30, 3), TenWords(), SmallConfig(),
                            [&](int epoch, double, const EmbeddingModel&) {
                              epochs.push_back(epoch);
                            });
  EXPECT_EQ(epochs, (std::vector<int>{1, 2}));
}

TEST(TrainTest, NonFiniteLossAbortsWithPosition) {
  auto initial = InitRandom(10, 4, 0);
  initial.input(3, 0) = std::numeric_limits<double>::quiet_NaN();
  PairDataset pairs(40, WordPair{3, 4, 1, Origin::kNatural, 0});
  try {
    Train(pairs, TenWords(), SmallConfig(), initial);
    FAIL() << "expected TrainingError";
  } catch (const TrainingError& e) {
    EXPECT_EQ(e.epoch(), 1);
    EXPECT_EQ(e.batch(), 0u);
  }
}

TEST(TrainTest, RejectsBadInput) {
  EXPECT_THROW(Train({}, TenWords(), SmallConfig()), Error);
  PairDataset out_of_range = {{10, 0, 1, Origin::kNatural, 0}};
  EXPECT_THROW(Train(out_of_range, TenWords(), SmallConfig()), Error);
  TrainConfig config = SmallConfig();
  config.batch_size = 0;
  EXPECT_THROW(Train(RandomPairs(5, 0), TenWords(), config), Error);
  config = SmallConfig();
  config.learning_rate = -1.0;
  EXPECT_THROW(ValidateConfig(config), Error);
  config = SmallConfig();
  config.negatives = 0;
  EXPECT_THROW(ValidateConfig(config), Error);
}

TEST(TrainTest, ParallelModeStaysFinite) {
  TrainConfig config = SmallConfig();
  config.threads = 3;
  const auto result = Train(RandomPairs(600, 4), TenWords(), config);
  EXPECT_TRUE(result.model.AllFinite());
  EXPECT_EQ(result.epoch_losses.size(), 2u);
}

// Sentences "<filler> <slot> <filler>" where the slot is x or y with the
// same filler distribution, so x and y share every context.
struct SharedContextCorpus {
  Vocabulary vocab;
  PairDataset pairs;
};

SharedContextCorpus MakeSharedContextCorpus() {
  std::vector<std::string> words = {"x", "y"};
  for (int i = 0; i < 20; ++i) words.push_back("f" + std::to_string(i));
  EncodedCorpus corpus;
  Rng rng(21);
  for (int s = 0; s < 1500; ++s) {
    // Fillers come in disjoint families so contexts carry structure.
    const int family = static_cast<int>(rng.Below(4));
    EncodedSentence sentence;
    for (int t = 0; t < 6; ++t) {
      if (t == 3) {
        sentence.push_back(static_cast<WordId>(rng.Below(2)));
      } else {
        const int f = family * 5 + static_cast<int>(rng.Below(5));
        sentence.push_back(static_cast<WordId>(2 + f));
      }
    }
    corpus.push_back(sentence);
  }
  std::vector<std::int64_t> counts(words.size(), 0);
  for (const auto& s : corpus) {
    for (WordId w : s) ++counts[w];
  }
  return {Vocabulary(words, counts, 1), GeneratePairs(corpus, 2, 5)};
}

TEST(TrainTest, SharedContextsPullWordsTogether) {
  const auto data = MakeSharedContextCorpus();
  TrainConfig config;
  config.dim = 16;
  config.epochs = 5;
  config.learning_rate = 0.05;
  config.seed = 8;
  const auto result = Train(data.pairs, data.vocab, config);
  const Matrix& v = result.model.input;
  const double xy = CosineDistance(v.Row(0), v.Row(1));
  double random_sum = 0.0;
  int random_n = 0;
  for (std::size_t i = 0; i < v.rows(); ++i) {
    for (std::size_t j = i + 1; j < v.rows(); ++j) {
      random_sum += CosineDistance(v.Row(i), v.Row(j));
      ++random_n;
    }
  }
  EXPECT_LT(xy, random_sum / random_n);
}

TEST(TrainTest, LossSettlesAfterThirdEpoch) {
  const auto data = MakeSharedContextCorpus();
  TrainConfig config;
  config.dim = 16;
  config.epochs = 10;
  config.seed = 3;
  const auto result = Train(data.pairs, data.vocab, config);
  ASSERT_EQ(result.epoch_losses.size(), 10u);
  for (std::size_t e = 3; e < 10; ++e) {
    EXPECT_LE(result.epoch_losses[e], result.epoch_losses[e - 1] * 1.01)
        << "epoch " << e + 1;
  }
}

TEST(LossCsvTest, OneBasedEpochs) {
  std::ostringstream out;
  const std::vector<double> losses = {2.5, 1.25};
  WriteLossCsv(losses, out);
  EXPECT_EQ(out.str(), "epoch,mean_loss\n1,2.5\n2,1.25\n");
}

}  // namespace
}  // namespace synaug
