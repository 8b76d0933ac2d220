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

#include "synaug/augment.h"

#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "synaug/random.h"

namespace synaug {

AugmentedPairs GenerateAugmentedPairs(const PairDataset& natural,
                                      const SynonymSampler& sampler,
                                      std::uint64_t seed) {
  AugmentedPairs out;
  // Occurrence -> drawn synonym (nullopt when the draw had no support).
  std::unordered_map<std::uint64_t, std::optional<WordId>> drawn;
  for (const WordPair& pair : natural) {
    if (pair.origin != Origin::kNatural) {
      throw Error("augmentation input must contain only natural pairs");
    }
    if (!sampler.IsCandidate(pair.focus)) continue;
    auto [it, inserted] = drawn.try_emplace(pair.occurrence);
    if (inserted) {
      Rng rng(DeriveSeed(seed, "augment", pair.occurrence));
      it->second = sampler.Sample(pair.focus, rng);
      if (it->second) {
        out.substitutions.push_back({pair.focus, *it->second, pair.occurrence});
      }
    }
    if (!it->second) continue;
    WordPair augmented = pair;
    augmented.focus = *it->second;
    augmented.origin = Origin::kAugmented;
    out.pairs.push_back(augmented);
  }
  return out;
}

AugmentedPairs GenerateAugmentedPairs(const PairDataset& natural,
                                      const SynonymLexicon& lexicon,
                                      const Vocabulary& vocab,
                                      std::uint64_t seed) {
  return GenerateAugmentedPairs(natural, SynonymSampler(lexicon, vocab), seed);
}

std::size_t AugmentedTarget(std::size_t natural, double ratio) {
  if (!(ratio >= 0.0 && ratio < 1.0)) {
    throw DomainError("augmentation ratio must lie in [0, 1)");
  }
  return static_cast<std::size_t>(
      std::llround(ratio * static_cast<double>(natural) / (1.0 - ratio)));
}

InsufficientAugmentationError::InsufficientAugmentationError(
    std::size_t needed, std::size_t available, double max_ratio)
    : Error("ratio needs " + std::to_string(needed) +
            " augmented pairs but only " + std::to_string(available) +
            " exist; maximum achievable ratio is " + std::to_string(max_ratio)),
      max_ratio_(max_ratio) {}

PairDataset Mix(const PairDataset& natural, const PairDataset& augmented,
                const AugmentationPlan& plan) {
  if (natural.empty()) throw Error("cannot mix an empty natural pair set");
  const std::size_t target = AugmentedTarget(natural.size(), plan.ratio);
  if (augmented.size() < target) {
    const double max_ratio =
        static_cast<double>(augmented.size()) /
        static_cast<double>(natural.size() + augmented.size());
    throw InsufficientAugmentationError(target, augmented.size(), max_ratio);
  }

  std::vector<std::size_t> index(augmented.size());
  std::iota(index.begin(), index.end(), std::size_t{0});
  Rng select(DeriveSeed(plan.seed, "mix-select"));
  for (std::size_t i = 0; i < target; ++i) {
    const std::size_t j = i + select.Below(index.size() - i);
    std::swap(index[i], index[j]);
  }

  PairDataset mixed;
  mixed.reserve(natural.size() + target);
  mixed.insert(mixed.end(), natural.begin(), natural.end());
  for (std::size_t i = 0; i < target; ++i) mixed.push_back(augmented[index[i]]);
  Rng shuffle(DeriveSeed(plan.seed, "mix-shuffle"));
  shuffle.Shuffle(std::span<WordPair>(mixed));
  return mixed;
}

}  // namespace synaug
