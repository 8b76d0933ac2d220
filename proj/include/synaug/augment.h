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

#ifndef SYNAUG_AUGMENT_H_
#define SYNAUG_AUGMENT_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "synaug/error.h"
#include "synaug/lexicon.h"
#include "synaug/pairgen.h"

namespace synaug {

// Augmentation ratios of the standard sweep, as fractions.
inline constexpr std::array<double, 10> kRatioSweep = {
    0.0, 0.02, 0.035, 0.06, 0.10, 0.16, 0.25, 0.37, 0.50, 0.64};

// A focus occurrence replaced by a synonym.
struct SynonymSubstitution {
  WordId original;
  WordId synonym;
  std::uint64_t occurrence;
};

struct AugmentedPairs {
  PairDataset pairs;
  // One entry per augmented focus occurrence, in order of first appearance.
  std::vector<SynonymSubstitution> substitutions;
};

// For every focus occurrence whose word is a lexicon candidate, draws one
// synonym (frequency weighted, from DeriveSeed(seed, "augment",
// occurrence)) and emits (synonym, context, position) for each of that
// occurrence's natural pairs. Throws Error if any input pair is augmented.
AugmentedPairs GenerateAugmentedPairs(const PairDataset& natural,
                                      const SynonymSampler& sampler,
                                      std::uint64_t seed);
AugmentedPairs GenerateAugmentedPairs(const PairDataset& natural,
                                      const SynonymLexicon& lexicon,
                                      const Vocabulary& vocab,
                                      std::uint64_t seed);

struct AugmentationPlan {
  // Fraction of the mixed dataset that is augmented, in [0, 1).
  double ratio = 0.25;
  std::uint64_t seed = 0;
};

// round(ratio * natural / (1 - ratio)).
std::size_t AugmentedTarget(std::size_t natural, double ratio);

class InsufficientAugmentationError : public Error {
 public:
  InsufficientAugmentationError(std::size_t needed, std::size_t available,
                                double max_ratio);

  double max_ratio() const { return max_ratio_; }

 private:
  double max_ratio_;
};

// Keeps every natural pair and a uniform sample (without replacement) of
// AugmentedTarget() augmented pairs, then shuffles. Throws
// InsufficientAugmentationError, carrying |augmented| / (|natural| +
// |augmented|), when the pool is too small.
PairDataset Mix(const PairDataset& natural, const PairDataset& augmented,
                const AugmentationPlan& plan);

}  // namespace synaug

#endif  // SYNAUG_AUGMENT_H_
