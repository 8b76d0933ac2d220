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

#ifndef SYNAUG_EVAL_INTRINSIC_H_
#define SYNAUG_EVAL_INTRINSIC_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "synaug/augment.h"
#include "synaug/corpus.h"
#include "synaug/embed_io.h"
#include "synaug/matrix.h"
#include "synaug/pairgen.h"

namespace synaug {

// 1 - u.v / (|u| |v|), in [0, 2]. Throws DomainError on a zero vector.
double CosineDistance(std::span<const double> u, std::span<const double> v);
double EuclideanDistance(std::span<const double> u, std::span<const double> v);

// 1-based ranks; tied values share the mean of the ranks they span.
std::vector<double> AverageRanks(std::span<const double> values);

// Pearson correlation of average ranks. Throws DomainError when lengths
// differ, fewer than 2 values are given, or either side is constant.
double SpearmanRho(std::span<const double> xs, std::span<const double> ys);

struct SimilarityPair {
  std::string first;
  std::string second;
  double score;
};

struct SimilarityDataset {
  std::string name;
  std::vector<SimilarityPair> pairs;
  // Repeated unordered pairs; the first occurrence is kept.
  std::size_t duplicates_dropped = 0;
};

// SimLex-999 TSV: header row naming `word1`, `word2` and `SimLex999`
// columns; other columns are ignored.
SimilarityDataset ReadSimLex(std::istream& in, std::string name);

// WordSim-353 style `word1\tword2\tscore`, with an optional header line
// (recognized by a non-numeric score field on the first line).
SimilarityDataset ReadWordSim(std::istream& in, std::string name);

// Picks ReadSimLex when the first line has a `SimLex999` column, else
// ReadWordSim. The dataset is named after the file stem.
SimilarityDataset LoadSimilarityDataset(const std::filesystem::path& path);

enum class DistanceMetric { kCosine, kEuclidean };

struct CorrelationResult {
  double rho = 0.0;
  std::size_t pairs_used = 0;
  std::size_t pairs_total = 0;
};

// Spearman's rho between embedding distances and human scores over the
// pairs whose words are both in `common_vocab`. Every common-vocabulary
// word must have a row in `embeddings`. Well-aligned embeddings give a
// negative rho: distance falls as similarity rises. Throws Error with
// fewer than 2 usable pairs.
CorrelationResult SimilarityCorrelation(
    const Embeddings& embeddings, const SimilarityDataset& dataset,
    const Vocabulary& common_vocab,
    DistanceMetric metric = DistanceMetric::kCosine);

enum class PairSetKind { kSynonym, kContextual, kRandom };

std::string_view PairSetKindName(PairSetKind kind);

// Unordered word pairs, stored with first < second.
struct PairSet {
  PairSetKind kind;
  std::vector<std::pair<WordId, WordId>> pairs;
};

struct DistanceStats {
  double mean = 0.0;
  // Population standard deviation.
  double stddev = 0.0;
  std::size_t count = 0;
};

// Cosine distance statistics over rows of `vectors` (one row per word id).
DistanceStats PairSetStats(const Matrix& vectors, const PairSet& set);

struct PairSetSizes {
  std::size_t synonym = 1000;
  std::size_t contextual = 1000;
  std::size_t random = 1000;
};

struct PairSets {
  PairSet synonym;
  PairSet contextual;
  PairSet random;
};

// Synonym pairs are the distinct (original, synonym) substitutions made by
// augmentation; contextual pairs the distinct natural (focus, context)
// pairs; random pairs uniform distinct pairs of vocabulary words. None
// contain self-pairs. Each set is uniformly subsampled to its requested
// size; a request larger than the available pairs throws Error.
PairSets BuildPairSets(std::span<const SynonymSubstitution> substitutions,
                       const PairDataset& natural, std::size_t vocab_size,
                       const PairSetSizes& sizes, std::uint64_t seed);

}  // namespace synaug

#endif  // SYNAUG_EVAL_INTRINSIC_H_
