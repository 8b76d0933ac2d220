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

#ifndef SYNAUG_PAIRGEN_H_
#define SYNAUG_PAIRGEN_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "synaug/corpus.h"

namespace synaug {

enum class Origin : std::uint8_t { kNatural, kAugmented };

struct WordPair {
  WordId focus = 0;
  WordId context = 0;
  // Absolute distance between focus and context, in [1, C].
  std::int32_t position = 1;
  Origin origin = Origin::kNatural;
  // Corpus-wide token index of the focus occurrence that produced the pair.
  // Kept in memory only; pair files do not carry it.
  std::uint64_t occurrence = 0;

  friend bool operator==(const WordPair&, const WordPair&) = default;
};

using PairDataset = std::vector<WordPair>;

// (C - c + 1) / C. Throws DomainError unless 1 <= c <= C.
double KeepProbability(int position, int max_context);

// Emits every (focus, context) pair within `max_context` tokens inside a
// sentence, each kept independently with KeepProbability(offset). Pairs
// come out in corpus order: by focus token, then by context token
// position. Sentence i draws from DeriveSeed(seed, "pairgen", i).
PairDataset GeneratePairs(const EncodedCorpus& corpus, int max_context,
                          std::uint64_t seed);

struct PairFileHeader {
  int max_context = 5;
  std::uint64_t seed = 0;
  std::optional<double> ratio;
};

// `#pairs v1 C=<C> seed=<seed>[ ratio=<r>]`, then one
// `<focus_id> <context_id> <position> <N|A>` per line.
void WritePairs(const PairFileHeader& header, const PairDataset& pairs,
                std::ostream& out);

struct PairFile {
  PairFileHeader header;
  PairDataset pairs;
};

// Validates ids against `vocab_size` and positions against the header's C.
// Each pair's `occurrence` is set to its 0-based line index among pairs.
PairFile ReadPairs(std::istream& in, std::size_t vocab_size);

}  // namespace synaug

#endif  // SYNAUG_PAIRGEN_H_
