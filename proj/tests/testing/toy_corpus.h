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

#ifndef SYNAUG_TESTS_TESTING_TOY_CORPUS_H_
#define SYNAUG_TESTS_TESTING_TOY_CORPUS_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace synaug::testing {

// Synthetic corpus with planted synonyms.
//
// Every sentence belongs to one topic and has one word per role slot,
// chosen among `words_per_slot` alternatives for that (topic, slot). The
// first alternative of each slot is a lexicon candidate whose only synonym
// is a rare word. Rare words live in the same slot of the opposite topic
// (topic + topics/2) and replace the regular word there in a fraction of
// sentences, so without augmentation a synonym pair shares no context.
struct ToyCorpusOptions {
  int topics = 10;
  int slots = 8;
  int words_per_slot = 2;
  int sentences = 500;
  // Probability that a sentence carries one rare word.
  double rare_rate = 0.6;
  std::uint64_t seed = 1;
};

struct ToyCorpus {
  // Sentences joined by ". ", ready for the tokenizer.
  std::string text;
  // `#synlex v1` TSV.
  std::string lexicon;
  // (candidate, rare synonym) pairs.
  std::vector<std::pair<std::string, std::string>> synonyms;
  std::vector<std::string> words;
};

ToyCorpus MakeToyCorpus(const ToyCorpusOptions& options = {});

// Letters-only pseudo word for index i ("bakode", "bakodi", ...).
std::string PseudoWord(std::size_t i);

}  // namespace synaug::testing

#endif  // SYNAUG_TESTS_TESTING_TOY_CORPUS_H_
