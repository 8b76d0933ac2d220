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

#include "testing/toy_corpus.h"

#include <string_view>

#include "synaug/random.h"

namespace synaug::testing {

std::string PseudoWord(std::size_t i) {
  static constexpr std::string_view kConsonants = "bdfgklmnprstvz";
  static constexpr std::string_view kVowels = "aeiou";
  const std::size_t syllables = kConsonants.size() * kVowels.size();
  std::string word;
  for (int s = 0; s < 3; ++s) {
    const std::size_t syllable = i % syllables;
    i /= syllables;
    word += kConsonants[syllable / kVowels.size()];
    word += kVowels[syllable % kVowels.size()];
  }
  return word;
}

ToyCorpus MakeToyCorpus(const ToyCorpusOptions& options) {
  const int t_count = options.topics;
  const int s_count = options.slots;
  const int j_count = options.words_per_slot;
  ToyCorpus toy;
  // Index layout: regular words first, then one rare word per candidate.
  auto regular = [&](int t, int s, int j) {
    return static_cast<std::size_t>((t * s_count + s) * j_count + j);
  };
  const std::size_t regular_count =
      static_cast<std::size_t>(t_count * s_count * j_count);
  auto rare = [&](int t, int s) {
    return regular_count + static_cast<std::size_t>(t * s_count + s);
  };
  const std::size_t total = regular_count + static_cast<std::size_t>(t_count * s_count);
  // Offset keeps the pseudo words away from short, real-looking ones.
  for (std::size_t i = 0; i < total; ++i) toy.words.push_back(PseudoWord(i + 4000));

  toy.lexicon = "#synlex v1\n";
  for (int t = 0; t < t_count; ++t) {
    for (int s = 0; s < s_count; ++s) {
      const std::string& candidate = toy.words[regular(t, s, 0)];
      const std::string& synonym = toy.words[rare(t, s)];
      toy.lexicon += candidate + "\tnoun\t" + synonym + "\n";
      toy.synonyms.emplace_back(candidate, synonym);
    }
  }

  Rng rng(DeriveSeed(options.seed, "toy-corpus"));
  for (int n = 0; n < options.sentences; ++n) {
    const int t = static_cast<int>(rng.Below(t_count));
    std::vector<std::size_t> sentence;
    for (int s = 0; s < s_count; ++s) {
      sentence.push_back(regular(t, s, static_cast<int>(rng.Below(j_count))));
    }
    if (rng.Bernoulli(options.rare_rate)) {
      // Rare word of the opposite topic's candidate in this slot.
      const int s = static_cast<int>(rng.Below(s_count));
      const int home_of = (t + t_count / 2) % t_count;
      sentence[s] = rare(home_of, s);
    }
    for (std::size_t k = 0; k < sentence.size(); ++k) {
      if (k > 0) toy.text += ' ';
      toy.text += toy.words[sentence[k]];
    }
    toy.text += ". ";
  }
  return toy;
}

}  // namespace synaug::testing
