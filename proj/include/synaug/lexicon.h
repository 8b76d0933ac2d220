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

#ifndef SYNAUG_LEXICON_H_
#define SYNAUG_LEXICON_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "synaug/corpus.h"
#include "synaug/random.h"

namespace synaug {

enum class PartOfSpeech : std::uint8_t { kNoun, kVerb, kAdjective, kAdverb };

std::optional<PartOfSpeech> ParsePartOfSpeech(std::string_view name);
std::string_view PartOfSpeechName(PartOfSpeech pos);

struct SynonymRecord {
  PartOfSpeech pos;
  std::string synonym;

  friend bool operator==(const SynonymRecord&, const SynonymRecord&) = default;
};

struct LexiconLoadReport {
  std::size_t records = 0;
  std::size_t dropped_multi_token = 0;
  std::size_t dropped_self = 0;
  std::size_t dropped_duplicate = 0;

  std::size_t dropped() const {
    return dropped_multi_token + dropped_self + dropped_duplicate;
  }
};

// Word -> synonym records, typically extracted from WordNet synsets. Words
// are lowercase single tokens and never list themselves. Relations are kept
// as stored; nothing is symmetrized.
class SynonymLexicon {
 public:
  enum class AddResult { kAdded, kMultiToken, kSelf, kDuplicate };

  // Lowercases both words. A headword whose records are all rejected still
  // gets an (empty) entry, so Contains() is true while IsCandidate() is not.
  AddResult Add(std::string_view word, PartOfSpeech pos,
                std::string_view synonym);

  // TSV with header `#synlex v1`; `<word>\t<pos>\t<synonym>` per line,
  // other `#` lines ignored. Throws ParseError with the line number on a
  // malformed line.
  static SynonymLexicon Read(std::istream& in,
                             LexiconLoadReport* report = nullptr);
  static SynonymLexicon Load(const std::filesystem::path& path,
                             LexiconLoadReport* report = nullptr);

  bool Contains(std::string_view word) const;

  // True when the word has at least one surviving synonym under a noun,
  // verb, adjective or adverb sense.
  bool IsCandidate(std::string_view word) const;

  // Records for `word`, empty if absent.
  std::span<const SynonymRecord> Records(std::string_view word) const;

  // Distinct synonyms of `word` across all parts of speech, first-seen
  // order.
  std::vector<std::string> Synonyms(std::string_view word) const;

  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, std::vector<SynonymRecord>> entries_;
};

// Frequency-weighted synonym draws restricted to a vocabulary. For each
// vocabulary word it keeps the distinct in-vocabulary synonyms and their
// cumulative corpus counts, so a draw picks synonym s with probability
// count(s) / sum of counts over the word's in-vocabulary synonyms.
class SynonymSampler {
 public:
  SynonymSampler(const SynonymLexicon& lexicon, const Vocabulary& vocab);

  bool IsCandidate(WordId word) const { return candidate_.at(word); }

  // In-vocabulary synonyms of `word`.
  std::span<const WordId> Synonyms(WordId word) const {
    return synonyms_.at(word);
  }

  double Probability(WordId word, WordId synonym) const;

  // nullopt when no synonym of `word` is in the vocabulary.
  std::optional<WordId> Sample(WordId word, Rng& rng) const;

 private:
  std::vector<bool> candidate_;
  std::vector<std::vector<WordId>> synonyms_;
  std::vector<std::vector<std::int64_t>> cumulative_;
};

// One-off form of SynonymSampler::Sample keyed by word string.
std::optional<WordId> SampleSynonym(std::string_view word,
                                    const SynonymLexicon& lexicon,
                                    const Vocabulary& vocab, Rng& rng);

}  // namespace synaug

#endif  // SYNAUG_LEXICON_H_
