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

#ifndef SYNAUG_CORPUS_H_
#define SYNAUG_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace synaug {

using WordId = std::int32_t;

// Sentences of lowercase word tokens. No sentence is empty and no token
// contains whitespace; skip-gram contexts never cross a sentence boundary.
struct TokenizedCorpus {
  std::vector<std::vector<std::string>> sentences;

  std::size_t TokenCount() const;
};

// Splits UTF-8 text into sentences and word tokens.
//
// A sentence ends at '.', '!' or '?' when the next character is whitespace
// or the end of input. A token is a maximal run of letters, where an
// apostrophe or hyphen between two letters is kept inside the token
// ("don't", "well-known"). U+2019 is read as an apostrophe. Letters are
// ASCII letters and the Latin-1/Latin Extended-A/B blocks; tokens are
// lowercased. Everything else (digits, punctuation, symbols) separates
// tokens and is discarded.
//
// Throws DecodeError on malformed UTF-8.
TokenizedCorpus Tokenize(std::string_view text);

// Appends the corpus of `text` to `corpus`, for multi-file input.
void AppendTokenized(std::string_view text, TokenizedCorpus& corpus);

// Word list of `text` with sentence boundaries discarded (documents).
std::vector<std::string> TokenizeWords(std::string_view text);

// One sentence per line, tokens separated by a single space.
void WriteTokenizedCorpus(const TokenizedCorpus& corpus, std::ostream& out);
TokenizedCorpus ReadTokenizedCorpus(std::istream& in);

// Frequency-pruned word <-> id mapping. Ids are 0..size()-1.
class Vocabulary {
 public:
  Vocabulary() = default;

  // Takes words in id order. Throws Error if words repeat, a count is
  // below `min_count`, or `min_count` < 1.
  Vocabulary(std::vector<std::string> words, std::vector<std::int64_t> counts,
             std::int64_t min_count);

  // Keeps words occurring at least `min_count` times. Ids are assigned by
  // descending count, ties broken lexicographically. Throws Error when no
  // word survives.
  static Vocabulary Build(const TokenizedCorpus& corpus,
                          std::int64_t min_count);

  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }

  std::optional<WordId> Find(std::string_view word) const;
  bool Contains(std::string_view word) const { return Find(word).has_value(); }

  const std::string& Word(WordId id) const { return words_.at(id); }
  std::int64_t Count(WordId id) const { return counts_.at(id); }

  const std::vector<std::string>& words() const { return words_; }
  const std::vector<std::int64_t>& counts() const { return counts_; }
  std::int64_t min_count() const { return min_count_; }

  // Header `#vocab v1 min_count=<n>`, then `<word>\t<count>` in id order.
  void Write(std::ostream& out) const;
  static Vocabulary Read(std::istream& in);

 private:
  std::vector<std::string> words_;
  std::vector<std::int64_t> counts_;
  std::unordered_map<std::string, WordId> index_;
  std::int64_t min_count_ = 1;
};

using EncodedSentence = std::vector<WordId>;
using EncodedCorpus = std::vector<EncodedSentence>;

// Maps tokens to ids. Out-of-vocabulary tokens are dropped, and so are
// sentences left empty.
EncodedCorpus Encode(const TokenizedCorpus& corpus, const Vocabulary& vocab);
TokenizedCorpus Decode(const EncodedCorpus& corpus, const Vocabulary& vocab);

std::string ReadFileToString(const std::filesystem::path& path);

}  // namespace synaug

#endif  // SYNAUG_CORPUS_H_
