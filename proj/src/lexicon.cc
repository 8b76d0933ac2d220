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

#include "synaug/lexicon.h"

#include <algorithm>
#include <fstream>
#include <istream>

#include "synaug/error.h"

namespace synaug {
namespace {

std::string Lowercase(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool IsMultiToken(std::string_view word) {
  return word.find_first_of(" _\t") != std::string_view::npos;
}

// Distinct in-vocabulary synonyms of `word` with cumulative counts.
void InVocabularyDistribution(const SynonymLexicon& lexicon,
                              std::string_view word, const Vocabulary& vocab,
                              std::vector<WordId>& ids,
                              std::vector<std::int64_t>& cumulative) {
  ids.clear();
  cumulative.clear();
  std::int64_t total = 0;
  for (const std::string& synonym : lexicon.Synonyms(word)) {
    auto id = vocab.Find(synonym);
    if (!id) continue;
    ids.push_back(*id);
    total += vocab.Count(*id);
    cumulative.push_back(total);
  }
}

std::optional<WordId> Draw(std::span<const WordId> ids,
                           std::span<const std::int64_t> cumulative,
                           Rng& rng) {
  if (ids.empty()) return std::nullopt;
  if (ids.size() == 1) return ids[0];
  const auto target = static_cast<std::int64_t>(
      rng.Below(static_cast<std::uint64_t>(cumulative.back())));
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
  return ids[it - cumulative.begin()];
}

}  // namespace

std::optional<PartOfSpeech> ParsePartOfSpeech(std::string_view name) {
  if (name == "noun") return PartOfSpeech::kNoun;
  if (name == "verb") return PartOfSpeech::kVerb;
  if (name == "adjective") return PartOfSpeech::kAdjective;
  if (name == "adverb") return PartOfSpeech::kAdverb;
  return std::nullopt;
}

std::string_view PartOfSpeechName(PartOfSpeech pos) {
  switch (pos) {
    case PartOfSpeech::kNoun:
      return "noun";
    case PartOfSpeech::kVerb:
      return "verb";
    case PartOfSpeech::kAdjective:
      return "adjective";
    case PartOfSpeech::kAdverb:
      return "adverb";
  }
  return "?";
}

SynonymLexicon::AddResult SynonymLexicon::Add(std::string_view word,
                                              PartOfSpeech pos,
                                              std::string_view synonym) {
  if (IsMultiToken(word)) return AddResult::kMultiToken;
  std::string head = Lowercase(word);
  std::vector<SynonymRecord>& records = entries_[head];
  if (IsMultiToken(synonym)) return AddResult::kMultiToken;
  SynonymRecord record{pos, Lowercase(synonym)};
  if (record.synonym == head) return AddResult::kSelf;
  if (std::find(records.begin(), records.end(), record) != records.end()) {
    return AddResult::kDuplicate;
  }
  records.push_back(std::move(record));
  return AddResult::kAdded;
}

SynonymLexicon SynonymLexicon::Read(std::istream& in,
                                    LexiconLoadReport* report) {
  SynonymLexicon lexicon;
  LexiconLoadReport local;
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!saw_header) {
      if (line != "#synlex v1") {
        throw ParseError("expected header '#synlex v1'", line_no);
      }
      saw_header = true;
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string::npos ? tab1 : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos ||
        line.find('\t', tab2 + 1) != std::string::npos) {
      throw ParseError("expected '<word>\\t<pos>\\t<synonym>'", line_no);
    }
    const std::string_view view(line);
    const auto word = view.substr(0, tab1);
    const auto pos_name = view.substr(tab1 + 1, tab2 - tab1 - 1);
    const auto synonym = view.substr(tab2 + 1);
    if (word.empty() || synonym.empty()) {
      throw ParseError("empty word field", line_no);
    }
    const auto pos = ParsePartOfSpeech(pos_name);
    if (!pos) {
      throw ParseError("unknown part of speech '" + std::string(pos_name) + "'",
                       line_no);
    }
    switch (lexicon.Add(word, *pos, synonym)) {
      case AddResult::kAdded:
        ++local.records;
        break;
      case AddResult::kMultiToken:
        ++local.dropped_multi_token;
        break;
      case AddResult::kSelf:
        ++local.dropped_self;
        break;
      case AddResult::kDuplicate:
        ++local.dropped_duplicate;
        break;
    }
  }
  if (!saw_header) throw ParseError("empty lexicon file", 1);
  if (report != nullptr) *report = local;
  return lexicon;
}

SynonymLexicon SynonymLexicon::Load(const std::filesystem::path& path,
                                    LexiconLoadReport* report) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicon " + path.string());
  return Read(in, report);
}

bool SynonymLexicon::Contains(std::string_view word) const {
  return entries_.contains(std::string(word));
}

bool SynonymLexicon::IsCandidate(std::string_view word) const {
  return !Records(word).empty();
}

std::span<const SynonymRecord> SynonymLexicon::Records(
    std::string_view word) const {
  auto it = entries_.find(std::string(word));
  if (it == entries_.end()) return {};
  return it->second;
}

std::vector<std::string> SynonymLexicon::Synonyms(std::string_view word) const {
  std::vector<std::string> out;
  for (const SynonymRecord& record : Records(word)) {
    if (std::find(out.begin(), out.end(), record.synonym) == out.end()) {
      out.push_back(record.synonym);
    }
  }
  return out;
}

SynonymSampler::SynonymSampler(const SynonymLexicon& lexicon,
                               const Vocabulary& vocab)
    : candidate_(vocab.size()),
      synonyms_(vocab.size()),
      cumulative_(vocab.size()) {
  for (std::size_t id = 0; id < vocab.size(); ++id) {
    const std::string& word = vocab.Word(static_cast<WordId>(id));
    candidate_[id] = lexicon.IsCandidate(word);
    if (candidate_[id]) {
      InVocabularyDistribution(lexicon, word, vocab, synonyms_[id],
                               cumulative_[id]);
    }
  }
}

double SynonymSampler::Probability(WordId word, WordId synonym) const {
  const auto& ids = synonyms_.at(word);
  const auto& cumulative = cumulative_.at(word);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] != synonym) continue;
    const std::int64_t lo = i == 0 ? 0 : cumulative[i - 1];
    return static_cast<double>(cumulative[i] - lo) /
           static_cast<double>(cumulative.back());
  }
  return 0.0;
}

std::optional<WordId> SynonymSampler::Sample(WordId word, Rng& rng) const {
  return Draw(synonyms_.at(word), cumulative_.at(word), rng);
}

std::optional<WordId> SampleSynonym(std::string_view word,
                                    const SynonymLexicon& lexicon,
                                    const Vocabulary& vocab, Rng& rng) {
  std::vector<WordId> ids;
  std::vector<std::int64_t> cumulative;
  InVocabularyDistribution(lexicon, word, vocab, ids, cumulative);
  return Draw(ids, cumulative, rng);
}

}  // namespace synaug
