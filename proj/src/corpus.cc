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

#include "synaug/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "synaug/error.h"

namespace synaug {
namespace {

constexpr char32_t kRightSingleQuote = 0x2019;

struct CodePoint {
  char32_t value;
  std::size_t offset;
};

std::vector<CodePoint> DecodeUtf8(std::string_view text) {
  std::vector<CodePoint> out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<unsigned char>(text[i]);
    int length;
    char32_t cp;
    if (lead < 0x80) {
      out.push_back({lead, i});
      ++i;
      continue;
    } else if ((lead & 0xE0) == 0xC0) {
      length = 2;
      cp = lead & 0x1F;
    } else if ((lead & 0xF0) == 0xE0) {
      length = 3;
      cp = lead & 0x0F;
    } else if ((lead & 0xF8) == 0xF0) {
      length = 4;
      cp = lead & 0x07;
    } else {
      throw DecodeError(i);
    }
    if (i + length > text.size()) throw DecodeError(i);
    for (int k = 1; k < length; ++k) {
      const auto cont = static_cast<unsigned char>(text[i + k]);
      if ((cont & 0xC0) != 0x80) throw DecodeError(i + k);
      cp = (cp << 6) | (cont & 0x3F);
    }
    // Overlong forms, surrogates and values past U+10FFFF.
    static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[length] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      throw DecodeError(i);
    }
    out.push_back({cp, i});
    i += length;
  }
  return out;
}

void AppendUtf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool IsLetter(char32_t cp) {
  if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
  return cp >= 0xC0 && cp <= 0x24F && cp != 0xD7 && cp != 0xF7;
}

char32_t ToLower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  // Latin Extended-A alternates upper/lower case in pairs.
  if ((cp >= 0x100 && cp <= 0x137) || (cp >= 0x14A && cp <= 0x177)) {
    return cp % 2 == 0 ? cp + 1 : cp;
  }
  if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E)) {
    return cp % 2 == 1 ? cp + 1 : cp;
  }
  if (cp == 0x178) return 0xFF;
  return cp;
}

bool IsSpace(char32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\v' ||
         cp == '\f' || cp == 0x85 || cp == 0xA0 || cp == 0x2028 ||
         cp == 0x2029 || cp == 0x3000 || (cp >= 0x2000 && cp <= 0x200A);
}

bool IsTerminal(char32_t cp) { return cp == '.' || cp == '!' || cp == '?'; }

bool IsJoiner(char32_t cp) {
  return cp == '\'' || cp == '-' || cp == kRightSingleQuote;
}

}  // namespace

std::size_t TokenizedCorpus::TokenCount() const {
  std::size_t n = 0;
  for (const auto& sentence : sentences) n += sentence.size();
  return n;
}

void AppendTokenized(std::string_view text, TokenizedCorpus& corpus) {
  const std::vector<CodePoint> cps = DecodeUtf8(text);
  std::vector<std::string> sentence;
  std::string token;

  auto flush_token = [&] {
    if (!token.empty()) sentence.push_back(std::move(token));
    token.clear();
  };
  auto flush_sentence = [&] {
    flush_token();
    if (!sentence.empty()) corpus.sentences.push_back(std::move(sentence));
    sentence.clear();
  };

  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t cp = cps[i].value;
    const bool has_next = i + 1 < cps.size();
    if (IsLetter(cp)) {
      AppendUtf8(ToLower(cp), token);
    } else if (IsJoiner(cp) && !token.empty() && has_next &&
               IsLetter(cps[i + 1].value)) {
      token.push_back(cp == '-' ? '-' : '\'');
    } else if (IsTerminal(cp) && (!has_next || IsSpace(cps[i + 1].value))) {
      flush_sentence();
    } else {
      flush_token();
    }
  }
  flush_sentence();
}

TokenizedCorpus Tokenize(std::string_view text) {
  TokenizedCorpus corpus;
  AppendTokenized(text, corpus);
  return corpus;
}

std::vector<std::string> TokenizeWords(std::string_view text) {
  TokenizedCorpus corpus = Tokenize(text);
  std::vector<std::string> words;
  words.reserve(corpus.TokenCount());
  for (auto& sentence : corpus.sentences) {
    for (auto& token : sentence) words.push_back(std::move(token));
  }
  return words;
}

void WriteTokenizedCorpus(const TokenizedCorpus& corpus, std::ostream& out) {
  for (const auto& sentence : corpus.sentences) {
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      if (i > 0) out << ' ';
      out << sentence[i];
    }
    out << '\n';
  }
}

TokenizedCorpus ReadTokenizedCorpus(std::istream& in) {
  TokenizedCorpus corpus;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::vector<std::string> sentence;
    std::string token;
    while (fields >> token) sentence.push_back(std::move(token));
    if (!sentence.empty()) corpus.sentences.push_back(std::move(sentence));
  }
  return corpus;
}

Vocabulary::Vocabulary(std::vector<std::string> words,
                       std::vector<std::int64_t> counts,
                       std::int64_t min_count)
    : words_(std::move(words)), counts_(std::move(counts)),
      min_count_(min_count) {
  if (min_count_ < 1) throw Error("min_count must be at least 1");
  if (words_.size() != counts_.size()) {
    throw Error("vocabulary words and counts differ in length");
  }
  index_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (counts_[i] < min_count_) {
      throw Error("word '" + words_[i] + "' has count " +
                  std::to_string(counts_[i]) + " below min_count " +
                  std::to_string(min_count_));
    }
    if (!index_.emplace(words_[i], static_cast<WordId>(i)).second) {
      throw Error("duplicate vocabulary word '" + words_[i] + "'");
    }
  }
}

Vocabulary Vocabulary::Build(const TokenizedCorpus& corpus,
                             std::int64_t min_count) {
  if (min_count < 1) throw Error("min_count must be at least 1");
  std::unordered_map<std::string, std::int64_t> freq;
  for (const auto& sentence : corpus.sentences) {
    for (const auto& token : sentence) ++freq[token];
  }
  std::vector<std::pair<std::string, std::int64_t>> kept;
  for (auto& [word, count] : freq) {
    if (count >= min_count) kept.emplace_back(word, count);
  }
  if (kept.empty()) {
    throw Error("vocabulary is empty at min_count=" +
                std::to_string(min_count) + " (threshold too high)");
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> words;
  std::vector<std::int64_t> counts;
  words.reserve(kept.size());
  counts.reserve(kept.size());
  for (auto& [word, count] : kept) {
    words.push_back(std::move(word));
    counts.push_back(count);
  }
  return Vocabulary(std::move(words), std::move(counts), min_count);
}

std::optional<WordId> Vocabulary::Find(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Vocabulary::Write(std::ostream& out) const {
  out << "#vocab v1 min_count=" << min_count_ << '\n';
  for (std::size_t i = 0; i < words_.size(); ++i) {
    out << words_[i] << '\t' << counts_[i] << '\n';
  }
}

Vocabulary Vocabulary::Read(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing vocabulary header", 1);
  constexpr std::string_view kPrefix = "#vocab v1 min_count=";
  if (line.rfind(kPrefix, 0) != 0) {
    throw ParseError("expected header '#vocab v1 min_count=<n>'", 1);
  }
  std::int64_t min_count;
  try {
    std::size_t used = 0;
    const std::string value = line.substr(kPrefix.size());
    min_count = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
  } catch (const std::logic_error&) {
    throw ParseError("bad min_count in header", 1);
  }

  std::vector<std::string> words;
  std::vector<std::int64_t> counts;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw ParseError("expected '<word>\\t<count>'", line_no);
    }
    try {
      std::size_t used = 0;
      const std::string value = line.substr(tab + 1);
      const std::int64_t count = std::stoll(value, &used);
      if (used != value.size() || count < 1) {
        throw std::invalid_argument(value);
      }
      counts.push_back(count);
    } catch (const std::logic_error&) {
      throw ParseError("bad count", line_no);
    }
    words.push_back(line.substr(0, tab));
  }
  try {
    return Vocabulary(std::move(words), std::move(counts), min_count);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), 0);
  }
}

EncodedCorpus Encode(const TokenizedCorpus& corpus, const Vocabulary& vocab) {
  EncodedCorpus out;
  out.reserve(corpus.sentences.size());
  for (const auto& sentence : corpus.sentences) {
    EncodedSentence ids;
    ids.reserve(sentence.size());
    for (const auto& token : sentence) {
      if (auto id = vocab.Find(token)) ids.push_back(*id);
    }
    if (!ids.empty()) out.push_back(std::move(ids));
  }
  return out;
}

TokenizedCorpus Decode(const EncodedCorpus& corpus, const Vocabulary& vocab) {
  TokenizedCorpus out;
  out.sentences.reserve(corpus.size());
  for (const auto& ids : corpus) {
    std::vector<std::string> sentence;
    sentence.reserve(ids.size());
    for (WordId id : ids) sentence.push_back(vocab.Word(id));
    out.sentences.push_back(std::move(sentence));
  }
  return out;
}

std::string ReadFileToString(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return buffer.str();
}

}  // namespace synaug
