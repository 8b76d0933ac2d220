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

#include "synaug/pairgen.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "synaug/error.h"
#include "synaug/random.h"

namespace synaug {

double KeepProbability(int position, int max_context) {
  if (max_context < 1 || position < 1 || position > max_context) {
    throw DomainError("context position " + std::to_string(position) +
                      " outside [1, " + std::to_string(max_context) + "]");
  }
  return static_cast<double>(max_context - position + 1) / max_context;
}

PairDataset GeneratePairs(const EncodedCorpus& corpus, int max_context,
                          std::uint64_t seed) {
  if (max_context < 1) throw DomainError("max context size must be >= 1");
  std::vector<double> keep(max_context + 1);
  for (int c = 1; c <= max_context; ++c) keep[c] = KeepProbability(c, max_context);

  PairDataset pairs;
  std::uint64_t token_base = 0;
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const EncodedSentence& sentence = corpus[s];
    Rng rng(DeriveSeed(seed, "pairgen", s));
    const auto n = static_cast<std::ptrdiff_t>(sentence.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - max_context);
      const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, i + max_context);
      for (std::ptrdiff_t j = lo; j <= hi; ++j) {
        if (j == i) continue;
        const int c = static_cast<int>(j > i ? j - i : i - j);
        if (!rng.Bernoulli(keep[c])) continue;
        pairs.push_back({sentence[i], sentence[j], c, Origin::kNatural,
                         token_base + static_cast<std::uint64_t>(i)});
      }
    }
    token_base += sentence.size();
  }
  return pairs;
}

void WritePairs(const PairFileHeader& header, const PairDataset& pairs,
                std::ostream& out) {
  out << "#pairs v1 C=" << header.max_context << " seed=" << header.seed;
  if (header.ratio) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), *header.ratio);
    out << " ratio=" << std::string_view(buf, res.ptr - buf);
  }
  out << '\n';
  std::string line;
  for (const WordPair& p : pairs) {
    line.clear();
    line += std::to_string(p.focus);
    line += ' ';
    line += std::to_string(p.context);
    line += ' ';
    line += std::to_string(p.position);
    line += p.origin == Origin::kNatural ? " N\n" : " A\n";
    out << line;
  }
}

namespace {

template <typename T>
bool ParseNumber(std::string_view text, T& value) {
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  return res.ec == std::errc() && res.ptr == text.data() + text.size();
}

PairFileHeader ParseHeader(const std::string& line) {
  std::istringstream fields(line);
  std::string magic, version;
  fields >> magic >> version;
  if (magic != "#pairs" || version != "v1") {
    throw ParseError("expected header '#pairs v1 C=<C> seed=<seed>'", 1);
  }
  PairFileHeader header;
  bool have_c = false, have_seed = false;
  std::string field;
  while (fields >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw ParseError("bad header field " + field, 1);
    const std::string_view key(field.data(), eq);
    const std::string_view value(field.data() + eq + 1, field.size() - eq - 1);
    bool ok = true;
    if (key == "C") {
      ok = ParseNumber(value, header.max_context) && header.max_context >= 1;
      have_c = true;
    } else if (key == "seed") {
      ok = ParseNumber(value, header.seed);
      have_seed = true;
    } else if (key == "ratio") {
      double r;
      ok = ParseNumber(value, r) && r >= 0.0 && r < 1.0;
      header.ratio = r;
    }
    if (!ok) throw ParseError("bad header value " + field, 1);
  }
  if (!have_c || !have_seed) throw ParseError("header lacks C= or seed=", 1);
  return header;
}

}  // namespace

PairFile ReadPairs(std::istream& in, std::size_t vocab_size) {
  PairFile file;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing pairs header", 1);
  file.header = ParseHeader(line);

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string f[5];
    int n = 0;
    while (n < 5 && fields >> f[n]) ++n;
    if (n != 4) throw ParseError("expected 4 fields", line_no);
    WordPair pair;
    if (!ParseNumber(std::string_view(f[0]), pair.focus) ||
        !ParseNumber(std::string_view(f[1]), pair.context) ||
        !ParseNumber(std::string_view(f[2]), pair.position)) {
      throw ParseError("non-numeric field", line_no);
    }
    if (pair.focus < 0 || pair.context < 0 ||
        static_cast<std::size_t>(pair.focus) >= vocab_size ||
        static_cast<std::size_t>(pair.context) >= vocab_size) {
      throw ParseError("word id out of range", line_no);
    }
    if (pair.position < 1 || pair.position > file.header.max_context) {
      throw ParseError("position outside [1, C]", line_no);
    }
    if (f[3] == "N") {
      pair.origin = Origin::kNatural;
    } else if (f[3] == "A") {
      pair.origin = Origin::kAugmented;
    } else {
      throw ParseError("origin must be N or A", line_no);
    }
    pair.occurrence = file.pairs.size();
    file.pairs.push_back(pair);
  }
  return file;
}

}  // namespace synaug
