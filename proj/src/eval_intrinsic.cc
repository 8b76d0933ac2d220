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

#include "synaug/eval_intrinsic.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "synaug/error.h"
#include "synaug/random.h"

namespace synaug {
namespace {

std::vector<std::string> SplitTabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::vector<std::string> SplitWhitespace(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> fields;
  std::string f;
  while (in >> f) fields.push_back(f);
  return fields;
}

bool ParseDouble(const std::string& text, double& value) {
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  return res.ec == std::errc() && res.ptr == text.data() + text.size() &&
         std::isfinite(value);
}

std::string Lowercase(std::string text) {
  for (char& c : text) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return text;
}

void StripCr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

// Appends unless the unordered pair was seen before.
void AddPair(SimilarityDataset& dataset,
             std::set<std::pair<std::string, std::string>>& seen,
             std::string a, std::string b, double score) {
  a = Lowercase(std::move(a));
  b = Lowercase(std::move(b));
  auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  if (!seen.insert(std::move(key)).second) {
    ++dataset.duplicates_dropped;
    return;
  }
  dataset.pairs.push_back({std::move(a), std::move(b), score});
}

std::pair<WordId, WordId> Ordered(WordId a, WordId b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

PairSet Subsample(PairSetKind kind,
                  std::vector<std::pair<WordId, WordId>> candidates,
                  std::size_t size, std::uint64_t seed) {
  if (size > candidates.size()) {
    throw Error(std::string(PairSetKindName(kind)) + " pair set: requested " +
                std::to_string(size) + " pairs but only " +
                std::to_string(candidates.size()) + " distinct pairs exist");
  }
  Rng rng(DeriveSeed(seed, PairSetKindName(kind)));
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t j = i + rng.Below(candidates.size() - i);
    std::swap(candidates[i], candidates[j]);
  }
  candidates.resize(size);
  return PairSet{kind, std::move(candidates)};
}

}  // namespace

double CosineDistance(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw DomainError("vector lengths differ");
  const double nu = std::sqrt(Dot(u, u));
  const double nv = std::sqrt(Dot(v, v));
  if (nu == 0.0 || nv == 0.0) {
    throw DomainError("cosine distance of a zero vector");
  }
  const double cosine = std::clamp(Dot(u, v) / (nu * nv), -1.0, 1.0);
  return 1.0 - cosine;
}

double EuclideanDistance(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw DomainError("vector lengths differ");
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - v[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

std::vector<double> AverageRanks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j (0-based) hold ranks i+1..j+1.
    const double rank = (static_cast<double>(i + j) + 2.0) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double SpearmanRho(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw DomainError("rank inputs differ in length");
  if (xs.size() < 2) throw DomainError("rank correlation needs >= 2 values");
  const std::vector<double> rx = AverageRanks(xs);
  const std::vector<double> ry = AverageRanks(ys);
  // Both rank vectors have mean (n + 1) / 2.
  const double mean = (static_cast<double>(xs.size()) + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw DomainError("rank correlation undefined for constant input");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

SimilarityDataset ReadSimLex(std::istream& in, std::string name) {
  SimilarityDataset dataset{std::move(name), {}, 0};
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing SimLex header", 1);
  StripCr(line);
  const auto header = SplitTabs(line);
  auto column = [&](std::string_view wanted) {
    auto it = std::find(header.begin(), header.end(), wanted);
    if (it == header.end()) {
      throw ParseError("header lacks column " + std::string(wanted), 1);
    }
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t c1 = column("word1");
  const std::size_t c2 = column("word2");
  const std::size_t cs = column("SimLex999");
  const std::size_t needed = std::max({c1, c2, cs}) + 1;

  std::set<std::pair<std::string, std::string>> seen;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    StripCr(line);
    if (line.empty()) continue;
    const auto fields = SplitTabs(line);
    if (fields.size() < needed) throw ParseError("too few columns", line_no);
    double score;
    if (!ParseDouble(fields[cs], score)) {
      throw ParseError("bad SimLex999 score", line_no);
    }
    AddPair(dataset, seen, fields[c1], fields[c2], score);
  }
  return dataset;
}

SimilarityDataset ReadWordSim(std::istream& in, std::string name) {
  SimilarityDataset dataset{std::move(name), {}, 0};
  std::set<std::pair<std::string, std::string>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    StripCr(line);
    const auto fields = SplitWhitespace(line);
    if (fields.empty() || fields[0][0] == '#') continue;
    if (fields.size() != 3) throw ParseError("expected 3 fields", line_no);
    double score;
    if (!ParseDouble(fields[2], score)) {
      if (dataset.pairs.empty() && dataset.duplicates_dropped == 0 &&
          line_no == 1) {
        continue;  // header
      }
      throw ParseError("bad score", line_no);
    }
    AddPair(dataset, seen, fields[0], fields[1], score);
  }
  return dataset;
}

SimilarityDataset LoadSimilarityDataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string first;
  std::getline(in, first);
  StripCr(first);
  const auto header = SplitTabs(first);
  in.clear();
  in.seekg(0);
  const std::string name = path.stem().string();
  try {
    if (std::find(header.begin(), header.end(), "SimLex999") != header.end()) {
      return ReadSimLex(in, name);
    }
    return ReadWordSim(in, name);
  } catch (const ParseError& e) {
    throw e.WithContext(path.string());
  }
}

CorrelationResult SimilarityCorrelation(const Embeddings& embeddings,
                                        const SimilarityDataset& dataset,
                                        const Vocabulary& common_vocab,
                                        DistanceMetric metric) {
  std::unordered_map<std::string_view, std::size_t> row_of;
  row_of.reserve(embeddings.size());
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    row_of.emplace(embeddings.words[i], i);
  }
  auto row = [&](const std::string& word) {
    auto it = row_of.find(word);
    if (it == row_of.end()) {
      throw Error("common-vocabulary word '" + word +
                  "' has no embedding in the model");
    }
    return embeddings.vectors.Row(it->second);
  };

  std::vector<double> distances, scores;
  for (const SimilarityPair& pair : dataset.pairs) {
    if (!common_vocab.Contains(pair.first) ||
        !common_vocab.Contains(pair.second)) {
      continue;
    }
    const auto u = row(pair.first);
    const auto v = row(pair.second);
    distances.push_back(metric == DistanceMetric::kCosine
                            ? CosineDistance(u, v)
                            : EuclideanDistance(u, v));
    scores.push_back(pair.score);
  }
  if (distances.size() < 2) {
    throw Error(dataset.name + ": only " + std::to_string(distances.size()) +
                " pairs fall inside the common vocabulary");
  }
  return {SpearmanRho(distances, scores), distances.size(),
          dataset.pairs.size()};
}

std::string_view PairSetKindName(PairSetKind kind) {
  switch (kind) {
    case PairSetKind::kSynonym:
      return "synonym";
    case PairSetKind::kContextual:
      return "contextual";
    case PairSetKind::kRandom:
      return "random";
  }
  return "?";
}

DistanceStats PairSetStats(const Matrix& vectors, const PairSet& set) {
  if (set.pairs.empty()) throw Error("pair set is empty");
  DistanceStats stats;
  stats.count = set.pairs.size();
  std::vector<double> d;
  d.reserve(set.pairs.size());
  for (const auto& [a, b] : set.pairs) {
    d.push_back(CosineDistance(vectors.Row(a), vectors.Row(b)));
  }
  const double n = static_cast<double>(d.size());
  stats.mean = std::accumulate(d.begin(), d.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : d) ss += (x - stats.mean) * (x - stats.mean);
  stats.stddev = std::sqrt(ss / n);
  return stats;
}

PairSets BuildPairSets(std::span<const SynonymSubstitution> substitutions,
                       const PairDataset& natural, std::size_t vocab_size,
                       const PairSetSizes& sizes, std::uint64_t seed) {
  if (substitutions.empty()) throw Error("no synonym substitutions to sample");
  if (natural.empty()) throw Error("no natural pairs to sample");
  if (vocab_size < 2) throw Error("random pairs need at least two words");

  std::set<std::pair<WordId, WordId>> synonym;
  for (const auto& s : substitutions) {
    if (s.original != s.synonym) synonym.insert(Ordered(s.original, s.synonym));
  }
  std::set<std::pair<WordId, WordId>> contextual;
  for (const WordPair& p : natural) {
    if (p.origin == Origin::kNatural && p.focus != p.context) {
      contextual.insert(Ordered(p.focus, p.context));
    }
  }

  PairSets sets;
  sets.synonym = Subsample(PairSetKind::kSynonym,
                           {synonym.begin(), synonym.end()}, sizes.synonym,
                           seed);
  sets.contextual = Subsample(PairSetKind::kContextual,
                              {contextual.begin(), contextual.end()},
                              sizes.contextual, seed);

  const std::uint64_t n = vocab_size;
  const std::uint64_t available = n * (n - 1) / 2;
  if (sizes.random > available) {
    throw Error("random pair set: requested " + std::to_string(sizes.random) +
                " pairs but only " + std::to_string(available) +
                " distinct pairs exist");
  }
  Rng rng(DeriveSeed(seed, PairSetKindName(PairSetKind::kRandom)));
  std::set<std::pair<WordId, WordId>> seen;
  sets.random.kind = PairSetKind::kRandom;
  while (sets.random.pairs.size() < sizes.random) {
    const auto a = static_cast<WordId>(rng.Below(n));
    const auto b = static_cast<WordId>(rng.Below(n));
    if (a == b) continue;
    const auto pair = Ordered(a, b);
    if (seen.insert(pair).second) sets.random.pairs.push_back(pair);
  }
  return sets;
}

}  // namespace synaug
