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

#include "synaug/eval_extrinsic.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <string_view>
#include <thread>
#include <unordered_map>

#include "synaug/error.h"
#include "synaug/transport.h"

namespace synaug {
namespace {

struct Neighbor {
  double distance;
  std::size_t index;

  friend bool operator<(const Neighbor& a, const Neighbor& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.index < b.index;
  }
};

int Vote(std::span<const Neighbor> neighbors,
         std::span<const NBowDocument> references) {
  struct Tally {
    int votes = 0;
    double distance = 0.0;
  };
  std::map<int, Tally> tally;
  for (const Neighbor& nb : neighbors) {
    Tally& t = tally[references[nb.index].label];
    ++t.votes;
    t.distance += nb.distance;
  }
  int best_label = 0;
  const Tally* best = nullptr;
  // std::map iterates labels in increasing order, so strict comparisons
  // leave the lowest label on a full tie.
  for (const auto& [label, t] : tally) {
    if (best == nullptr || t.votes > best->votes ||
        (t.votes == best->votes && t.distance < best->distance)) {
      best = &t;
      best_label = label;
    }
  }
  return best_label;
}

std::vector<Neighbor> ExhaustiveNeighbors(const Matrix& vectors,
                                          const NBowDocument& query,
                                          std::size_t query_index,
                                          std::span<const NBowDocument> refs,
                                          const KnnOptions& options,
                                          std::size_t& evaluations) {
  std::vector<Neighbor> all;
  all.reserve(refs.size());
  for (std::size_t r = 0; r < refs.size(); ++r) {
    if (options.leave_one_out && r == query_index) continue;
    all.push_back({WmdDistance(vectors, query, refs[r]), r});
    ++evaluations;
  }
  const std::size_t k =
      std::min(all.size(), static_cast<std::size_t>(options.k));
  std::partial_sort(all.begin(), all.begin() + k, all.end());
  all.resize(k);
  return all;
}

std::vector<Neighbor> PrunedNeighbors(const Matrix& vectors,
                                      const NBowDocument& query,
                                      std::size_t query_index,
                                      std::span<const NBowDocument> refs,
                                      const KnnOptions& options,
                                      std::size_t& evaluations) {
  std::vector<Neighbor> order;
  order.reserve(refs.size());
  for (std::size_t r = 0; r < refs.size(); ++r) {
    if (options.leave_one_out && r == query_index) continue;
    order.push_back({Wcd(vectors, query, refs[r]), r});
  }
  std::sort(order.begin(), order.end());

  const auto k = static_cast<std::size_t>(options.k);
  std::vector<Neighbor> heap;  // max-heap on (distance, index)
  heap.reserve(k + 1);
  for (const Neighbor& candidate : order) {
    if (heap.size() == k) {
      // Prune only when the bound clears the k-th distance by more than
      // rounding error, so a pruned reference could never have entered.
      const double kth = heap.front().distance;
      const double cutoff = kth + 1e-9 * (1.0 + kth);
      if (candidate.distance > cutoff) break;
      if (Rwmd(vectors, query, refs[candidate.index]) > cutoff) continue;
    }
    const Neighbor exact{WmdDistance(vectors, query, refs[candidate.index]),
                         candidate.index};
    ++evaluations;
    if (heap.size() < k) {
      heap.push_back(exact);
      std::push_heap(heap.begin(), heap.end());
    } else if (exact < heap.front()) {
      std::pop_heap(heap.begin(), heap.end());
      heap.back() = exact;
      std::push_heap(heap.begin(), heap.end());
    }
  }
  std::sort(heap.begin(), heap.end());
  return heap;
}

std::vector<std::string> TokenizeDocument(const std::string& bytes) {
  try {
    return TokenizeWords(bytes);
  } catch (const DecodeError&) {
    std::string utf8;
    utf8.reserve(bytes.size() * 2);
    for (unsigned char c : bytes) {
      if (c < 0x80) {
        utf8.push_back(static_cast<char>(c));
      } else {
        utf8.push_back(static_cast<char>(0xC0 | (c >> 6)));
        utf8.push_back(static_cast<char>(0x80 | (c & 0x3F)));
      }
    }
    return TokenizeWords(utf8);
  }
}

}  // namespace

NBowDocument MakeNBow(std::span<const std::string> tokens,
                      const Vocabulary& vocab, int label, std::string name) {
  std::map<WordId, std::size_t> counts;
  std::size_t total = 0;
  for (const std::string& token : tokens) {
    if (auto id = vocab.Find(token)) {
      ++counts[*id];
      ++total;
    }
  }
  if (total == 0) {
    throw Error("document " + (name.empty() ? std::string("<unnamed>") : name) +
                " has no in-vocabulary tokens");
  }
  NBowDocument doc;
  doc.label = label;
  doc.name = std::move(name);
  doc.ids.reserve(counts.size());
  doc.weights.reserve(counts.size());
  for (const auto& [id, count] : counts) {
    doc.ids.push_back(id);
    doc.weights.push_back(static_cast<double>(count) /
                          static_cast<double>(total));
  }
  return doc;
}

double GroundCost(const Matrix& vectors, WordId i, WordId j) {
  if (i == j) return 0.0;
  const auto a = vectors.Row(i);
  const auto b = vectors.Row(j);
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    sum += d * d;
  }
  return std::sqrt(sum);
}

WmdResult Wmd(const Matrix& vectors, const NBowDocument& a,
              const NBowDocument& b) {
  Matrix cost(a.ids.size(), b.ids.size());
  for (std::size_t i = 0; i < a.ids.size(); ++i) {
    for (std::size_t j = 0; j < b.ids.size(); ++j) {
      cost(i, j) = GroundCost(vectors, a.ids[i], b.ids[j]);
    }
  }
  const TransportSolution solution = SolveTransport(a.weights, b.weights, cost);
  WmdResult result;
  result.distance = solution.cost;
  result.plan.cost = solution.cost;
  result.plan.flows.reserve(solution.flows.size());
  for (const TransportFlow& f : solution.flows) {
    result.plan.flows.push_back({a.ids[f.source], b.ids[f.target], f.mass});
  }
  return result;
}

double WmdDistance(const Matrix& vectors, const NBowDocument& a,
                   const NBowDocument& b) {
  return Wmd(vectors, a, b).distance;
}

double Wcd(const Matrix& vectors, const NBowDocument& a,
           const NBowDocument& b) {
  std::vector<double> diff(vectors.cols(), 0.0);
  for (std::size_t i = 0; i < a.ids.size(); ++i) {
    const auto row = vectors.Row(a.ids[i]);
    for (std::size_t k = 0; k < diff.size(); ++k) diff[k] += a.weights[i] * row[k];
  }
  for (std::size_t j = 0; j < b.ids.size(); ++j) {
    const auto row = vectors.Row(b.ids[j]);
    for (std::size_t k = 0; k < diff.size(); ++k) diff[k] -= b.weights[j] * row[k];
  }
  return std::sqrt(Dot(diff, diff));
}

double Rwmd(const Matrix& vectors, const NBowDocument& a,
            const NBowDocument& b) {
  std::vector<double> nearest_a(a.ids.size(),
                                std::numeric_limits<double>::infinity());
  std::vector<double> nearest_b(b.ids.size(),
                                std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < a.ids.size(); ++i) {
    for (std::size_t j = 0; j < b.ids.size(); ++j) {
      const double c = GroundCost(vectors, a.ids[i], b.ids[j]);
      nearest_a[i] = std::min(nearest_a[i], c);
      nearest_b[j] = std::min(nearest_b[j], c);
    }
  }
  double forward = 0.0, backward = 0.0;
  for (std::size_t i = 0; i < a.ids.size(); ++i) {
    forward += a.weights[i] * nearest_a[i];
  }
  for (std::size_t j = 0; j < b.ids.size(); ++j) {
    backward += b.weights[j] * nearest_b[j];
  }
  return std::max(forward, backward);
}

KnnResult KnnClassify(const Matrix& vectors,
                      std::span<const NBowDocument> queries,
                      std::span<const NBowDocument> references,
                      const KnnOptions& options) {
  if (options.k < 1) throw Error("k must be at least 1");
  if (references.empty()) throw Error("no reference documents");
  if (options.leave_one_out && queries.size() != references.size()) {
    throw Error("leave-one-out needs queries and references to be one set");
  }
  const auto threads = static_cast<std::size_t>(std::max(1, options.threads));

  KnnResult result;
  result.predictions.assign(queries.size(), 0);
  std::vector<std::size_t> evaluations(threads, 0);
  auto work = [&](std::size_t t) {
    for (std::size_t q = t; q < queries.size(); q += threads) {
      const auto neighbors =
          options.prune
              ? PrunedNeighbors(vectors, queries[q], q, references, options,
                                evaluations[t])
              : ExhaustiveNeighbors(vectors, queries[q], q, references,
                                    options, evaluations[t]);
      result.predictions[q] = Vote(neighbors, references);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (std::size_t q = 0; q < queries.size(); ++q) {
    if (result.predictions[q] == queries[q].label) ++result.correct;
  }
  for (std::size_t e : evaluations) result.wmd_evaluations += e;
  return result;
}

AccuracyInterval AccuracyCi(std::size_t correct, std::size_t total, double z) {
  if (total == 0) throw DomainError("accuracy over zero documents");
  if (correct > total) throw DomainError("more correct than total");
  const double p = static_cast<double>(correct) / static_cast<double>(total);
  return {p, z * std::sqrt(p * (1.0 - p) / static_cast<double>(total))};
}

LabeledCorpus LoadLabeledCorpus(
    const std::filesystem::path& root,
    const std::optional<std::filesystem::path>& split_manifest) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) {
    throw IoError("corpus root " + root.string() + " is not a directory");
  }
  std::unordered_map<std::string, bool> is_train;
  if (split_manifest) {
    std::ifstream in(*split_manifest);
    if (!in) throw IoError("cannot open " + split_manifest->string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      const auto tab = line.find('\t');
      if (tab == std::string::npos) {
        throw ParseError("expected '<class>/<doc>\\t<train|test>'", line_no);
      }
      const std::string split = line.substr(tab + 1);
      if (split != "train" && split != "test") {
        throw ParseError("split must be train or test", line_no);
      }
      is_train[line.substr(0, tab)] = split == "train";
    }
  }

  LabeledCorpus corpus;
  std::vector<fs::path> class_dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) class_dirs.push_back(entry.path());
  }
  std::sort(class_dirs.begin(), class_dirs.end());
  for (std::size_t label = 0; label < class_dirs.size(); ++label) {
    const std::string class_name = class_dirs[label].filename().string();
    corpus.class_names.push_back(class_name);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(class_dirs[label])) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const fs::path& file : files) {
      LabeledDocument doc;
      doc.name = class_name + "/" + file.filename().string();
      doc.label = static_cast<int>(label);
      bool train = true;
      if (split_manifest) {
        auto it = is_train.find(doc.name);
        if (it == is_train.end()) continue;
        train = it->second;
      }
      doc.tokens = TokenizeDocument(ReadFileToString(file));
      (train ? corpus.train : corpus.test).push_back(std::move(doc));
    }
  }
  return corpus;
}

NBowSet BuildNBows(std::span<const LabeledDocument> documents,
                   const Vocabulary& vocab) {
  NBowSet set;
  set.documents.reserve(documents.size());
  for (const LabeledDocument& doc : documents) {
    const bool usable = std::any_of(
        doc.tokens.begin(), doc.tokens.end(),
        [&](const std::string& t) { return vocab.Contains(t); });
    if (!usable) {
      ++set.excluded;
      continue;
    }
    set.documents.push_back(MakeNBow(doc.tokens, vocab, doc.label, doc.name));
  }
  return set;
}

}  // namespace synaug
