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

#ifndef SYNAUG_EVAL_EXTRINSIC_H_
#define SYNAUG_EVAL_EXTRINSIC_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "synaug/corpus.h"
#include "synaug/matrix.h"

namespace synaug {

// Normalized bag of words: distinct word ids in increasing order with
// positive weights summing to 1.
struct NBowDocument {
  std::vector<WordId> ids;
  std::vector<double> weights;
  int label = 0;
  std::string name;
};

// Weight of w is its count among the in-vocabulary tokens. Throws Error if
// no token is in the vocabulary.
NBowDocument MakeNBow(std::span<const std::string> tokens,
                      const Vocabulary& vocab, int label = 0,
                      std::string name = {});

// Euclidean distance between rows i and j of `vectors`.
double GroundCost(const Matrix& vectors, WordId i, WordId j);

struct WordFlow {
  WordId source;
  WordId target;
  double mass;
};

struct TransportPlan {
  std::vector<WordFlow> flows;
  double cost = 0.0;
};

struct WmdResult {
  double distance = 0.0;
  TransportPlan plan;
};

// Word Mover's Distance: exact optimal transport between the two nBOW
// distributions under GroundCost. Throws TransportError on solver failure.
WmdResult Wmd(const Matrix& vectors, const NBowDocument& a,
              const NBowDocument& b);
double WmdDistance(const Matrix& vectors, const NBowDocument& a,
                   const NBowDocument& b);

// Word centroid distance; a lower bound on WMD.
double Wcd(const Matrix& vectors, const NBowDocument& a, const NBowDocument& b);

// Relaxed WMD: the larger of the two relaxations that each drop one
// marginal constraint and send every word's mass to its nearest word in
// the other document. A lower bound on WMD. It does not dominate Wcd:
// when two documents put their mass on nearby words with different
// proportions, the centroids can be further apart than the relaxation.
double Rwmd(const Matrix& vectors, const NBowDocument& a,
            const NBowDocument& b);

struct KnnOptions {
  int k = 10;
  // Skip exact WMD for references whose WCD or RWMD bound already exceeds
  // the current k-th best distance. Predictions match exhaustive mode.
  bool prune = false;
  // Queries and references are the same set; a document is never its own
  // neighbour.
  bool leave_one_out = false;
  int threads = 1;
};

struct KnnResult {
  std::vector<int> predictions;
  std::size_t correct = 0;
  // Exact WMD computations performed.
  std::size_t wmd_evaluations = 0;
};

// Majority vote of the k nearest references by WMD (ties in distance go to
// the lower reference index). Vote ties go to the class with the smallest
// summed neighbour distance, then to the lowest label.
KnnResult KnnClassify(const Matrix& vectors,
                      std::span<const NBowDocument> queries,
                      std::span<const NBowDocument> references,
                      const KnnOptions& options);

struct AccuracyInterval {
  double accuracy = 0.0;
  double half_width = 0.0;
};

// Normal-approximation interval: z * sqrt(p (1 - p) / total).
AccuracyInterval AccuracyCi(std::size_t correct, std::size_t total,
                            double z = 1.959964);

// Labelled documents read from `<root>/<class_name>/<doc_id>`.
struct LabeledDocument {
  std::string name;  // "<class_name>/<doc_id>"
  int label = 0;
  std::vector<std::string> tokens;
};

struct LabeledCorpus {
  std::vector<std::string> class_names;  // label -> name, sorted
  std::vector<LabeledDocument> train;
  std::vector<LabeledDocument> test;
};

// Without a manifest every document goes to `train` (for leave-one-out
// evaluation). With one, lines `<class_name>/<doc_id>\t<train|test>`
// assign documents and unlisted documents are skipped. Files that are not
// valid UTF-8 are decoded as Latin-1.
LabeledCorpus LoadLabeledCorpus(
    const std::filesystem::path& root,
    const std::optional<std::filesystem::path>& split_manifest = {});

struct NBowSet {
  std::vector<NBowDocument> documents;
  // Documents with no in-vocabulary token.
  std::size_t excluded = 0;
};

NBowSet BuildNBows(std::span<const LabeledDocument> documents,
                   const Vocabulary& vocab);

}  // namespace synaug

#endif  // SYNAUG_EVAL_EXTRINSIC_H_
