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

#include "cli.h"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "synaug/augment.h"
#include "synaug/corpus.h"
#include "synaug/embed_io.h"
#include "synaug/error.h"
#include "synaug/eval_extrinsic.h"
#include "synaug/eval_intrinsic.h"
#include "synaug/lexicon.h"
#include "synaug/pairgen.h"
#include "synaug/random.h"
#include "synaug/sgns.h"

namespace synaug::cli {
namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ratios evaluated by `--ratio-sweep paper`.
const std::vector<double> kPaperSweep = {0.0,  0.02, 0.035, 0.06, 0.10,
                                         0.16, 0.25, 0.37,  0.50, 0.64};

std::string FormatDouble(double value) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string Trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

// ---------------------------------------------------------------------------
// Config files and manifests.

struct ConfigEntry {
  std::string key;
  std::string value;
};

std::vector<ConfigEntry> ReadConfigFile(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path.string());
  std::vector<ConfigEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed[0] == '#' || trimmed[0] == ';') continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path.string() + ": line " + std::to_string(line_no) +
                       ": expected 'key = value'");
    }
    ConfigEntry entry{Trim(trimmed.substr(0, eq)),
                      Trim(trimmed.substr(eq + 1))};
    const std::string& v = entry.value;
    if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') &&
        v.back() == v.front()) {
      entry.value = v.substr(1, v.size() - 2);
    }
    if (entry.key.empty()) {
      throw UsageError(path.string() + ": line " + std::to_string(line_no) +
                       ": empty key");
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::optional<bool> ParseBool(const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") {
    return true;
  }
  if (value == "false" || value == "0" || value == "no" || value == "off") {
    return false;
  }
  return std::nullopt;
}

std::string LongName(const std::string& token) {
  if (token.size() < 3 || token.compare(0, 2, "--") != 0) return "";
  return token.substr(2, token.find('=') - 2);
}

// Replaces `--config FILE` after the subcommand name with the flags the
// file describes. Options also given on the command line keep their
// command-line values.
std::vector<std::string> ExpandConfig(const CLI::App& app,
                                      std::vector<std::string> args) {
  auto sub_it = std::find_if(args.begin(), args.end(), [](const std::string& a) {
    return !a.empty() && a[0] != '-';
  });
  if (sub_it == args.end()) return args;
  const CLI::App* sub = app.get_subcommand_no_throw(*sub_it);
  if (sub == nullptr) return args;
  const std::size_t sub_index = sub_it - args.begin();

  std::optional<std::string> config_path;
  std::vector<std::string> rest;
  for (std::size_t i = sub_index + 1; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 == args.size()) throw UsageError("--config needs a file");
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!config_path) return args;

  std::set<std::string> explicit_keys;
  for (const std::string& token : rest) {
    const std::string name = LongName(token);
    if (!name.empty()) explicit_keys.insert(name);
  }

  std::vector<std::string> expanded(args.begin(), args.begin() + sub_index + 1);
  for (const ConfigEntry& entry : ReadConfigFile(*config_path)) {
    if (explicit_keys.count(entry.key) > 0) continue;
    const CLI::Option* opt = sub->get_option_no_throw("--" + entry.key);
    if (opt == nullptr || entry.key == "config") {
      throw UsageError(*config_path + ": unknown key '" + entry.key +
                       "' for " + sub->get_name());
    }
    if (opt->get_expected_max() == 0) {
      const auto on = ParseBool(entry.value);
      if (!on) {
        throw UsageError(*config_path + ": '" + entry.key +
                         "' needs true or false");
      }
      if (*on) expanded.push_back("--" + entry.key);
    } else {
      expanded.push_back("--" + entry.key);
      expanded.push_back(entry.value);
    }
  }
  expanded.insert(expanded.end(), rest.begin(), rest.end());
  return expanded;
}

std::ofstream OpenOutput(const fs::path& path,
                         std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, mode);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void Finish(std::ofstream& out, const fs::path& path) {
  if (!out.flush()) throw IoError("error writing " + path.string());
}

// Records every option of `sub` in `key = value` form, readable by
// `--config`. Unset options without a default are listed as comments.
void WriteManifest(const CLI::App& sub, const fs::path& path,
                   const std::vector<std::string>& notes) {
  std::ofstream out = OpenOutput(path);
  out << "# synaug " << sub.get_name() << '\n';
  for (const std::string& note : notes) out << "# " << note << '\n';
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& key = opt->get_lnames().front();
    if (key == "help" || key == "help-all" || key == "config" ||
        key == "manifest") {
      continue;
    }
    const bool flag = opt->get_expected_max() == 0;
    if (flag) {
      out << key << " = " << (opt->count() > 0 ? "true" : "false") << '\n';
    } else if (opt->count() > 0) {
      for (const std::string& value : opt->results()) {
        out << key << " = " << value << '\n';
      }
    } else if (!opt->get_default_str().empty()) {
      out << key << " = " << opt->get_default_str() << '\n';
    } else {
      out << "# " << key << " is unset\n";
    }
  }
  Finish(out, path);
}

fs::path ManifestPath(const std::string& manifest, const fs::path& output) {
  if (!manifest.empty()) return manifest;
  fs::path path = output;
  path += ".manifest";
  return path;
}

// ---------------------------------------------------------------------------
// Loading helpers.

TokenizedCorpus TokenizeFiles(const std::vector<std::string>& inputs) {
  TokenizedCorpus corpus;
  for (const std::string& input : inputs) {
    try {
      AppendTokenized(ReadFileToString(input), corpus);
    } catch (const DecodeError& e) {
      throw Error(input + ": " + e.what());
    }
  }
  return corpus;
}

TokenizedCorpus LoadCorpus(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus " + path.string());
  return ReadTokenizedCorpus(in);
}

Vocabulary LoadVocab(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open vocabulary " + path.string());
  try {
    return Vocabulary::Read(in);
  } catch (const ParseError& e) {
    throw e.WithContext(path.string());
  }
}

PairFile LoadPairs(const fs::path& path, std::size_t vocab_size) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open pairs " + path.string());
  try {
    return ReadPairs(in, vocab_size);
  } catch (const ParseError& e) {
    throw e.WithContext(path.string());
  }
}

SynonymLexicon LoadLexicon(const fs::path& path, std::ostream& err) {
  LexiconLoadReport report;
  SynonymLexicon lexicon = SynonymLexicon::Load(path, &report);
  err << "lexicon: " << report.records << " records, dropped "
      << report.dropped_multi_token << " multi-token, " << report.dropped_self
      << " self, " << report.dropped_duplicate << " duplicate\n";
  return lexicon;
}

void SaveCorpus(const TokenizedCorpus& corpus, const fs::path& path) {
  std::ofstream out = OpenOutput(path);
  WriteTokenizedCorpus(corpus, out);
  Finish(out, path);
}

void SaveVocab(const Vocabulary& vocab, const fs::path& path) {
  std::ofstream out = OpenOutput(path);
  vocab.Write(out);
  Finish(out, path);
}

void SavePairs(const PairFileHeader& header, const PairDataset& pairs,
               const fs::path& path) {
  std::ofstream out = OpenOutput(path);
  WritePairs(header, pairs, out);
  Finish(out, path);
}

void SaveSubstitutions(const std::vector<SynonymSubstitution>& subs,
                       const Vocabulary& vocab, const fs::path& path) {
  std::ofstream out = OpenOutput(path);
  out << "occurrence\toriginal\tsynonym\n";
  for (const SynonymSubstitution& s : subs) {
    out << s.occurrence << '\t' << vocab.Word(s.original) << '\t'
        << vocab.Word(s.synonym) << '\n';
  }
  Finish(out, path);
}

// Rows of `embeddings` aligned with vocabulary ids. Every word must have a
// vector.
Matrix AlignToVocabulary(const Embeddings& embeddings, const Vocabulary& vocab) {
  Embeddings cropped = Crop(embeddings, vocab);
  if (cropped.size() != vocab.size()) {
    throw Error("embeddings lack " +
                std::to_string(vocab.size() - cropped.size()) + " of " +
                std::to_string(vocab.size()) + " vocabulary words");
  }
  return std::move(cropped.vectors);
}

Vocabulary VocabularyOf(const Embeddings& embeddings) {
  return Vocabulary(embeddings.words,
                    std::vector<std::int64_t>(embeddings.size(), 1), 1);
}

DistanceMetric ParseMetric(const std::string& name) {
  return name == "euclidean" ? DistanceMetric::kEuclidean
                             : DistanceMetric::kCosine;
}

// ---------------------------------------------------------------------------
// Pipeline stages shared by the subcommands and `report`.

struct Augmentation {
  PairDataset natural;
  AugmentedPairs augmented;
};

Augmentation Augment(const TokenizedCorpus& corpus, const Vocabulary& vocab,
                     const SynonymLexicon& lexicon, int window,
                     std::uint64_t seed) {
  Augmentation out;
  out.natural = GeneratePairs(Encode(corpus, vocab), window, seed);
  out.augmented = GenerateAugmentedPairs(out.natural, lexicon, vocab, seed);
  return out;
}

struct TrainOptions {
  TrainConfig config;
  std::string pretrained;
  std::string checkpoint_dir;
};

TrainResult TrainModel(const PairDataset& pairs, const Vocabulary& vocab,
                       const TrainOptions& options, const fs::path& output,
                       const fs::path& loss_csv, std::ostream& err,
                       std::vector<std::string>& notes) {
  const TrainConfig& config = options.config;
  ValidateConfig(config);
  EmbeddingModel initial;
  if (config.init_mode == InitMode::kPretrained) {
    if (options.pretrained.empty()) {
      throw UsageError("--init pretrained needs --pretrained");
    }
    PretrainedInit init = InitPretrained(
        vocab, LoadEmbeddings(options.pretrained), config.dim, config.seed);
    err << "pretrained coverage: " << init.found << " of " << vocab.size()
        << '\n';
    notes.push_back("pretrained coverage: " + std::to_string(init.found) +
                    " of " + std::to_string(vocab.size()));
    initial = std::move(init.model);
  } else {
    initial = InitRandom(vocab.size(), config.dim, config.seed);
  }

  const EmbeddingFormat format = FormatForPath(output);
  const std::string extension = format == EmbeddingFormat::kBinary ? ".bin"
                                                                   : ".txt";
  auto on_epoch = [&](int epoch, double loss, const EmbeddingModel& model) {
    err << "epoch " << epoch << " mean_loss " << FormatDouble(loss) << '\n';
    if (!options.checkpoint_dir.empty()) {
      const fs::path dir = options.checkpoint_dir;
      fs::create_directories(dir);
      SaveEmbeddings(InputEmbeddings(model, vocab),
                     dir / ("epoch-" + std::to_string(epoch) + extension),
                     format);
    }
  };
  TrainResult result =
      Train(pairs, vocab, config, std::move(initial), on_epoch);

  if (output.has_parent_path()) fs::create_directories(output.parent_path());
  SaveEmbeddings(InputEmbeddings(result.model, vocab), output, format);
  std::ofstream loss_out = OpenOutput(loss_csv);
  WriteLossCsv(result.epoch_losses, loss_out);
  Finish(loss_out, loss_csv);
  return result;
}

struct SimRow {
  std::string dataset;
  CorrelationResult result;
};

std::vector<SimRow> EvaluateSimilarity(const Embeddings& embeddings,
                                       const std::vector<std::string>& datasets,
                                       const std::string& common_vocab,
                                       const std::string& metric) {
  const Vocabulary common = common_vocab.empty() ? VocabularyOf(embeddings)
                                                 : LoadVocab(common_vocab);
  const Embeddings cropped = Crop(embeddings, common);
  std::vector<SimRow> rows;
  for (const std::string& path : datasets) {
    const SimilarityDataset dataset = LoadSimilarityDataset(path);
    rows.push_back({dataset.name, SimilarityCorrelation(cropped, dataset, common,
                                                        ParseMetric(metric))});
  }
  return rows;
}

// `dataset,pairs_used,pairs_total,coverage,rho` without a line break.
std::string SimilarityFields(const SimRow& row) {
  const CorrelationResult& r = row.result;
  return row.dataset + ',' + std::to_string(r.pairs_used) + ',' +
         std::to_string(r.pairs_total) + ',' +
         FormatDouble(static_cast<double>(r.pairs_used) /
                      static_cast<double>(r.pairs_total)) +
         ',' + FormatDouble(r.rho);
}

void SaveSimilarity(const std::vector<SimRow>& rows, const fs::path& path) {
  std::ofstream out = OpenOutput(path);
  out << "dataset,pairs_used,pairs_total,coverage,rho\n";
  for (const SimRow& row : rows) out << SimilarityFields(row) << '\n';
  Finish(out, path);
}

std::vector<std::pair<std::string, DistanceStats>> EvaluatePairSets(
    const Embeddings& embeddings, const Vocabulary& vocab,
    const Augmentation& augmentation, const PairSetSizes& sizes,
    std::uint64_t seed) {
  const Matrix vectors = AlignToVocabulary(embeddings, vocab);
  const PairSets sets =
      BuildPairSets(augmentation.augmented.substitutions, augmentation.natural,
                    vocab.size(), sizes, DeriveSeed(seed, "pairsets"));
  std::vector<std::pair<std::string, DistanceStats>> out;
  for (const PairSet* set : {&sets.synonym, &sets.contextual, &sets.random}) {
    out.emplace_back(std::string(PairSetKindName(set->kind)),
                     PairSetStats(vectors, *set));
  }
  return out;
}

void SavePairSetStats(
    const std::vector<std::pair<std::string, DistanceStats>>& stats,
    const fs::path& path) {
  std::ofstream out = OpenOutput(path);
  out << "set,mean,stddev,count\n";
  for (const auto& [name, s] : stats) {
    out << name << ',' << FormatDouble(s.mean) << ',' << FormatDouble(s.stddev)
        << ',' << s.count << '\n';
  }
  Finish(out, path);
}

struct WmdOptions {
  std::string corpus_root;
  std::string split;
  std::string vocab;
  int k = 10;
  bool prune = false;
  int threads = 1;
};

struct WmdRun {
  std::vector<std::string> class_names;
  std::vector<NBowDocument> queries;
  KnnResult knn;
  AccuracyInterval ci;
};

WmdRun EvaluateWmd(const Embeddings& embeddings, const WmdOptions& options,
                   std::ostream& err) {
  const Embeddings usable = options.vocab.empty()
                                ? embeddings
                                : Crop(embeddings, LoadVocab(options.vocab));
  const Vocabulary vocab = VocabularyOf(usable);
  std::optional<fs::path> split;
  if (!options.split.empty()) split = options.split;
  const LabeledCorpus corpus = LoadLabeledCorpus(options.corpus_root, split);

  WmdRun run;
  run.class_names = corpus.class_names;
  NBowSet refs = BuildNBows(corpus.train, vocab);
  KnnOptions knn;
  knn.k = options.k;
  knn.prune = options.prune;
  knn.threads = options.threads;
  if (split) {
    NBowSet queries = BuildNBows(corpus.test, vocab);
    err << "wmd: excluded " << refs.excluded << " train and "
        << queries.excluded << " test documents without known words\n";
    run.queries = std::move(queries.documents);
  } else {
    err << "wmd: excluded " << refs.excluded
        << " documents without known words\n";
    knn.leave_one_out = true;
    run.queries = refs.documents;
  }
  run.knn = KnnClassify(usable.vectors, run.queries, refs.documents, knn);
  run.ci = AccuracyCi(run.knn.correct, run.queries.size());
  err << "wmd: " << run.knn.wmd_evaluations << " exact distances\n";
  return run;
}

void SaveWmd(const WmdRun& run, const fs::path& predictions,
             const fs::path& summary) {
  std::ofstream out = OpenOutput(predictions);
  out << "doc_id,true_label,predicted_label\n";
  for (std::size_t i = 0; i < run.queries.size(); ++i) {
    out << run.queries[i].name << ',' << run.class_names[run.queries[i].label]
        << ',' << run.class_names[run.knn.predictions[i]] << '\n';
  }
  Finish(out, predictions);
  if (summary.empty()) return;
  std::ofstream sum = OpenOutput(summary);
  sum << "accuracy,half_width,n\n"
      << FormatDouble(run.ci.accuracy) << ',' << FormatDouble(run.ci.half_width)
      << ',' << run.queries.size() << '\n';
  Finish(sum, summary);
}

// Fails before any output is written when the largest ratio cannot be met.
void CheckFeasible(const Augmentation& aug, const std::vector<double>& ratios) {
  const double max_ratio = *std::max_element(ratios.begin(), ratios.end());
  const std::size_t needed = AugmentedTarget(aug.natural.size(), max_ratio);
  const std::size_t available = aug.augmented.pairs.size();
  if (needed > available) {
    throw InsufficientAugmentationError(
        needed, available,
        static_cast<double>(available) /
            static_cast<double>(aug.natural.size() + available));
  }
}

// Sweep ratios the augmented pool can supply. Each augmented pair
// replaces the focus of one natural pair, so ratios above 0.5 are never
// reachable; skipped ratios are reported on `err` and in `notes`.
std::vector<double> ReachableRatios(const Augmentation& aug,
                                    const std::vector<double>& ratios,
                                    std::ostream& err,
                                    std::vector<std::string>& notes) {
  std::vector<double> reachable;
  const std::size_t available = aug.augmented.pairs.size();
  const double max_ratio = static_cast<double>(available) /
                           static_cast<double>(aug.natural.size() + available);
  for (double ratio : ratios) {
    if (AugmentedTarget(aug.natural.size(), ratio) <= available) {
      reachable.push_back(ratio);
      continue;
    }
    const std::string note = "skipped ratio " + FormatDouble(ratio) +
                             ": maximum achievable ratio is " +
                             FormatDouble(max_ratio);
    err << "warning: " << note << '\n';
    notes.push_back(note);
  }
  return reachable;
}

std::string RatioDirName(double ratio) { return "ratio-" + FormatDouble(ratio); }

// ---------------------------------------------------------------------------
// Option registration.

void AddTrainOptions(CLI::App& sub, TrainOptions& t, std::string& init) {
  sub.add_option("--dim", t.config.dim, "Embedding dimension")
      ->check(CLI::PositiveNumber);
  sub.add_option("--negatives", t.config.negatives,
                 "Negative samples per pair")->check(CLI::PositiveNumber);
  sub.add_option("--epochs", t.config.epochs, "Training epochs")
      ->check(CLI::PositiveNumber);
  sub.add_option("--lr", t.config.learning_rate, "Learning rate")
      ->check(CLI::PositiveNumber);
  sub.add_option("--batch", t.config.batch_size, "Pairs per batch")
      ->check(CLI::PositiveNumber);
  sub.add_option("--threads", t.config.threads,
                 "Training threads; above 1 the run is not reproducible")
      ->check(CLI::PositiveNumber);
  sub.add_option("--init", init, "Initialization")
      ->check(CLI::IsMember({"random", "pretrained"}));
  sub.add_option("--pretrained", t.pretrained,
                 "Pretrained embeddings for --init pretrained");
  sub.add_option("--checkpoint-dir", t.checkpoint_dir,
                 "Directory for per-epoch input vectors");
}

void AddConfigOptions(CLI::App& sub, std::string& manifest) {
  // Handled by ExpandConfig before parsing; registered for --help.
  sub.add_option("--config", "Read options from a key = value file");
  sub.add_option("--manifest", manifest,
                 "Manifest path (default <output>.manifest)");
}

void CheckRatio(double ratio) {
  if (!(ratio >= 0.0 && ratio < 1.0)) {
    throw UsageError("--ratio must lie in [0, 1)");
  }
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Skip-gram training with synonym data augmentation", "synaug"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  // tokenize
  std::vector<std::string> tok_inputs;
  std::string tok_output, tok_manifest;
  CLI::App* tokenize = app.add_subcommand("tokenize", "Tokenize raw text");
  tokenize->add_option("--input", tok_inputs, "Raw UTF-8 text files")
      ->required();
  tokenize->add_option("--output", tok_output, "Tokenized corpus")->required();
  AddConfigOptions(*tokenize, tok_manifest);

  // build-vocab
  std::string bv_corpus, bv_output, bv_manifest;
  std::int64_t bv_min_count = 1;
  CLI::App* build_vocab =
      app.add_subcommand("build-vocab", "Count words and prune rare ones");
  build_vocab->add_option("--corpus", bv_corpus, "Tokenized corpus")
      ->required();
  build_vocab->add_option("--min-count", bv_min_count,
                          "Drop words seen fewer times")
      ->check(CLI::PositiveNumber);
  build_vocab->add_option("--output", bv_output, "Vocabulary file")
      ->required();
  AddConfigOptions(*build_vocab, bv_manifest);

  // gen-pairs
  std::string gp_corpus, gp_vocab, gp_output, gp_manifest;
  int gp_window = 5;
  std::uint64_t gp_seed = 0;
  CLI::App* gen_pairs =
      app.add_subcommand("gen-pairs", "Sample natural skip-gram pairs");
  gen_pairs->add_option("--corpus", gp_corpus, "Tokenized corpus")->required();
  gen_pairs->add_option("--vocab", gp_vocab, "Vocabulary file")->required();
  gen_pairs->add_option("--window", gp_window, "Maximum context distance")
      ->check(CLI::PositiveNumber);
  gen_pairs->add_option("--seed", gp_seed, "Random seed");
  gen_pairs->add_option("--output", gp_output, "Pair file")->required();
  AddConfigOptions(*gen_pairs, gp_manifest);

  // augment
  std::string au_corpus, au_vocab, au_lexicon, au_output, au_subs, au_sweep,
      au_manifest;
  int au_window = 5;
  std::uint64_t au_seed = 0;
  double au_ratio = 0.25;
  CLI::App* augment = app.add_subcommand(
      "augment", "Mix synonym-substituted pairs into the natural pairs");
  augment->add_option("--corpus", au_corpus, "Tokenized corpus")->required();
  augment->add_option("--vocab", au_vocab, "Vocabulary file")->required();
  augment->add_option("--lexicon", au_lexicon, "Synonym lexicon")->required();
  augment->add_option("--window", au_window, "Maximum context distance")
      ->check(CLI::PositiveNumber);
  augment->add_option("--seed", au_seed, "Random seed");
  augment->add_option("--ratio", au_ratio,
                      "Fraction of augmented pairs in the output");
  augment->add_option("--ratio-sweep", au_sweep,
                      "Write one pair file per ratio of a named sweep")
      ->check(CLI::IsMember({"paper"}));
  augment->add_option("--output", au_output,
                      "Pair file, or a directory with --ratio-sweep")
      ->required();
  augment->add_option("--substitutions", au_subs,
                      "Write the drawn substitutions as TSV");
  AddConfigOptions(*augment, au_manifest);

  // train
  std::string tr_pairs, tr_vocab, tr_output, tr_loss, tr_init = "random",
      tr_manifest;
  TrainOptions tr;
  CLI::App* train = app.add_subcommand("train", "Train skip-gram embeddings");
  train->add_option("--pairs", tr_pairs, "Pair file")->required();
  train->add_option("--vocab", tr_vocab, "Vocabulary file")->required();
  train->add_option("--seed", tr.config.seed, "Random seed");
  AddTrainOptions(*train, tr, tr_init);
  train->add_option("--output", tr_output,
                    "Input vectors; a .bin extension selects binary")
      ->required();
  train->add_option("--loss-csv", tr_loss,
                    "Per-epoch loss (default <output>.loss.csv)");
  AddConfigOptions(*train, tr_manifest);

  // eval-sim
  std::string es_embeddings, es_common, es_metric = "cosine", es_output,
      es_manifest;
  std::vector<std::string> es_datasets;
  CLI::App* eval_sim =
      app.add_subcommand("eval-sim", "Spearman correlation with human scores");
  eval_sim->add_option("--embeddings", es_embeddings, "Embeddings")
      ->required();
  eval_sim->add_option("--dataset", es_datasets,
                       "Similarity dataset (SimLex or WordSim TSV)")
      ->required();
  eval_sim->add_option("--common-vocab", es_common,
                       "Restrict to these words (default: all embedded)");
  eval_sim->add_option("--metric", es_metric, "Vector distance")
      ->check(CLI::IsMember({"cosine", "euclidean"}));
  eval_sim->add_option("--output", es_output, "Result CSV")->required();
  AddConfigOptions(*eval_sim, es_manifest);

  // eval-pairsets
  std::string ep_embeddings, ep_corpus, ep_vocab, ep_lexicon, ep_output,
      ep_manifest;
  int ep_window = 5;
  std::uint64_t ep_seed = 0;
  PairSetSizes ep_sizes;
  CLI::App* eval_pairsets = app.add_subcommand(
      "eval-pairsets", "Mean distances of synonym, contextual, random pairs");
  eval_pairsets->add_option("--embeddings", ep_embeddings, "Embeddings")
      ->required();
  eval_pairsets->add_option("--corpus", ep_corpus, "Tokenized corpus")
      ->required();
  eval_pairsets->add_option("--vocab", ep_vocab, "Vocabulary file")
      ->required();
  eval_pairsets->add_option("--lexicon", ep_lexicon, "Synonym lexicon")
      ->required();
  eval_pairsets->add_option("--window", ep_window, "Maximum context distance")
      ->check(CLI::PositiveNumber);
  eval_pairsets->add_option("--seed", ep_seed, "Random seed");
  eval_pairsets->add_option("--synonym-pairs", ep_sizes.synonym);
  eval_pairsets->add_option("--contextual-pairs", ep_sizes.contextual);
  eval_pairsets->add_option("--random-pairs", ep_sizes.random);
  eval_pairsets->add_option("--output", ep_output, "Result CSV")->required();
  AddConfigOptions(*eval_pairsets, ep_manifest);

  // eval-wmd
  std::string ew_embeddings, ew_output, ew_summary, ew_manifest;
  WmdOptions ew;
  CLI::App* eval_wmd = app.add_subcommand(
      "eval-wmd", "Word Mover's Distance nearest-neighbour classification");
  eval_wmd->add_option("--embeddings", ew_embeddings, "Embeddings")
      ->required();
  eval_wmd->add_option("--corpus-root", ew.corpus_root,
                       "Directory of <class>/<document> files")
      ->required();
  eval_wmd->add_option("--split", ew.split,
                       "Manifest of '<class>/<doc>\\t<train|test>' lines; "
                       "without it, leave-one-out");
  eval_wmd->add_option("--vocab", ew.vocab,
                       "Restrict documents to these words");
  eval_wmd->add_option("--k", ew.k, "Neighbours")->check(CLI::PositiveNumber);
  eval_wmd->add_flag("--prune", ew.prune,
                     "Skip references ruled out by the cheap bounds");
  eval_wmd->add_option("--threads", ew.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  eval_wmd->add_option("--output", ew_output, "Predictions CSV")->required();
  eval_wmd->add_option("--summary", ew_summary,
                       "Accuracy CSV (default <output>.summary.csv)");
  AddConfigOptions(*eval_wmd, ew_manifest);

  // report
  std::vector<std::string> rp_inputs, rp_datasets;
  std::string rp_out_dir, rp_lexicon, rp_sweep, rp_common, rp_metric = "cosine",
      rp_format = "text", rp_init = "random", rp_manifest;
  std::int64_t rp_min_count = 1;
  int rp_window = 5;
  double rp_ratio = 0.25;
  PairSetSizes rp_sizes;
  TrainOptions rp;
  WmdOptions rw;
  CLI::App* report = app.add_subcommand(
      "report", "Run the whole pipeline and write every artifact");
  report->add_option("--input", rp_inputs, "Raw UTF-8 text files")->required();
  report->add_option("--out-dir", rp_out_dir, "Output directory")->required();
  report->add_option("--min-count", rp_min_count, "Vocabulary threshold")
      ->check(CLI::PositiveNumber);
  report->add_option("--window", rp_window, "Maximum context distance")
      ->check(CLI::PositiveNumber);
  report->add_option("--seed", rp.config.seed, "Random seed");
  report->add_option("--lexicon", rp_lexicon,
                     "Synonym lexicon; without it no augmentation");
  report->add_option("--ratio", rp_ratio, "Augmentation ratio");
  report->add_option("--ratio-sweep", rp_sweep, "Named ratio sweep")
      ->check(CLI::IsMember({"paper"}));
  AddTrainOptions(*report, rp, rp_init);
  report->add_option("--model-format", rp_format, "Model file format")
      ->check(CLI::IsMember({"text", "binary"}));
  report->add_option("--dataset", rp_datasets, "Similarity datasets");
  report->add_option("--common-vocab", rp_common, "Similarity vocabulary");
  report->add_option("--metric", rp_metric, "Similarity distance")
      ->check(CLI::IsMember({"cosine", "euclidean"}));
  report->add_option("--synonym-pairs", rp_sizes.synonym);
  report->add_option("--contextual-pairs", rp_sizes.contextual);
  report->add_option("--random-pairs", rp_sizes.random);
  report->add_option("--wmd-corpus-root", rw.corpus_root,
                     "Labelled corpus for the WMD evaluation");
  report->add_option("--wmd-split", rw.split, "Train/test manifest");
  report->add_option("--wmd-vocab", rw.vocab, "WMD vocabulary");
  report->add_option("--wmd-k", rw.k, "Neighbours")
      ->check(CLI::PositiveNumber);
  report->add_flag("--wmd-prune", rw.prune, "Prune with the cheap bounds");
  report->add_option("--wmd-threads", rw.threads, "WMD worker threads")
      ->check(CLI::PositiveNumber);
  AddConfigOptions(*report, rp_manifest);

  try {
    std::vector<std::string> expanded = ExpandConfig(app, args);
    std::reverse(expanded.begin(), expanded.end());
    app.parse(expanded);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "synaug: " << e.what() << "\nRun 'synaug --help' for usage.\n";
    return kExitUsageError;
  } catch (const UsageError& e) {
    err << "synaug: " << e.what() << '\n';
    return kExitUsageError;
  }

  std::vector<std::string> notes;
  try {
    if (tokenize->parsed()) {
      const TokenizedCorpus corpus = TokenizeFiles(tok_inputs);
      SaveCorpus(corpus, tok_output);
      err << "tokenize: " << corpus.sentences.size() << " sentences, "
          << corpus.TokenCount() << " tokens\n";
      WriteManifest(*tokenize, ManifestPath(tok_manifest, tok_output), notes);
    } else if (build_vocab->parsed()) {
      const Vocabulary vocab =
          Vocabulary::Build(LoadCorpus(bv_corpus), bv_min_count);
      SaveVocab(vocab, bv_output);
      err << "build-vocab: " << vocab.size() << " words\n";
      WriteManifest(*build_vocab, ManifestPath(bv_manifest, bv_output), notes);
    } else if (gen_pairs->parsed()) {
      const Vocabulary vocab = LoadVocab(gp_vocab);
      const PairDataset pairs =
          GeneratePairs(Encode(LoadCorpus(gp_corpus), vocab), gp_window,
                        gp_seed);
      SavePairs({gp_window, gp_seed, std::nullopt}, pairs, gp_output);
      err << "gen-pairs: " << pairs.size() << " pairs\n";
      WriteManifest(*gen_pairs, ManifestPath(gp_manifest, gp_output), notes);
    } else if (augment->parsed()) {
      CheckRatio(au_ratio);
      const Vocabulary vocab = LoadVocab(au_vocab);
      const SynonymLexicon lexicon = LoadLexicon(au_lexicon, err);
      const Augmentation aug =
          Augment(LoadCorpus(au_corpus), vocab, lexicon, au_window, au_seed);
      err << "augment: " << aug.natural.size() << " natural, "
          << aug.augmented.pairs.size() << " augmented pairs available\n";
      notes.push_back("natural pairs: " + std::to_string(aug.natural.size()));
      notes.push_back("augmented pairs available: " +
                      std::to_string(aug.augmented.pairs.size()));
      if (!au_subs.empty()) {
        SaveSubstitutions(aug.augmented.substitutions, vocab, au_subs);
      }
      fs::path manifest_target = au_output;
      if (au_sweep.empty()) {
        const PairDataset mixed =
            Mix(aug.natural, aug.augmented.pairs, {au_ratio, au_seed});
        SavePairs({au_window, au_seed, au_ratio}, mixed, au_output);
      } else {
        fs::create_directories(au_output);
        for (double ratio : ReachableRatios(aug, kPaperSweep, err, notes)) {
          const PairDataset mixed =
              Mix(aug.natural, aug.augmented.pairs, {ratio, au_seed});
          SavePairs({au_window, au_seed, ratio}, mixed,
                    fs::path(au_output) /
                        ("pairs-r" + FormatDouble(ratio) + ".txt"));
        }
        manifest_target = fs::path(au_output) / "augment";
      }
      WriteManifest(*augment, ManifestPath(au_manifest, manifest_target),
                    notes);
    } else if (train->parsed()) {
      tr.config.init_mode =
          tr_init == "pretrained" ? InitMode::kPretrained : InitMode::kRandom;
      const Vocabulary vocab = LoadVocab(tr_vocab);
      const PairFile pairs = LoadPairs(tr_pairs, vocab.size());
      const fs::path output = tr_output;
      fs::path loss = tr_loss;
      if (loss.empty()) loss = fs::path(tr_output + ".loss.csv");
      TrainModel(pairs.pairs, vocab, tr, output, loss, err, notes);
      WriteManifest(*train, ManifestPath(tr_manifest, output), notes);
    } else if (eval_sim->parsed()) {
      const std::vector<SimRow> rows = EvaluateSimilarity(
          LoadEmbeddings(es_embeddings), es_datasets, es_common, es_metric);
      SaveSimilarity(rows, es_output);
      for (const SimRow& row : rows) {
        out << row.dataset << " rho=" << FormatDouble(row.result.rho)
            << " pairs=" << row.result.pairs_used << '/'
            << row.result.pairs_total << '\n';
      }
      WriteManifest(*eval_sim, ManifestPath(es_manifest, es_output), notes);
    } else if (eval_pairsets->parsed()) {
      const Vocabulary vocab = LoadVocab(ep_vocab);
      const SynonymLexicon lexicon = LoadLexicon(ep_lexicon, err);
      const Augmentation aug =
          Augment(LoadCorpus(ep_corpus), vocab, lexicon, ep_window, ep_seed);
      const auto stats = EvaluatePairSets(LoadEmbeddings(ep_embeddings), vocab,
                                          aug, ep_sizes, ep_seed);
      SavePairSetStats(stats, ep_output);
      for (const auto& [name, s] : stats) {
        out << name << " mean=" << FormatDouble(s.mean)
            << " stddev=" << FormatDouble(s.stddev) << " n=" << s.count
            << '\n';
      }
      WriteManifest(*eval_pairsets, ManifestPath(ep_manifest, ep_output),
                    notes);
    } else if (eval_wmd->parsed()) {
      const WmdRun run = EvaluateWmd(LoadEmbeddings(ew_embeddings), ew, err);
      const fs::path summary =
          ew_summary.empty() ? fs::path(ew_output + ".summary.csv")
                             : fs::path(ew_summary);
      SaveWmd(run, ew_output, summary);
      out << "accuracy=" << FormatDouble(run.ci.accuracy) << " +/- "
          << FormatDouble(run.ci.half_width) << " n=" << run.queries.size()
          << '\n';
      WriteManifest(*eval_wmd, ManifestPath(ew_manifest, ew_output), notes);
    } else if (report->parsed()) {
      CheckRatio(rp_ratio);
      rp.config.init_mode =
          rp_init == "pretrained" ? InitMode::kPretrained : InitMode::kRandom;
      const std::uint64_t seed = rp.config.seed;
      const fs::path dir = rp_out_dir;
      fs::create_directories(dir);

      const TokenizedCorpus corpus = TokenizeFiles(rp_inputs);
      SaveCorpus(corpus, dir / "corpus.txt");
      const Vocabulary vocab = Vocabulary::Build(corpus, rp_min_count);
      SaveVocab(vocab, dir / "vocab.txt");
      err << "report: " << corpus.TokenCount() << " tokens, " << vocab.size()
          << " words\n";

      std::optional<SynonymLexicon> lexicon;
      Augmentation aug;
      if (!rp_lexicon.empty()) {
        lexicon = LoadLexicon(rp_lexicon, err);
        aug = Augment(corpus, vocab, *lexicon, rp_window, seed);
        SaveSubstitutions(aug.augmented.substitutions, vocab,
                          dir / "substitutions.tsv");
      } else {
        aug.natural = GeneratePairs(Encode(corpus, vocab), rp_window, seed);
      }
      SavePairs({rp_window, seed, std::nullopt}, aug.natural,
                dir / "pairs.natural.txt");

      std::vector<double> ratios = {rp_ratio};
      if (!lexicon) {
        if (!rp_sweep.empty()) {
          throw UsageError("--ratio-sweep needs --lexicon");
        }
        ratios = {0.0};
      } else if (!rp_sweep.empty()) {
        ratios = ReachableRatios(aug, kPaperSweep, err, notes);
      }
      CheckFeasible(aug, ratios);
      const std::string extension = rp_format == "binary" ? ".bin" : ".txt";

      std::ofstream sweep_sim, sweep_sets;
      if (!rp_sweep.empty()) {
        sweep_sim = OpenOutput(dir / "sweep_similarity.csv");
        sweep_sim << "ratio,dataset,pairs_used,pairs_total,coverage,rho\n";
        sweep_sets = OpenOutput(dir / "sweep_pairsets.csv");
        sweep_sets << "ratio,set,mean,stddev,count\n";
      }
      for (double ratio : ratios) {
        const fs::path run_dir =
            rp_sweep.empty() ? dir : dir / RatioDirName(ratio);
        err << "report: ratio " << FormatDouble(ratio) << '\n';
        const PairDataset mixed =
            Mix(aug.natural, aug.augmented.pairs, {ratio, seed});
        SavePairs({rp_window, seed, ratio}, mixed, run_dir / "pairs.mixed.txt");
        TrainModel(mixed, vocab, rp, run_dir / ("model" + extension),
                   run_dir / "loss.csv", err, notes);
        const Embeddings embeddings = LoadEmbeddings(run_dir / ("model" + extension));

        if (!rp_datasets.empty()) {
          const std::vector<SimRow> rows = EvaluateSimilarity(
              embeddings, rp_datasets, rp_common, rp_metric);
          SaveSimilarity(rows, run_dir / "similarity.csv");
          for (const SimRow& row : rows) {
            out << "ratio " << FormatDouble(ratio) << ' ' << row.dataset
                << " rho=" << FormatDouble(row.result.rho) << '\n';
            if (sweep_sim.is_open()) {
              sweep_sim << FormatDouble(ratio) << ',' << SimilarityFields(row)
                        << '\n';
            }
          }
        }
        if (lexicon) {
          const auto stats =
              EvaluatePairSets(embeddings, vocab, aug, rp_sizes, seed);
          SavePairSetStats(stats, run_dir / "pairsets.csv");
          for (const auto& [name, s] : stats) {
            out << "ratio " << FormatDouble(ratio) << ' ' << name
                << " mean=" << FormatDouble(s.mean) << '\n';
            if (sweep_sets.is_open()) {
              sweep_sets << FormatDouble(ratio) << ',' << name << ','
                         << FormatDouble(s.mean) << ','
                         << FormatDouble(s.stddev) << ',' << s.count << '\n';
            }
          }
        }
        if (!rw.corpus_root.empty()) {
          const WmdRun run = EvaluateWmd(embeddings, rw, err);
          SaveWmd(run, run_dir / "wmd_predictions.csv",
                  run_dir / "wmd_summary.csv");
          out << "ratio " << FormatDouble(ratio)
              << " wmd accuracy=" << FormatDouble(run.ci.accuracy) << '\n';
        }
      }
      if (sweep_sim.is_open()) Finish(sweep_sim, dir / "sweep_similarity.csv");
      if (sweep_sets.is_open()) Finish(sweep_sets, dir / "sweep_pairsets.csv");
      const fs::path manifest =
          rp_manifest.empty() ? dir / "manifest.txt" : fs::path(rp_manifest);
      WriteManifest(*report, manifest, notes);
    }
  } catch (const UsageError& e) {
    err << "synaug: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const std::exception& e) {
    err << "synaug: error: " << e.what() << '\n';
    return kExitPipelineError;
  }
  return kExitOk;
}

}  // namespace synaug::cli
