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

#ifndef SYNAUG_EMBED_IO_H_
#define SYNAUG_EMBED_IO_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "synaug/corpus.h"
#include "synaug/matrix.h"

namespace synaug {

// Word vectors in file order.
struct Embeddings {
  std::vector<std::string> words;
  Matrix vectors;

  std::size_t size() const { return words.size(); }
  std::size_t dim() const { return vectors.cols(); }
};

// word2vec text format: `<count> <dim>` then `<word> <dim floats>` per line.
// Values are written in the shortest form that reads back to the same
// double.
Embeddings ReadText(std::istream& in);
void WriteText(const Embeddings& embeddings, std::ostream& out);

// word2vec binary format: ASCII `<count> <dim>\n`, then per word the word
// bytes, one space, and dim little-endian IEEE-754 binary32 values,
// optionally followed by '\n'. Values are narrowed to float on write.
Embeddings ReadBinary(std::istream& in);
void WriteBinary(const Embeddings& embeddings, std::ostream& out);

enum class EmbeddingFormat { kText, kBinary };

// ".bin" selects the binary format, anything else text.
EmbeddingFormat FormatForPath(const std::filesystem::path& path);

Embeddings LoadEmbeddings(const std::filesystem::path& path,
                          EmbeddingFormat format);
Embeddings LoadEmbeddings(const std::filesystem::path& path);
void SaveEmbeddings(const Embeddings& embeddings,
                    const std::filesystem::path& path, EmbeddingFormat format);
void SaveEmbeddings(const Embeddings& embeddings,
                    const std::filesystem::path& path);

// Rows of `embeddings` whose word is in `vocab`, ordered by vocabulary id.
// Rows are copied unchanged. Throws Error if nothing intersects.
Embeddings Crop(const Embeddings& embeddings, const Vocabulary& vocab);

}  // namespace synaug

#endif  // SYNAUG_EMBED_IO_H_
