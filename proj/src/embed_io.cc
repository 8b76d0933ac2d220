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

#include "synaug/embed_io.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_map>

#include "synaug/error.h"

namespace synaug {
namespace {

struct Header {
  std::size_t count;
  std::size_t dim;
};

Header ParseHeader(const std::string& line) {
  Header header{};
  const char* p = line.data();
  const char* end = line.data() + line.size();
  while (p < end && *p == ' ') ++p;
  auto r1 = std::from_chars(p, end, header.count);
  if (r1.ec != std::errc() || r1.ptr == end || *r1.ptr != ' ') {
    throw ParseError("expected '<count> <dim>' header", 1);
  }
  p = r1.ptr;
  while (p < end && *p == ' ') ++p;
  auto r2 = std::from_chars(p, end, header.dim);
  p = r2.ptr;
  while (p < end && (*p == ' ' || *p == '\r')) ++p;
  if (r2.ec != std::errc() || p != end) {
    throw ParseError("expected '<count> <dim>' header", 1);
  }
  if (header.dim == 0) throw ParseError("dimension must be positive", 1);
  return header;
}

void AppendShortest(double value, std::string& out) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, res.ptr);
}

std::uint32_t ToLittleEndian(std::uint32_t bits) {
  if constexpr (std::endian::native == std::endian::big) {
    bits = ((bits & 0xFF) << 24) | ((bits & 0xFF00) << 8) |
           ((bits >> 8) & 0xFF00) | (bits >> 24);
  }
  return bits;
}

}  // namespace

Embeddings ReadText(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing header", 1);
  const Header header = ParseHeader(line);

  Embeddings out;
  out.words.reserve(header.count);
  out.vectors = Matrix(header.count, header.dim);
  std::size_t line_no = 1;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(' ') == std::string::npos) continue;
    if (row == header.count) {
      throw ParseError("more rows than the header count " +
                           std::to_string(header.count),
                       line_no);
    }
    const char* p = line.data();
    const char* end = p + line.size();
    const char* word_end = std::find(p, end, ' ');
    out.words.emplace_back(p, word_end);
    p = word_end;
    auto values = out.vectors.Row(row);
    for (std::size_t k = 0; k < header.dim; ++k) {
      while (p < end && *p == ' ') ++p;
      if (p == end) {
        throw ParseError("expected " + std::to_string(header.dim) +
                             " values, found " + std::to_string(k),
                         line_no);
      }
      auto res = std::from_chars(p, end, values[k]);
      if (res.ec != std::errc() || (res.ptr != end && *res.ptr != ' ')) {
        throw ParseError("non-numeric value in column " + std::to_string(k + 2),
                         line_no);
      }
      p = res.ptr;
    }
    while (p < end && *p == ' ') ++p;
    if (p != end) {
      throw ParseError("more than " + std::to_string(header.dim) + " values",
                       line_no);
    }
    ++row;
  }
  if (row != header.count) {
    throw ParseError("header declares " + std::to_string(header.count) +
                         " rows but file has " + std::to_string(row),
                     line_no);
  }
  return out;
}

void WriteText(const Embeddings& embeddings, std::ostream& out) {
  out << embeddings.size() << ' ' << embeddings.dim() << '\n';
  std::string line;
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    line = embeddings.words[i];
    for (double x : embeddings.vectors.Row(i)) {
      line += ' ';
      AppendShortest(x, line);
    }
    line += '\n';
    out << line;
  }
}

Embeddings ReadBinary(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing header", 1);
  const Header header = ParseHeader(line);

  Embeddings out;
  out.words.reserve(header.count);
  out.vectors = Matrix(header.count, header.dim);
  std::vector<char> buffer(header.dim * sizeof(float));
  for (std::size_t i = 0; i < header.count; ++i) {
    auto truncated = [i] {
      return ParseError("truncated record at word index " + std::to_string(i),
                        0);
    };
    std::string word;
    int c = in.get();
    while (c == '\n') c = in.get();
    while (c != std::char_traits<char>::eof() && c != ' ') {
      word.push_back(static_cast<char>(c));
      c = in.get();
    }
    if (c == std::char_traits<char>::eof() || word.empty()) throw truncated();
    if (!in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()))) {
      throw truncated();
    }
    auto values = out.vectors.Row(i);
    for (std::size_t k = 0; k < header.dim; ++k) {
      std::uint32_t bits;
      std::memcpy(&bits, buffer.data() + k * sizeof(float), sizeof(bits));
      values[k] = std::bit_cast<float>(ToLittleEndian(bits));
    }
    if (in.peek() == '\n') in.get();
    out.words.push_back(std::move(word));
  }
  return out;
}

void WriteBinary(const Embeddings& embeddings, std::ostream& out) {
  out << embeddings.size() << ' ' << embeddings.dim() << '\n';
  std::vector<char> buffer(embeddings.dim() * sizeof(float));
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    out << embeddings.words[i] << ' ';
    auto values = embeddings.vectors.Row(i);
    for (std::size_t k = 0; k < values.size(); ++k) {
      const std::uint32_t bits =
          ToLittleEndian(std::bit_cast<std::uint32_t>(static_cast<float>(values[k])));
      std::memcpy(buffer.data() + k * sizeof(float), &bits, sizeof(bits));
    }
    out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    out << '\n';
  }
}

EmbeddingFormat FormatForPath(const std::filesystem::path& path) {
  return path.extension() == ".bin" ? EmbeddingFormat::kBinary
                                    : EmbeddingFormat::kText;
}

Embeddings LoadEmbeddings(const std::filesystem::path& path,
                          EmbeddingFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open embeddings " + path.string());
  try {
    return format == EmbeddingFormat::kBinary ? ReadBinary(in) : ReadText(in);
  } catch (const ParseError& e) {
    throw e.WithContext(path.string());
  }
}

Embeddings LoadEmbeddings(const std::filesystem::path& path) {
  return LoadEmbeddings(path, FormatForPath(path));
}

void SaveEmbeddings(const Embeddings& embeddings,
                    const std::filesystem::path& path, EmbeddingFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  if (format == EmbeddingFormat::kBinary) {
    WriteBinary(embeddings, out);
  } else {
    WriteText(embeddings, out);
  }
  if (!out.flush()) throw IoError("error writing " + path.string());
}

void SaveEmbeddings(const Embeddings& embeddings,
                    const std::filesystem::path& path) {
  SaveEmbeddings(embeddings, path, FormatForPath(path));
}

Embeddings Crop(const Embeddings& embeddings, const Vocabulary& vocab) {
  std::unordered_map<std::string_view, std::size_t> row_of;
  row_of.reserve(embeddings.size());
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    row_of.emplace(embeddings.words[i], i);
  }
  std::vector<std::size_t> rows;
  for (const std::string& word : vocab.words()) {
    auto it = row_of.find(word);
    if (it != row_of.end()) rows.push_back(it->second);
  }
  if (rows.empty()) {
    throw Error("embeddings and vocabulary share no words");
  }
  Embeddings out;
  out.vectors = Matrix(rows.size(), embeddings.dim());
  out.words.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.words.push_back(embeddings.words[rows[i]]);
    auto src = embeddings.vectors.Row(rows[i]);
    std::copy(src.begin(), src.end(), out.vectors.Row(i).begin());
  }
  return out;
}

}  // namespace synaug
