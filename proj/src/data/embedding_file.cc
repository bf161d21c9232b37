// Copyright 2026 The Newsrec Authors
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

#include "newsrec/data/embedding_file.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "fmt/format.h"
#include "newsrec/errors.h"
#include "newsrec/tensor/rng.h"

namespace newsrec {
namespace {

std::vector<std::string> Fields(const std::string& line) {
  std::istringstream stream(line);
  std::vector<std::string> out;
  std::string field;
  while (stream >> field) out.push_back(field);
  return out;
}

bool IsInteger(const std::string& s) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

EmbeddingTable RandomEmbeddingTable(const Vocabulary& vocab, std::int64_t dim,
                                    std::uint64_t seed) {
  if (dim < 1) throw ConfigError("embedding dimension must be >= 1");
  const auto rows = static_cast<std::int64_t>(vocab.size());
  std::vector<float> values(static_cast<std::size_t>(rows * dim), 0.0f);
  for (std::int64_t r = 1; r < rows; ++r) {
    Rng rng = Rng::Derive(seed, "word_embedding", static_cast<std::uint64_t>(r));
    for (std::int64_t c = 0; c < dim; ++c) {
      values[r * dim + c] = static_cast<float>(rng.Normal(0.0, 0.1));
    }
  }
  EmbeddingTable out;
  out.table = Tensor::FromValues({rows, dim}, std::move(values));
  out.dim = dim;
  out.misses = vocab.size() > 2 ? vocab.size() - 2 : 0;
  return out;
}

EmbeddingTable LoadEmbeddingFile(std::istream& in, const Vocabulary& vocab,
                                 std::int64_t dim, std::uint64_t seed) {
  EmbeddingTable out = RandomEmbeddingTable(vocab, dim, seed);
  std::vector<bool> filled(vocab.size(), false);
  auto values = out.table.mutable_values();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = Fields(line);
    if (fields.empty()) continue;
    if (line_no == 1 && fields.size() == 2 && IsInteger(fields[0]) &&
        IsInteger(fields[1])) {
      continue;  // word2vec-style header
    }
    if (static_cast<std::int64_t>(fields.size()) != dim + 1) {
      throw DataError(fmt::format(
          "embedding file line {}: expected {} values, found {}", line_no, dim,
          fields.size() - 1));
    }
    const std::int32_t id = vocab.Lookup(NormalizeToken(fields[0]));
    if (id < 2 || filled[id]) continue;
    for (std::int64_t c = 0; c < dim; ++c) {
      const std::string& f = fields[c + 1];
      float v = 0.0f;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw DataError(fmt::format("embedding file line {}: bad number '{}'",
                                    line_no, f));
      }
      values[id * dim + c] = v;
    }
    filled[id] = true;
    ++out.hits;
  }
  out.misses = (vocab.size() - 2) - out.hits;
  return out;
}

EmbeddingTable LoadEmbeddingFile(const std::filesystem::path& path,
                                 const Vocabulary& vocab, std::int64_t dim,
                                 std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open {}", path.string()));
  return LoadEmbeddingFile(in, vocab, dim, seed);
}

}  // namespace newsrec
