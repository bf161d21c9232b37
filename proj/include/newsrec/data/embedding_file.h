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

#ifndef NEWSREC_DATA_EMBEDDING_FILE_H_
#define NEWSREC_DATA_EMBEDDING_FILE_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "newsrec/data/vocabulary.h"
#include "newsrec/tensor/tensor.h"

namespace newsrec {

struct EmbeddingTable {
  Tensor table;  // [vocab_size x dim], PAD row zero
  std::int64_t dim = 0;
  // Coverage over real tokens (ids >= 2).
  std::size_t hits = 0;
  std::size_t misses = 0;
};

// Seeded N(0, 0.1) table with a zero PAD row. Row i depends only on
// (seed, i), so tables built for a prefix-extended vocabulary agree on the
// shared rows.
EmbeddingTable RandomEmbeddingTable(const Vocabulary& vocab, std::int64_t dim,
                                    std::uint64_t seed);

// Reads a text embedding file ("token v1 ... v_dim" per line, optional
// "count dim" header line). Vocabulary hits copy the file vector; misses keep
// their seeded random row. A line with the wrong number of values raises
// DataError naming the line.
EmbeddingTable LoadEmbeddingFile(std::istream& in, const Vocabulary& vocab,
                                 std::int64_t dim, std::uint64_t seed);
EmbeddingTable LoadEmbeddingFile(const std::filesystem::path& path,
                                 const Vocabulary& vocab, std::int64_t dim,
                                 std::uint64_t seed);

}  // namespace newsrec

#endif  // NEWSREC_DATA_EMBEDDING_FILE_H_
