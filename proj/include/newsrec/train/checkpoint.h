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

#ifndef NEWSREC_TRAIN_CHECKPOINT_H_
#define NEWSREC_TRAIN_CHECKPOINT_H_

// Single-file binary checkpoint, little-endian:
//
//   magic "NRCKPT\0\1", u32 format version
//   u64 config hash, i32 epoch, RngState (u64 seed, u64 stream, u64 block,
//   u32 lane)
//   metrics:   u64 n, n x (string name, f64 value)
//   string config text
//   vocabulary, categories, subcategories, users: u64 n, n x string
//   params:    u64 n, n x (string name, u32 rank, rank x i64 dim,
//              u8 trainable, numel x f32)
//   u64 FNV-1a checksum of every preceding byte
//
// Strings are u64 length + bytes. Parameter values round-trip bit-exactly.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "newsrec/tensor/param_store.h"
#include "newsrec/tensor/rng.h"

namespace newsrec {

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  std::uint64_t config_hash = 0;
  std::int32_t epoch = 0;
  RngState rng;
  std::map<std::string, double> metrics;
  std::string config_text;
  std::vector<std::string> vocabulary;
  std::vector<std::string> categories;
  std::vector<std::string> subcategories;
  std::vector<std::string> users;
  ParamStore params;
};

std::string SerializeCheckpoint(const Checkpoint& checkpoint);
// Throws CheckpointError on a bad magic, version, checksum or truncation.
Checkpoint ParseCheckpoint(const std::string& bytes);

void SaveCheckpoint(const std::filesystem::path& path,
                    const Checkpoint& checkpoint);
Checkpoint LoadCheckpoint(const std::filesystem::path& path);

}  // namespace newsrec

#endif  // NEWSREC_TRAIN_CHECKPOINT_H_
