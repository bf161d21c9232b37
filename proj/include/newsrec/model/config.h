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

#ifndef NEWSREC_MODEL_CONFIG_H_
#define NEWSREC_MODEL_CONFIG_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "newsrec/tensor/ops.h"
#include "newsrec/tensor/rng.h"

namespace newsrec {

enum class PredictorKind { kDot, kNeural };

// How the word table is initialized and whether it trains.
//   frozen:    loaded from an embedding file, excluded from updates
//   trainable: loaded from an embedding file, updated
//   random:    seeded random init, updated
enum class EmbeddingMode { kFrozen, kTrainable, kRandom };

PredictorKind ParsePredictorKind(std::string_view text);
std::string_view ToString(PredictorKind kind);
EmbeddingMode ParseEmbeddingMode(std::string_view text);
std::string_view ToString(EmbeddingMode mode);

struct ModelConfig {
  std::int64_t vocab_size = 2;
  std::int64_t word_dim = 300;
  std::int64_t n_categories = 1;
  std::int64_t n_subcategories = 1;
  std::int64_t n_users = 0;  // the table gets one extra row for unknown users

  std::int64_t num_filters = 400;
  std::int64_t window_radius = 1;  // conv window 2r+1
  std::int64_t attention_dim = 200;
  std::int64_t category_dim = 100;
  std::int64_t cand_attention_dim = 200;

  PredictorKind predictor = PredictorKind::kDot;
  std::vector<std::int64_t> predictor_hidden = {256, 64};

  EmbeddingMode embedding_mode = EmbeddingMode::kFrozen;
  bool category_views = true;
  bool word_attention = true;
  float dropout = 0.3f;

  // Throws ConfigError on the first invalid field.
  void Validate() const;
};

// Per-call state of a forward pass. Dropout draws from `rng` in train mode.
struct ForwardContext {
  Mode mode = Mode::kEval;
  float dropout = 0.0f;
  Rng* rng = nullptr;

  static ForwardContext Eval() { return {}; }
  static ForwardContext Train(float dropout, Rng& rng) {
    return {Mode::kTrain, dropout, &rng};
  }
};

Tensor ApplyDropout(const Tensor& x, const ForwardContext& ctx);

}  // namespace newsrec

#endif  // NEWSREC_MODEL_CONFIG_H_
