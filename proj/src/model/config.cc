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

#include "newsrec/model/config.h"

#include <fmt/format.h>

#include "newsrec/errors.h"

namespace newsrec {

PredictorKind ParsePredictorKind(std::string_view text) {
  if (text == "dot") return PredictorKind::kDot;
  if (text == "neural") return PredictorKind::kNeural;
  throw ConfigError(
      fmt::format("predictor.kind must be dot or neural, got '{}'", text));
}

std::string_view ToString(PredictorKind kind) {
  return kind == PredictorKind::kDot ? "dot" : "neural";
}

EmbeddingMode ParseEmbeddingMode(std::string_view text) {
  if (text == "frozen") return EmbeddingMode::kFrozen;
  if (text == "trainable") return EmbeddingMode::kTrainable;
  if (text == "random") return EmbeddingMode::kRandom;
  throw ConfigError(fmt::format(
      "embedding.mode must be frozen, trainable or random, got '{}'", text));
}

std::string_view ToString(EmbeddingMode mode) {
  switch (mode) {
    case EmbeddingMode::kFrozen:
      return "frozen";
    case EmbeddingMode::kTrainable:
      return "trainable";
    case EmbeddingMode::kRandom:
      return "random";
  }
  return "frozen";
}

void ModelConfig::Validate() const {
  auto positive = [](std::int64_t v, std::string_view name) {
    if (v < 1) throw ConfigError(fmt::format("{} must be >= 1, got {}", name, v));
  };
  if (vocab_size < 2) throw ConfigError("vocabulary must hold PAD and UNK");
  positive(word_dim, "embedding.dim");
  positive(n_categories, "category count");
  positive(n_subcategories, "subcategory count");
  if (n_users < 0) throw ConfigError("user count must be >= 0");
  positive(num_filters, "model.num_filters");
  if (window_radius < 0) throw ConfigError("model.window_radius must be >= 0");
  positive(attention_dim, "model.attention_dim");
  positive(category_dim, "model.category_dim");
  positive(cand_attention_dim, "model.cand_attention_dim");
  for (const auto h : predictor_hidden) positive(h, "predictor.hidden entry");
  if (!(dropout >= 0.0f && dropout < 1.0f)) {
    throw ConfigError(fmt::format("dropout must be in [0, 1), got {}", dropout));
  }
}

Tensor ApplyDropout(const Tensor& x, const ForwardContext& ctx) {
  if (ctx.mode == Mode::kEval || ctx.dropout == 0.0f) return x;
  if (ctx.rng == nullptr) throw ContractError("train-mode dropout needs an rng");
  return Dropout(x, ctx.dropout, ctx.mode, *ctx.rng);
}

}  // namespace newsrec
