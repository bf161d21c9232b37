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

#ifndef NEWSREC_APP_RUN_CONFIG_H_
#define NEWSREC_APP_RUN_CONFIG_H_

// Run configuration: an INI file of [section] key = value pairs. Every key
// is addressed as "section.key" and may be overridden from the command line.
//
//   [data]       train_news, train_behaviors, valid_news, valid_behaviors,
//                vocab_min_count
//   [embedding]  path, mode (frozen|trainable|random), dim
//   [model]      num_filters, window_radius, attention_dim, category_dim,
//                cand_attention_dim, title_max, abstract_max, history_max,
//                category_views, word_attention
//   [predictor]  kind (dot|neural), hidden (comma-separated widths)
//   [train]      negatives, batch_size, lr, epochs, dropout, seed, grad_clip,
//                log_every
//   [mindtiny]   min_user_clicks, min_news_clicks
//   [output]     dir
//   [log]        wall_time

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "newsrec/data/mind.h"
#include "newsrec/data/mindtiny.h"
#include "newsrec/model/config.h"
#include "newsrec/train/trainer.h"

namespace newsrec {

struct RunConfig {
  std::string train_news;
  std::string train_behaviors;
  std::string valid_news;
  std::string valid_behaviors;
  std::int32_t vocab_min_count = 1;

  std::string embedding_path;
  EmbeddingMode embedding_mode = EmbeddingMode::kRandom;
  std::int64_t embedding_dim = 300;

  std::int64_t num_filters = 400;
  std::int64_t window_radius = 1;
  std::int64_t attention_dim = 200;
  std::int64_t category_dim = 100;
  std::int64_t cand_attention_dim = 200;
  TextLimits limits;
  std::int64_t history_max = 50;
  bool category_views = true;
  bool word_attention = true;

  PredictorKind predictor = PredictorKind::kDot;
  std::vector<std::int64_t> predictor_hidden = {256, 64};

  TrainConfig train;
  MindTinyOptions mindtiny;

  std::string output_dir = "out";
  bool log_wall_time = false;

  // Throws ConfigError on the first invalid field.
  void Validate() const;

  // Model hyperparameters with corpus sizes filled in by the caller.
  ModelConfig ToModelConfig() const;
};

// Every accepted key, in canonical order.
const std::vector<std::string>& RunConfigKeys();

// Applies "section.key" = value. Throws ConfigError for unknown keys and
// malformed values.
void SetRunConfigValue(RunConfig& config, std::string_view key,
                       std::string_view value);
std::string GetRunConfigValue(const RunConfig& config, std::string_view key);

// Parses INI text over the defaults, then applies `overrides` in order.
// The result is validated.
RunConfig ParseRunConfig(
    std::string_view ini_text,
    const std::vector<std::pair<std::string, std::string>>& overrides = {});
RunConfig LoadRunConfig(
    const std::filesystem::path& path,
    const std::vector<std::pair<std::string, std::string>>& overrides = {});

// Every key in canonical INI form; parses back to an equal config.
std::string CanonicalConfigText(const RunConfig& config);

// FNV-1a over the keys that fix parameter shapes and the forward pass:
// embedding mode and dim, model.* and predictor.*.
std::uint64_t ModelConfigHash(const RunConfig& config);

}  // namespace newsrec

#endif  // NEWSREC_APP_RUN_CONFIG_H_
