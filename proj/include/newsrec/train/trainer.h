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

#ifndef NEWSREC_TRAIN_TRAINER_H_
#define NEWSREC_TRAIN_TRAINER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "newsrec/data/mind.h"
#include "newsrec/data/sampling.h"
#include "newsrec/eval/metrics.h"
#include "newsrec/model/model.h"
#include "newsrec/tensor/param_store.h"
#include "newsrec/tensor/rng.h"

namespace newsrec {

struct TrainConfig {
  int negatives = 3;
  std::size_t batch_size = 128;
  double lr = 1e-4;
  int epochs = 5;
  float dropout = 0.3f;
  std::uint64_t seed = 0;
  double grad_clip = 5.0;
  // Batches between loss records; the last batch of an epoch is always kept.
  std::size_t log_every = 1;

  void Validate() const;
};

// Scores every candidate of every impression in eval mode.
std::vector<ScoredImpression> ScoreImpressions(
    const NewsRecModel& model, const NewsCorpus& corpus,
    const std::vector<Impression>& impressions);

struct BatchRecord {
  int epoch = 0;
  std::size_t batch = 0;  // 1-based within the epoch
  double loss = 0.0;
  double wall_time_s = 0.0;
};

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0.0;  // sample-weighted mean over the epoch
  std::size_t samples = 0;
  EvalReport validation;
  RngState rng;  // dropout stream after the epoch
};

struct TrainResult {
  std::vector<EpochRecord> epochs;
  std::vector<BatchRecord> batches;
  int best_epoch = 0;
  ParamStore best_params;
  SamplingStats sampling;
};

struct TrainHooks {
  std::function<void(const BatchRecord&)> on_batch;
  // Returning false stops training after this epoch.
  std::function<bool(const EpochRecord&)> on_epoch;
};

// Per epoch: fresh negatives, seeded shuffle, batched NCE loss, backward,
// gradient clipping and an Adam step; then validation AUC, keeping the best
// parameters. Uses the training impressions for validation when `valid` is
// empty. Throws ConfigError when sampling yields no training samples and
// NumericError on a non-finite loss, gradient or validation score.
class Trainer {
 public:
  Trainer(const NewsRecModel& model, ParamStore& store, TrainConfig config);

  TrainResult Train(const NewsCorpus& corpus,
                    const std::vector<Impression>& train,
                    const std::vector<Impression>& valid,
                    const TrainHooks& hooks = {});

 private:
  const NewsRecModel& model_;
  ParamStore& store_;
  TrainConfig config_;
};

}  // namespace newsrec

#endif  // NEWSREC_TRAIN_TRAINER_H_
