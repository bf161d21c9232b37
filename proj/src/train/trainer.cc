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

#include "newsrec/train/trainer.h"

#include <chrono>
#include <cmath>

#include <fmt/format.h>

#include "newsrec/errors.h"
#include "newsrec/train/optim.h"

namespace newsrec {

void TrainConfig::Validate() const {
  if (negatives < 1) throw ConfigError("train.negatives must be >= 1");
  if (batch_size < 1) throw ConfigError("train.batch_size must be >= 1");
  if (!(lr > 0.0)) throw ConfigError("train.lr must be > 0");
  if (epochs < 1) throw ConfigError("train.epochs must be >= 1");
  if (!(dropout >= 0.0f && dropout < 1.0f)) {
    throw ConfigError("train.dropout must be in [0, 1)");
  }
  if (log_every < 1) throw ConfigError("train.log_every must be >= 1");
}

std::vector<ScoredImpression> ScoreImpressions(
    const NewsRecModel& model, const NewsCorpus& corpus,
    const std::vector<Impression>& impressions) {
  const std::vector<Tensor> vectors = model.EncodeCorpus(corpus);
  std::vector<ScoredImpression> out;
  out.reserve(impressions.size());
  std::vector<std::int32_t> ids;
  for (const auto& imp : impressions) {
    ScoredImpression s;
    s.impression_id = imp.impression_id;
    ids.clear();
    for (const auto& c : imp.candidates) {
      ids.push_back(c.news);
      s.labels.push_back(c.label);
    }
    s.scores = model.ScoreCandidates(imp.user_id, imp.history, ids, vectors);
    out.push_back(std::move(s));
  }
  return out;
}

Trainer::Trainer(const NewsRecModel& model, ParamStore& store,
                 TrainConfig config)
    : model_(model), store_(store), config_(config) {
  config_.Validate();
}

TrainResult Trainer::Train(const NewsCorpus& corpus,
                           const std::vector<Impression>& train,
                           const std::vector<Impression>& valid,
                           const TrainHooks& hooks) {
  const auto& eval_set = valid.empty() ? train : valid;
  Adam adam(AdamOptions{config_.lr});
  TrainResult result;
  double best_auc = -1.0;
  const auto start = std::chrono::steady_clock::now();

  for (int epoch = 1; epoch <= config_.epochs; ++epoch) {
    Rng negative_rng = Rng::Derive(config_.seed, "negatives", epoch);
    SamplingStats stats;
    const std::vector<TrainSample> samples =
        SampleNegatives(train, config_.negatives, negative_rng, &stats);
    if (samples.empty()) {
      throw ConfigError("training data yields no (positive, negatives) samples");
    }
    if (epoch == 1) result.sampling = stats;
    Rng shuffle_rng = Rng::Derive(config_.seed, "shuffle", epoch);
    const std::vector<Batch> batches =
        BuildBatches(samples, config_.batch_size, shuffle_rng);
    Rng dropout_rng = Rng::Derive(config_.seed, "dropout", epoch);
    const ForwardContext ctx = ForwardContext::Train(config_.dropout, dropout_rng);

    double weighted_loss = 0.0;
    for (std::size_t b = 0; b < batches.size(); ++b) {
      const Tensor loss = model_.BatchLoss(samples, batches[b], corpus, ctx);
      const double value = loss.scalar();
      if (!std::isfinite(value)) {
        throw NumericError(
            fmt::format("non-finite loss at epoch {} batch {}", epoch, b + 1));
      }
      Backward(loss, store_);
      ClipGradNorm(store_, config_.grad_clip);
      adam.Step(store_);
      weighted_loss += value * static_cast<double>(batches[b].size());
      if ((b + 1) % config_.log_every == 0 || b + 1 == batches.size()) {
        BatchRecord record{epoch, b + 1, value,
                           std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count()};
        if (hooks.on_batch) hooks.on_batch(record);
        result.batches.push_back(record);
      }
    }

    EpochRecord record;
    record.epoch = epoch;
    record.samples = samples.size();
    record.train_loss = weighted_loss / static_cast<double>(samples.size());
    record.rng = dropout_rng.state();
    record.validation = Aggregate(ScoreImpressions(model_, corpus, eval_set));
    if (record.validation.auc.mean > best_auc) {
      best_auc = record.validation.auc.mean;
      result.best_epoch = epoch;
      result.best_params = store_.Clone();
    }
    result.epochs.push_back(record);
    if (hooks.on_epoch && !hooks.on_epoch(record)) break;
  }
  return result;
}

}  // namespace newsrec
