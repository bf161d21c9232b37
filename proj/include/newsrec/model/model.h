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

#ifndef NEWSREC_MODEL_MODEL_H_
#define NEWSREC_MODEL_MODEL_H_

#include <cstdint>
#include <span>
#include <vector>

#include "newsrec/data/mind.h"
#include "newsrec/data/sampling.h"
#include "newsrec/model/click_predictor.h"
#include "newsrec/model/config.h"
#include "newsrec/model/news_encoder.h"
#include "newsrec/model/user_encoder.h"
#include "newsrec/tensor/param_store.h"
#include "newsrec/tensor/tensor.h"

namespace newsrec {

inline constexpr char kWordTableName[] = "word_embedding.table";

// Full recommender: news encoder, user encoder and click predictor over one
// ParamStore. Parameter handles alias the store, so optimizer updates and
// checkpoint loads are seen immediately.
class NewsRecModel {
 public:
  // Registers every parameter in `store`. `word_table` is [vocab x word_dim]
  // and trains unless the embedding mode is frozen.
  NewsRecModel(const ModelConfig& config, ParamStore& store, Tensor word_table,
               std::uint64_t seed);

  const ModelConfig& config() const { return config_; }
  const NewsEncoder& news_encoder() const { return news_; }
  const UserEncoder& user_encoder() const { return user_; }
  const ClickPredictor& predictor() const { return predictor_; }

  // Mean NCE loss over the samples of `batch`. Each distinct article is
  // encoded once per call, so articles repeated within the batch share one
  // dropout draw.
  Tensor BatchLoss(const std::vector<TrainSample>& samples, const Batch& batch,
                   const NewsCorpus& corpus, const ForwardContext& ctx) const;

  // Scores [positive, negatives...] of one sample, shape [K+1].
  Tensor SampleScores(const TrainSample& sample, const NewsCorpus& corpus,
                      const ForwardContext& ctx) const;

  // Eval-mode vectors of every article, without graph.
  std::vector<Tensor> EncodeCorpus(const NewsCorpus& corpus) const;

  // Eval-mode scores of `candidates` for a user with the given history.
  std::vector<double> ScoreCandidates(std::int32_t user_id,
                                      std::span<const std::int32_t> history,
                                      std::span<const std::int32_t> candidates,
                                      const std::vector<Tensor>& news_vectors) const;

 private:
  Tensor ScoreAgainst(const UserState& state,
                      std::span<const Tensor> candidates) const;

  ModelConfig config_;
  NewsEncoder news_;
  UserEncoder user_;
  ClickPredictor predictor_;
};

}  // namespace newsrec

#endif  // NEWSREC_MODEL_MODEL_H_
