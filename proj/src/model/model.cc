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

#include "newsrec/model/model.h"

#include <unordered_map>

#include <fmt/format.h>

#include "newsrec/errors.h"
#include "newsrec/tensor/ops.h"

namespace newsrec {
namespace {

Tensor RegisterWordTable(ParamStore& store, const ModelConfig& config,
                         Tensor table) {
  config.Validate();
  if (table.shape() != Shape{config.vocab_size, config.word_dim}) {
    throw ConfigError(fmt::format("word table {} does not match vocab {} x dim {}",
                                  ShapeToString(table.shape()),
                                  config.vocab_size, config.word_dim));
  }
  return store.Add(kWordTableName, std::move(table),
                   config.embedding_mode != EmbeddingMode::kFrozen);
}

// Stacks history vectors; undefined when the history is empty.
template <typename Lookup>
Tensor StackHistory(std::span<const std::int32_t> history, Lookup&& lookup) {
  if (history.empty()) return {};
  std::vector<Tensor> rows;
  rows.reserve(history.size());
  for (const auto id : history) rows.push_back(lookup(id));
  return Stack(rows);
}

}  // namespace

NewsRecModel::NewsRecModel(const ModelConfig& config, ParamStore& store,
                           Tensor word_table, std::uint64_t seed)
    : config_(config),
      news_(store, config, RegisterWordTable(store, config, std::move(word_table)),
            seed),
      user_(store, config, seed),
      predictor_(store, config, seed) {}

Tensor NewsRecModel::ScoreAgainst(const UserState& state,
                                  std::span<const Tensor> candidates) const {
  std::vector<Tensor> scores;
  scores.reserve(candidates.size());
  for (const Tensor& r_c : candidates) {
    scores.push_back(predictor_.Score(user_.ForCandidate(state, r_c).u, r_c));
  }
  return Concat(scores);
}

Tensor NewsRecModel::BatchLoss(const std::vector<TrainSample>& samples,
                               const Batch& batch, const NewsCorpus& corpus,
                               const ForwardContext& ctx) const {
  if (batch.size() == 0) throw ContractError("empty batch");
  std::unordered_map<std::int32_t, Tensor> encoded;
  auto vector_of = [&](std::int32_t id) -> const Tensor& {
    auto it = encoded.find(id);
    if (it == encoded.end()) {
      it = encoded.emplace(id, news_.Encode(corpus.articles.at(id), ctx).r).first;
    }
    return it->second;
  };

  std::vector<Tensor> rows;
  rows.reserve(batch.size());
  const auto width = static_cast<std::size_t>(batch.history_width);
  for (std::size_t r = 0; r < batch.size(); ++r) {
    const TrainSample& sample = samples.at(batch.sample_indices[r]);
    std::vector<std::int32_t> history;
    for (std::size_t j = 0; j < width; ++j) {
      if (batch.history_mask[r * width + j]) {
        history.push_back(batch.history[r * width + j]);
      }
    }
    const Tensor hist = StackHistory(history, vector_of);
    const UserState state = user_.Prepare(sample.user_id, hist);
    std::vector<Tensor> candidates;
    candidates.push_back(vector_of(sample.positive));
    for (const auto n : sample.negatives) candidates.push_back(vector_of(n));
    rows.push_back(ScoreAgainst(state, candidates));
  }
  return NceLoss(Stack(rows));
}

Tensor NewsRecModel::SampleScores(const TrainSample& sample,
                                  const NewsCorpus& corpus,
                                  const ForwardContext& ctx) const {
  auto encode = [&](std::int32_t id) {
    return news_.Encode(corpus.articles.at(id), ctx).r;
  };
  const UserState state =
      user_.Prepare(sample.user_id, StackHistory(sample.history, encode));
  std::vector<Tensor> candidates;
  candidates.push_back(encode(sample.positive));
  for (const auto n : sample.negatives) candidates.push_back(encode(n));
  return ScoreAgainst(state, candidates);
}

std::vector<Tensor> NewsRecModel::EncodeCorpus(const NewsCorpus& corpus) const {
  NoGradGuard no_grad;
  std::vector<Tensor> out;
  out.reserve(corpus.size());
  for (const auto& article : corpus.articles) {
    out.push_back(news_.Encode(article, ForwardContext::Eval()).r);
  }
  return out;
}

std::vector<double> NewsRecModel::ScoreCandidates(
    std::int32_t user_id, std::span<const std::int32_t> history,
    std::span<const std::int32_t> candidates,
    const std::vector<Tensor>& news_vectors) const {
  NoGradGuard no_grad;
  auto lookup = [&](std::int32_t id) { return news_vectors.at(id); };
  const UserState state = user_.Prepare(user_id, StackHistory(history, lookup));
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (const auto id : candidates) {
    const Tensor& r_c = news_vectors.at(id);
    scores.push_back(predictor_.Score(user_.ForCandidate(state, r_c).u, r_c).item());
  }
  return scores;
}

}  // namespace newsrec
