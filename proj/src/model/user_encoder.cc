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

#include "newsrec/model/user_encoder.h"

#include <fmt/format.h>

#include "newsrec/errors.h"
#include "newsrec/model/layers.h"

namespace newsrec {

CandidateAttentionParams CandidateAttentionParams::Create(
    ParamStore& store, const std::string& prefix, std::int64_t n_f,
    std::int64_t d_att, std::uint64_t seed) {
  CandidateAttentionParams p;
  // Fan-in of the concatenated input is 2 n_f.
  p.history_weight = store.Add(
      prefix + ".history_weight",
      XavierUniform({d_att, n_f}, 2 * n_f, d_att, seed, prefix + ".history_weight"));
  p.candidate_weight = store.Add(
      prefix + ".candidate_weight",
      XavierUniform({d_att, n_f}, 2 * n_f, d_att, seed,
                    prefix + ".candidate_weight"));
  p.bias = store.Add(prefix + ".bias", Tensor::Zeros({d_att}));
  p.output_weight = store.Add(
      prefix + ".output_weight",
      XavierUniform({d_att}, d_att, 1, seed, prefix + ".output_weight"));
  return p;
}

CandidateAttentionOutput CandidateAttention(
    const Tensor& history, const Tensor& candidate,
    const CandidateAttentionParams& params, const Tensor& history_proj) {
  CandidateAttentionOutput out;
  if (!history.defined()) {
    out.u_att = Tensor::Zeros({candidate.dim(0)});
    return out;
  }
  if (history.rank() != 2 || history.dim(1) != candidate.dim(0)) {
    throw ContractError(fmt::format(
        "history {} does not match candidate {}", ShapeToString(history.shape()),
        ShapeToString(candidate.shape())));
  }
  const Tensor proj = history_proj.defined()
                          ? history_proj
                          : Linear(history, params.history_weight, params.bias);
  const Tensor cand = Linear(candidate, params.candidate_weight);
  const Tensor hidden = Tanh(AddRowwise(proj, cand));
  const Tensor s = Softmax(MatVec(hidden, params.output_weight));
  out.u_att = WeightedSum(s, history);
  out.weights = s.ToVector();
  return out;
}

UserEncoder::UserEncoder(ParamStore& store, const ModelConfig& config,
                         std::uint64_t seed) {
  const std::int64_t n_f = config.num_filters;
  Tensor table = NormalInit({config.n_users + 1, n_f}, 0.1, seed,
                            "user.long_term.table");
  auto values = table.mutable_values();
  std::fill(values.end() - n_f, values.end(), 0.0f);
  long_term_ = store.Add("user.long_term.table", std::move(table));

  lstm_.input_weight = store.Add(
      "user.lstm.w_ih",
      XavierUniform({4 * n_f, n_f}, n_f, n_f, seed, "user.lstm.w_ih"));
  lstm_.hidden_weight = store.Add(
      "user.lstm.w_hh",
      XavierUniform({4 * n_f, n_f}, n_f, n_f, seed, "user.lstm.w_hh"));
  lstm_.bias = store.Add("user.lstm.bias", Tensor::Zeros({4 * n_f}));
  attention_ = CandidateAttentionParams::Create(
      store, "user.cand_attn", n_f, config.cand_attention_dim, seed);
}

Tensor UserEncoder::LongTerm(std::int32_t user_id) const {
  const std::int32_t row =
      user_id < 0 ? static_cast<std::int32_t>(unknown_row()) : user_id;
  if (row > unknown_row()) {
    throw IndexError(fmt::format("user id {} outside table of {} users",
                                 user_id, unknown_row()));
  }
  const std::int32_t ids[] = {row};
  return Reshape(EmbeddingLookup(long_term_, ids), {long_term_.dim(1)});
}

Tensor UserEncoder::ShortTerm(const Tensor& history, const Tensor& u_l) const {
  if (!history.defined()) return u_l;
  if (history.rank() != 2 || history.dim(1) != u_l.dim(0)) {
    throw ContractError(fmt::format("history {} does not match user vector {}",
                                    ShapeToString(history.shape()),
                                    ShapeToString(u_l.shape())));
  }
  std::vector<Tensor> steps;
  steps.reserve(static_cast<std::size_t>(history.dim(0)));
  for (std::int64_t i = 0; i < history.dim(0); ++i) steps.push_back(Row(history, i));
  const Tensor c0 = Tensor::Zeros({u_l.dim(0)});
  return LstmSequence(steps, u_l, c0, lstm_).last_hidden;
}

UserState UserEncoder::Prepare(std::int32_t user_id,
                               const Tensor& history) const {
  UserState state;
  state.u_l = LongTerm(user_id);
  state.u_s = ShortTerm(history, state.u_l);
  state.history = history;
  if (history.defined()) {
    state.history_proj =
        Linear(history, attention_.history_weight, attention_.bias);
  }
  return state;
}

UserVector UserEncoder::ForCandidate(const UserState& state,
                                     const Tensor& candidate) const {
  UserVector out;
  out.u_l = state.u_l;
  out.u_s = state.u_s;
  CandidateAttentionOutput att = CandidateAttention(
      state.history, candidate, attention_, state.history_proj);
  out.u_att = att.u_att;
  out.attention = std::move(att.weights);
  out.u = state.history.defined() ? Mul(state.u_s, att.u_att) : state.u_s;
  return out;
}

UserVector UserEncoder::Encode(std::int32_t user_id, const Tensor& history,
                               const Tensor& candidate) const {
  return ForCandidate(Prepare(user_id, history), candidate);
}

}  // namespace newsrec
