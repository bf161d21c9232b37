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

#ifndef NEWSREC_MODEL_USER_ENCODER_H_
#define NEWSREC_MODEL_USER_ENCODER_H_

// User encoder: a long-term user embedding initializes an LSTM over the
// clicked-news vectors, and candidate-aware attention over the history
// rescales the LSTM output elementwise.

#include <cstdint>
#include <string>
#include <vector>

#include "newsrec/model/config.h"
#include "newsrec/tensor/ops.h"
#include "newsrec/tensor/param_store.h"
#include "newsrec/tensor/tensor.h"

namespace newsrec {

// H([r_i; r_c]) = w^T tanh(A r_i + B r_c + b), with [A B] the hidden layer
// acting on the concatenation.
struct CandidateAttentionParams {
  Tensor history_weight;    // A: [d_att x n_f]
  Tensor candidate_weight;  // B: [d_att x n_f]
  Tensor bias;              // b: [d_att]
  Tensor output_weight;     // w: [d_att]

  static CandidateAttentionParams Create(ParamStore& store,
                                         const std::string& prefix,
                                         std::int64_t n_f, std::int64_t d_att,
                                         std::uint64_t seed);
};

struct CandidateAttentionOutput {
  Tensor u_att;               // [n_f]; zeros for an empty history
  std::vector<float> weights;  // one per history item
};

// `history` is [k x n_f] or undefined for an empty history.
// `history_proj` optionally carries A * history + b, which depends only on
// the history and can be shared across candidates.
CandidateAttentionOutput CandidateAttention(
    const Tensor& history, const Tensor& candidate,
    const CandidateAttentionParams& params, const Tensor& history_proj = {});

// Candidate-independent part of the user state.
struct UserState {
  Tensor u_l;           // long-term embedding
  Tensor u_s;           // LSTM output, u_l for an empty history
  Tensor history;       // [k x n_f] or undefined
  Tensor history_proj;  // [k x d_att] or undefined
};

struct UserVector {
  Tensor u;  // [n_f]
  Tensor u_s;
  Tensor u_l;
  Tensor u_att;
  std::vector<float> attention;
};

class UserEncoder {
 public:
  UserEncoder() = default;
  // Registers "user.*" parameters. The long-term table has n_users + 1 rows;
  // the last one stands for unknown users and starts at zero.
  UserEncoder(ParamStore& store, const ModelConfig& config, std::uint64_t seed);

  // Row of the long-term table for `user_id`; negative ids select the
  // unknown-user row.
  Tensor LongTerm(std::int32_t user_id) const;

  // Runs the LSTM with h0 = u_l and c0 = 0 over the history rows.
  Tensor ShortTerm(const Tensor& history, const Tensor& u_l) const;

  UserState Prepare(std::int32_t user_id, const Tensor& history) const;

  // u = u_s * u_att elementwise; u = u_s for an empty history.
  UserVector ForCandidate(const UserState& state, const Tensor& candidate) const;

  UserVector Encode(std::int32_t user_id, const Tensor& history,
                    const Tensor& candidate) const;

  const Tensor& long_term_table() const { return long_term_; }
  const LstmWeights& lstm() const { return lstm_; }
  const CandidateAttentionParams& candidate_attention() const {
    return attention_;
  }
  std::int64_t unknown_row() const { return long_term_.dim(0) - 1; }

 private:
  Tensor long_term_;
  LstmWeights lstm_;
  CandidateAttentionParams attention_;
};

}  // namespace newsrec

#endif  // NEWSREC_MODEL_USER_ENCODER_H_
