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

#ifndef NEWSREC_TESTS_SUPPORT_MODEL_ORACLES_H_
#define NEWSREC_TESTS_SUPPORT_MODEL_ORACLES_H_

// Double-precision straight-line evaluations of the encoder and predictor
// formulas, written against raw parameter values.

#include <cstdint>
#include <vector>

#include "newsrec/model/click_predictor.h"
#include "newsrec/model/news_encoder.h"
#include "newsrec/model/user_encoder.h"
#include "numeric_oracles.h"

namespace newsrec::testing {

struct Attended {
  Vec vector;
  Vec weights;
};

// a_i = q . tanh(V x_i + v), softmax, weighted sum of x_i.
Attended AdditiveAttentionOracle(const Mat& rows, const AdditiveAttention& p);

// Lookup, conv + ReLU, word attention, weighted sum; zero for length 0.
Attended TextViewOracle(const std::vector<std::int32_t>& ids,
                        std::int32_t length, const Tensor& word_table,
                        const TextViewParams& p);

Vec CategoryViewOracle(std::int32_t id, const CategoryViewParams& p);

// Hidden layer applied to the explicit concatenation [r_i; r_c].
Attended CandidateAttentionOracle(const Mat& history, const Vec& candidate,
                                  const CandidateAttentionParams& p);

// Unrolled LSTM from h0 = u_l, c0 = 0.
Vec ShortTermOracle(const Mat& history, const Vec& u_l, const LstmWeights& w);

// u = u_s * u_att, or u_s for an empty history.
Vec UserOracle(const Mat& history, const Vec& u_l, const Vec& candidate,
               const UserEncoder& encoder);

double MlpOracle(const Vec& u, const Vec& r_c, const MlpParams& p);

}  // namespace newsrec::testing

#endif  // NEWSREC_TESTS_SUPPORT_MODEL_ORACLES_H_
