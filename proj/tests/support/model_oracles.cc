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

#include "model_oracles.h"

#include <algorithm>
#include <cmath>

namespace newsrec::testing {

Attended AdditiveAttentionOracle(const Mat& rows, const AdditiveAttention& p) {
  const Mat v = ToMat(p.proj_weight);
  const Vec b = ToVec(p.proj_bias), q = ToVec(p.query);
  Vec logits;
  for (const Vec& x : rows) logits.push_back(DotVec(q, TanhVec(AddVec(MatVec(v, x), b))));
  Attended out;
  out.weights = DirectSoftmax(logits);
  out.vector.assign(rows[0].size(), 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      out.vector[j] += out.weights[i] * rows[i][j];
    }
  }
  return out;
}

Attended TextViewOracle(const std::vector<std::int32_t>& ids,
                        std::int32_t length, const Tensor& word_table,
                        const TextViewParams& p) {
  if (length == 0) {
    return {Vec(static_cast<std::size_t>(p.conv_weight.dim(0)), 0.0), {}};
  }
  const Mat table = ToMat(word_table);
  Mat words;
  for (std::int32_t i = 0; i < length; ++i) words.push_back(table[ids[i]]);
  Mat context = NaiveConv1dSame(words, p.conv_weight, ToVec(p.conv_bias));
  for (Vec& row : context) row = ReluVec(row);
  return AdditiveAttentionOracle(context, p.attention);
}

Vec CategoryViewOracle(std::int32_t id, const CategoryViewParams& p) {
  const Vec e = ToMat(p.embedding)[id];
  return ReluVec(AddVec(MatVec(ToMat(p.proj_weight), e), ToVec(p.proj_bias)));
}

Attended CandidateAttentionOracle(const Mat& history, const Vec& candidate,
                                  const CandidateAttentionParams& p) {
  const Mat a = ToMat(p.history_weight), b = ToMat(p.candidate_weight);
  Mat w(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    w[i] = a[i];
    w[i].insert(w[i].end(), b[i].begin(), b[i].end());
  }
  const Vec bias = ToVec(p.bias), out_w = ToVec(p.output_weight);
  Vec logits;
  for (const Vec& r : history) {
    Vec joined = r;
    joined.insert(joined.end(), candidate.begin(), candidate.end());
    logits.push_back(DotVec(out_w, TanhVec(AddVec(MatVec(w, joined), bias))));
  }
  Attended out;
  out.weights = DirectSoftmax(logits);
  out.vector.assign(candidate.size(), 0.0);
  for (std::size_t i = 0; i < history.size(); ++i) {
    for (std::size_t j = 0; j < candidate.size(); ++j) {
      out.vector[j] += out.weights[i] * history[i][j];
    }
  }
  return out;
}

Vec ShortTermOracle(const Mat& history, const Vec& u_l, const LstmWeights& w) {
  LstmCellState state{u_l, Vec(u_l.size(), 0.0)};
  const Mat wi = ToMat(w.input_weight), wh = ToMat(w.hidden_weight);
  const Vec b = ToVec(w.bias);
  for (const Vec& x : history) state = LstmStepOracle(x, state, wi, wh, b);
  return state.h;
}

Vec UserOracle(const Mat& history, const Vec& u_l, const Vec& candidate,
               const UserEncoder& encoder) {
  const Vec u_s = ShortTermOracle(history, u_l, encoder.lstm());
  if (history.empty()) return u_s;
  return Hadamard(
      u_s, CandidateAttentionOracle(history, candidate,
                                    encoder.candidate_attention())
               .vector);
}

double MlpOracle(const Vec& u, const Vec& r_c, const MlpParams& p) {
  Vec x = u;
  x.insert(x.end(), r_c.begin(), r_c.end());
  for (std::size_t l = 0; l < p.weights.size(); ++l) {
    x = AddVec(MatVec(ToMat(p.weights[l]), x), ToVec(p.biases[l]));
    if (l + 1 < p.weights.size()) x = ReluVec(x);
  }
  return x[0];
}

}  // namespace newsrec::testing
