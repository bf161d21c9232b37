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

#include "newsrec/model/click_predictor.h"

#include <fmt/format.h>

#include "newsrec/errors.h"
#include "newsrec/model/layers.h"
#include "newsrec/tensor/ops.h"

namespace newsrec {
namespace {

void CheckPair(const Tensor& u, const Tensor& r_c) {
  if (u.rank() != 1 || r_c.rank() != 1 || u.numel() != r_c.numel()) {
    throw ContractError(fmt::format("cannot score user {} against news {}",
                                    ShapeToString(u.shape()),
                                    ShapeToString(r_c.shape())));
  }
}

}  // namespace

Tensor DotScore(const Tensor& u, const Tensor& r_c) {
  CheckPair(u, r_c);
  return Dot(u, r_c);
}

MlpParams MlpParams::Create(ParamStore& store, std::int64_t n_f,
                            const std::vector<std::int64_t>& hidden,
                            std::uint64_t seed) {
  MlpParams p;
  std::int64_t in = 2 * n_f;
  std::vector<std::int64_t> widths = hidden;
  widths.push_back(1);
  for (std::size_t l = 0; l < widths.size(); ++l) {
    const std::string prefix = fmt::format("predictor.layer{}", l);
    const std::int64_t out = widths[l];
    p.weights.push_back(store.Add(
        prefix + ".weight",
        XavierUniform({out, in}, in, out, seed, prefix + ".weight")));
    p.biases.push_back(store.Add(prefix + ".bias", Tensor::Zeros({out})));
    in = out;
  }
  return p;
}

Tensor DnnScore(const Tensor& u, const Tensor& r_c, const MlpParams& params) {
  CheckPair(u, r_c);
  const Tensor parts[] = {u, r_c};
  Tensor x = Concat(parts);
  const std::size_t n_layers = params.weights.size();
  for (std::size_t l = 0; l < n_layers; ++l) {
    x = Linear(x, params.weights[l], params.biases[l]);
    if (l + 1 < n_layers) x = Relu(x);
  }
  return x;
}

ClickPredictor::ClickPredictor(ParamStore& store, const ModelConfig& config,
                               std::uint64_t seed)
    : kind_(config.predictor) {
  if (kind_ == PredictorKind::kNeural) {
    mlp_ = MlpParams::Create(store, config.num_filters, config.predictor_hidden,
                             seed);
  }
}

Tensor ClickPredictor::Score(const Tensor& u, const Tensor& r_c) const {
  return kind_ == PredictorKind::kDot ? DotScore(u, r_c)
                                      : DnnScore(u, r_c, mlp_);
}

}  // namespace newsrec
