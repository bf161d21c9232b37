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

#ifndef NEWSREC_MODEL_CLICK_PREDICTOR_H_
#define NEWSREC_MODEL_CLICK_PREDICTOR_H_

#include <cstdint>
#include <vector>

#include "newsrec/model/config.h"
#include "newsrec/tensor/param_store.h"
#include "newsrec/tensor/tensor.h"

namespace newsrec {

// u^T r_c, shape [1].
Tensor DotScore(const Tensor& u, const Tensor& r_c);

// Feed-forward scorer over [u; r_c]: ReLU hidden layers, then one raw
// output unit.
struct MlpParams {
  std::vector<Tensor> weights;  // layer l: [out x in]
  std::vector<Tensor> biases;

  static MlpParams Create(ParamStore& store, std::int64_t n_f,
                          const std::vector<std::int64_t>& hidden,
                          std::uint64_t seed);
};

Tensor DnnScore(const Tensor& u, const Tensor& r_c, const MlpParams& params);

class ClickPredictor {
 public:
  ClickPredictor() = default;
  ClickPredictor(ParamStore& store, const ModelConfig& config,
                 std::uint64_t seed);

  // Raw score, shape [1].
  Tensor Score(const Tensor& u, const Tensor& r_c) const;

  PredictorKind kind() const { return kind_; }
  const MlpParams& mlp() const { return mlp_; }

 private:
  PredictorKind kind_ = PredictorKind::kDot;
  MlpParams mlp_;
};

}  // namespace newsrec

#endif  // NEWSREC_MODEL_CLICK_PREDICTOR_H_
