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

#include "newsrec/model/layers.h"

#include <cmath>

#include "newsrec/tensor/ops.h"
#include "newsrec/tensor/rng.h"

namespace newsrec {

Tensor XavierUniform(Shape shape, std::int64_t fan_in, std::int64_t fan_out,
                     std::uint64_t seed, std::string_view name) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  Rng rng = Rng::Derive(seed, name, 0);
  Tensor t = Tensor::Zeros(std::move(shape));
  for (float& v : t.mutable_values()) {
    v = static_cast<float>((2.0 * rng.Uniform() - 1.0) * limit);
  }
  return t;
}

Tensor NormalInit(Shape shape, double stddev, std::uint64_t seed,
                  std::string_view name) {
  Rng rng = Rng::Derive(seed, name, 0);
  Tensor t = Tensor::Zeros(std::move(shape));
  for (float& v : t.mutable_values()) {
    v = static_cast<float>(rng.Normal(0.0, stddev));
  }
  return t;
}

AdditiveAttention AdditiveAttention::Create(ParamStore& store,
                                            const std::string& prefix,
                                            std::int64_t d_in, std::int64_t d_a,
                                            std::uint64_t seed) {
  AdditiveAttention a;
  a.proj_weight = store.Add(
      prefix + ".proj.weight",
      XavierUniform({d_a, d_in}, d_in, d_a, seed, prefix + ".proj.weight"));
  a.proj_bias = store.Add(prefix + ".proj.bias", Tensor::Zeros({d_a}));
  a.query = store.Add(prefix + ".query",
                      XavierUniform({d_a}, d_a, 1, seed, prefix + ".query"));
  return a;
}

Tensor AdditiveAttention::Scores(const Tensor& rows) const {
  return MatVec(Tanh(Linear(rows, proj_weight, proj_bias)), query);
}

Tensor MatVec(const Tensor& matrix, const Tensor& vector) {
  return Reshape(Linear(matrix, Reshape(vector, {1, vector.dim(0)})),
                 {matrix.dim(0)});
}

}  // namespace newsrec
