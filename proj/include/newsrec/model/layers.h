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

#ifndef NEWSREC_MODEL_LAYERS_H_
#define NEWSREC_MODEL_LAYERS_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "newsrec/tensor/param_store.h"
#include "newsrec/tensor/tensor.h"

namespace newsrec {

// Parameter initializers. Each tensor draws from its own stream derived from
// (seed, name), so adding a parameter never shifts the others.
Tensor XavierUniform(Shape shape, std::int64_t fan_in, std::int64_t fan_out,
                     std::uint64_t seed, std::string_view name);
Tensor NormalInit(Shape shape, double stddev, std::uint64_t seed,
                  std::string_view name);

// a_i = q^T tanh(V x_i + v) over the rows of x.
struct AdditiveAttention {
  Tensor proj_weight;  // [d_a x d_in]
  Tensor proj_bias;    // [d_a]
  Tensor query;        // [d_a]

  static AdditiveAttention Create(ParamStore& store, const std::string& prefix,
                                  std::int64_t d_in, std::int64_t d_a,
                                  std::uint64_t seed);
  // Unnormalized scores, [n] for [n x d_in] rows.
  Tensor Scores(const Tensor& rows) const;
};

// [n x d] * [d] -> [n].
Tensor MatVec(const Tensor& matrix, const Tensor& vector);

}  // namespace newsrec

#endif  // NEWSREC_MODEL_LAYERS_H_
