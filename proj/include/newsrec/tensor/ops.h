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

#ifndef NEWSREC_TENSOR_OPS_H_
#define NEWSREC_TENSOR_OPS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "newsrec/tensor/rng.h"
#include "newsrec/tensor/tensor.h"

namespace newsrec {

// Differentiable primitives. Vectors are rank-1 tensors, matrices rank-2.
// Reductions accumulate in double and round once to float.

enum class Mode { kTrain, kEval };

// Validity mask: nonzero marks a real position.
using Mask = std::vector<std::uint8_t>;

// [m x k] * [k x n] -> [m x n].
Tensor MatMul(const Tensor& a, const Tensor& b);

// x * weight^T + bias. x is [n x in] or [in]; weight is [out x in]; bias
// is [out] or undefined. Output keeps the rank of x.
Tensor Linear(const Tensor& x, const Tensor& weight, const Tensor& bias = {});

Tensor Add(const Tensor& a, const Tensor& b);
// Adds the [d] row vector to every row of the [n x d] matrix.
Tensor AddRowwise(const Tensor& x, const Tensor& row);
Tensor Mul(const Tensor& a, const Tensor& b);
Tensor Scale(const Tensor& x, float factor);

Tensor Relu(const Tensor& x);
Tensor Tanh(const Tensor& x);
Tensor Sigmoid(const Tensor& x);

// Gathers zero-padded windows: row t of the [L x (2r+1)*d] result is the
// concatenation of input rows t-r .. t+r.
Tensor Im2Col(const Tensor& input, std::int64_t radius);

// Same-length 1-D convolution over a [L x d_in] sequence with
// [d_out x window x d_in] filters and zero padding at both edges.
Tensor Conv1dSame(const Tensor& input, const Tensor& filters,
                  const Tensor& bias);

// Softmax restricted to unmasked positions; masked outputs are exactly 0.
Tensor MaskedSoftmax(const Tensor& logits, std::span<const std::uint8_t> mask);
Tensor Softmax(const Tensor& logits);

// Gathers rows of a [V x d] table. Gradients scatter-add into the table.
Tensor EmbeddingLookup(const Tensor& table, std::span<const std::int32_t> ids);

// Inverted dropout. Identity in eval mode or when p == 0.
Tensor Dropout(const Tensor& x, float p, Mode mode, Rng& rng);

// Joins rank-1 tensors end to end.
Tensor Concat(std::span<const Tensor> parts);
// Stacks n rank-1 tensors of length d into [n x d].
Tensor Stack(std::span<const Tensor> rows);
Tensor Row(const Tensor& matrix, std::int64_t index);
Tensor Slice(const Tensor& vector, std::int64_t begin, std::int64_t length);
Tensor Reshape(const Tensor& x, Shape shape);

// Inner product of two vectors, shape [1].
Tensor Dot(const Tensor& a, const Tensor& b);
Tensor Sum(const Tensor& x);
Tensor Mean(const Tensor& x);
// sum_i weights[i] * rows[i, :] for [n] weights and [n x d] rows.
Tensor WeightedSum(const Tensor& weights, const Tensor& rows);

// Rows of `scores` are [positive, negative_1 .. negative_K]. Returns the mean
// over rows of -log(exp(s_0) / sum_j exp(s_j)), computed as logsumexp - s_0.
Tensor NceLoss(const Tensor& scores);

struct LstmWeights {
  Tensor input_weight;   // [4h x d], gate blocks ordered input, forget, cell, output
  Tensor hidden_weight;  // [4h x h]
  Tensor bias;           // [4h]
};

struct LstmOutput {
  Tensor last_hidden;
  std::vector<Tensor> hidden_states;
};

// Standard LSTM recurrence. An empty input list returns h0 unchanged.
LstmOutput LstmSequence(std::span<const Tensor> inputs, const Tensor& h0,
                        const Tensor& c0, const LstmWeights& weights);

}  // namespace newsrec

#endif  // NEWSREC_TENSOR_OPS_H_
