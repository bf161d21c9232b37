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

#ifndef NEWSREC_TENSOR_GRAD_CHECK_H_
#define NEWSREC_TENSOR_GRAD_CHECK_H_

#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include "newsrec/tensor/param_store.h"
#include "newsrec/tensor/tensor.h"

namespace newsrec {

struct GradCheckOptions {
  double eps = 1e-2;
  // Coordinates sampled per parameter (all of them when the tensor is smaller).
  std::size_t max_coords_per_param = 200;
  // Denominator floor of the relative error, |a - n| / max(|a|, |n|, floor).
  // float32 round-off in the forward pass bounds the attainable absolute
  // accuracy of the numeric derivative at roughly 1e-5 for eps = 1e-2.
  double abs_floor = 1e-2;
  // Five-point stencil (f(x-2h) - 8f(x-h) + 8f(x+h) - f(x+2h)) / 12h:
  // truncation error O(h^4) instead of O(h^2), at twice the evaluations.
  bool five_point = false;
  std::uint64_t seed = 0x5eed;
};

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::string worst_param;
  std::map<std::string, double> per_param;
  std::size_t coords_checked = 0;
};

// Compares analytic gradients of `f` against central differences
// (f(x + eps) - f(x - eps)) / (2 eps) on a seeded sample of coordinates of
// every trainable tensor in `store`.
//
// `f` must rebuild its graph on every call and return a scalar; two
// evaluations at the same point that differ raise FlakinessError.
GradCheckResult GradCheck(const std::function<Tensor()>& f, ParamStore& store,
                          const GradCheckOptions& options = {});

}  // namespace newsrec

#endif  // NEWSREC_TENSOR_GRAD_CHECK_H_
