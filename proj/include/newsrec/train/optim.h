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

#ifndef NEWSREC_TRAIN_OPTIM_H_
#define NEWSREC_TRAIN_OPTIM_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "newsrec/tensor/param_store.h"

namespace newsrec {

// exp(pos) / (exp(pos) + sum exp(neg)), max-subtracted.
double NcePseudoRank(double positive, std::span<const double> negatives);
// Mean of -log p over a non-empty batch of pseudo-rank scores.
double NceLossFromPseudoRanks(std::span<const double> pseudo_ranks);

struct AdamOptions {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Adam with bias correction over the trainable tensors of a store. Frozen
// tensors (requires_grad false) are never touched.
class Adam {
 public:
  explicit Adam(AdamOptions options) : options_(options) {}

  // Throws NumericError naming the first parameter whose gradient holds a
  // NaN or infinity; no parameter is modified in that case.
  void Step(ParamStore& store);

  std::int64_t steps() const { return steps_; }
  const AdamOptions& options() const { return options_; }
  void set_lr(double lr) { options_.lr = lr; }

  const std::vector<double>& first_moment(const std::string& name) const;
  const std::vector<double>& second_moment(const std::string& name) const;

 private:
  struct Moments {
    std::vector<double> m;
    std::vector<double> v;
  };

  AdamOptions options_;
  std::int64_t steps_ = 0;
  std::map<std::string, Moments> moments_;
};

// Rescales trainable gradients so their global L2 norm is at most
// `max_norm`. Returns the norm before clipping. max_norm <= 0 disables it.
double ClipGradNorm(ParamStore& store, double max_norm);

}  // namespace newsrec

#endif  // NEWSREC_TRAIN_OPTIM_H_
