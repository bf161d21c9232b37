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

#include "newsrec/train/optim.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "newsrec/errors.h"

namespace newsrec {

double NcePseudoRank(double positive, std::span<const double> negatives) {
  if (negatives.empty()) throw ContractError("pseudo-rank needs K >= 1");
  double top = positive;
  for (const double s : negatives) top = std::max(top, s);
  double z = std::exp(positive - top);
  const double numerator = z;
  for (const double s : negatives) z += std::exp(s - top);
  return numerator / z;
}

double NceLossFromPseudoRanks(std::span<const double> pseudo_ranks) {
  if (pseudo_ranks.empty()) throw ContractError("NCE loss over an empty batch");
  double total = 0.0;
  for (const double p : pseudo_ranks) total -= std::log(p);
  return total / static_cast<double>(pseudo_ranks.size());
}

void Adam::Step(ParamStore& store) {
  for (const auto& [name, t] : store) {
    if (!t.requires_grad() || !t.has_grad()) continue;
    for (const float g : t.grad()) {
      if (!std::isfinite(g)) {
        throw NumericError(fmt::format("non-finite gradient in {}", name));
      }
    }
  }
  ++steps_;
  const double b1 = options_.beta1, b2 = options_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(steps_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(steps_));
  for (auto& [name, handle] : store) {
    if (!handle.requires_grad()) continue;
    Tensor t = handle;
    Moments& mom = moments_[name];
    if (mom.m.empty()) {
      mom.m.assign(t.numel(), 0.0);
      mom.v.assign(t.numel(), 0.0);
    }
    if (!t.has_grad()) continue;
    const auto grad = t.grad();
    auto values = t.mutable_values();
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double g = grad[i];
      mom.m[i] = b1 * mom.m[i] + (1.0 - b1) * g;
      mom.v[i] = b2 * mom.v[i] + (1.0 - b2) * g * g;
      const double m_hat = mom.m[i] / c1;
      const double v_hat = mom.v[i] / c2;
      values[i] = static_cast<float>(
          values[i] - options_.lr * m_hat / (std::sqrt(v_hat) + options_.eps));
    }
  }
}

const std::vector<double>& Adam::first_moment(const std::string& name) const {
  return moments_.at(name).m;
}

const std::vector<double>& Adam::second_moment(const std::string& name) const {
  return moments_.at(name).v;
}

double ClipGradNorm(ParamStore& store, double max_norm) {
  double sq = 0.0;
  for (const auto& [name, t] : store) {
    if (!t.requires_grad() || !t.has_grad()) continue;
    for (const float g : t.grad()) sq += double{g} * g;
  }
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const double factor = max_norm / norm;
    for (auto& [name, handle] : store) {
      if (!handle.requires_grad() || !handle.has_grad()) continue;
      Tensor t = handle;
      for (float& g : t.mutable_grad()) g = static_cast<float>(g * factor);
    }
  }
  return norm;
}

}  // namespace newsrec
