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

#include "newsrec/tensor/param_store.h"

#include <algorithm>

#include "fmt/format.h"
#include "newsrec/errors.h"

namespace newsrec {

Tensor ParamStore::Add(const std::string& name, Tensor tensor, bool trainable) {
  if (!tensor.defined()) {
    throw ContractError(fmt::format("parameter '{}' is undefined", name));
  }
  tensor.set_requires_grad(trainable);
  auto [it, inserted] = params_.emplace(name, std::move(tensor));
  if (!inserted) {
    throw ContractError(fmt::format("duplicate parameter name '{}'", name));
  }
  return it->second;
}

bool ParamStore::Contains(const std::string& name) const {
  return params_.count(name) > 0;
}

const Tensor& ParamStore::Get(const std::string& name) const {
  const auto it = params_.find(name);
  if (it == params_.end()) {
    throw IndexError(fmt::format("unknown parameter '{}'", name));
  }
  return it->second;
}

Tensor& ParamStore::Get(const std::string& name) {
  const auto it = params_.find(name);
  if (it == params_.end()) {
    throw IndexError(fmt::format("unknown parameter '{}'", name));
  }
  return it->second;
}

std::vector<std::string> ParamStore::Names() const {
  std::vector<std::string> names;
  names.reserve(params_.size());
  for (const auto& [name, _] : params_) names.push_back(name);
  return names;
}

void ParamStore::ZeroGrad() {
  for (auto& [_, t] : params_) {
    if (t.requires_grad()) t.ZeroGrad();
  }
}

std::size_t ParamStore::NumElements(bool trainable_only) const {
  std::size_t n = 0;
  for (const auto& [_, t] : params_) {
    if (!trainable_only || t.requires_grad()) n += t.numel();
  }
  return n;
}

ParamStore ParamStore::Clone() const {
  ParamStore copy;
  for (const auto& [name, t] : params_) {
    copy.Add(name, t.Detach(), t.requires_grad());
  }
  return copy;
}

void ParamStore::CopyValuesFrom(const ParamStore& other) {
  if (other.size() != size()) {
    throw ContractError(fmt::format("parameter count mismatch: {} vs {}",
                                    size(), other.size()));
  }
  for (auto& [name, t] : params_) {
    const Tensor& src = other.Get(name);
    if (src.shape() != t.shape()) {
      throw DimensionError(fmt::format("parameter '{}': shape {} vs {}", name,
                                       ShapeToString(t.shape()),
                                       ShapeToString(src.shape())));
    }
    std::ranges::copy(src.values(), t.mutable_values().begin());
  }
}

void Backward(const Tensor& loss, ParamStore& store) {
  if (!loss.defined() || loss.numel() != 1) {
    throw ContractError("backward needs a scalar loss");
  }
  store.ZeroGrad();
  Backward(loss);
}

}  // namespace newsrec
