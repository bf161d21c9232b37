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

#ifndef NEWSREC_TENSOR_PARAM_STORE_H_
#define NEWSREC_TENSOR_PARAM_STORE_H_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "newsrec/tensor/tensor.h"

namespace newsrec {

// Named collection of model tensors. Iteration is lexicographic by name.
//
// Frozen entries (requires_grad == false) are stored and checkpointed like
// any other tensor but never receive gradients or optimizer updates.
class ParamStore {
 public:
  using Map = std::map<std::string, Tensor>;

  // Registers a tensor under a unique dot-separated name and returns its
  // handle. Throws ContractError on duplicates.
  Tensor Add(const std::string& name, Tensor tensor, bool trainable = true);

  bool Contains(const std::string& name) const;
  const Tensor& Get(const std::string& name) const;
  Tensor& Get(const std::string& name);
  std::vector<std::string> Names() const;

  std::size_t size() const { return params_.size(); }
  Map::const_iterator begin() const { return params_.begin(); }
  Map::const_iterator end() const { return params_.end(); }

  // Sets gradients of every trainable tensor to zero.
  void ZeroGrad();
  std::size_t NumElements(bool trainable_only = false) const;

  // Deep copy with fresh storage (no shared handles).
  ParamStore Clone() const;
  // Copies values from `other`; names and shapes must match exactly.
  void CopyValuesFrom(const ParamStore& other);

 private:
  Map params_;
};

// Backward() with store semantics: trainable gradients are zeroed first, so
// unreachable parameters end with an all-zero gradient.
void Backward(const Tensor& loss, ParamStore& store);

}  // namespace newsrec

#endif  // NEWSREC_TENSOR_PARAM_STORE_H_
