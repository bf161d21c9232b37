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

#include "newsrec/tensor/tensor.h"

#include <algorithm>
#include <unordered_set>
#include <utility>

#include "fmt/format.h"
#include "fmt/ranges.h"
#include "newsrec/errors.h"

namespace newsrec {
namespace {

thread_local bool grad_mode_enabled = true;

void ValidateShape(const Shape& shape) {
  for (const auto d : shape) {
    if (d < 1) {
      throw DimensionError(
          fmt::format("invalid shape {}: dimensions must be >= 1",
                      ShapeToString(shape)));
    }
  }
}

}  // namespace

std::string ShapeToString(const Shape& shape) {
  return fmt::format("[{}]", fmt::join(shape, "x"));
}

std::size_t NumElements(const Shape& shape) {
  std::size_t n = 1;
  for (const auto d : shape) n *= static_cast<std::size_t>(d);
  return n;
}

std::span<float> TensorImpl::MutableGrad() {
  if (grad.empty()) grad.assign(values.size(), 0.0f);
  return grad;
}

Tensor Tensor::Zeros(Shape shape, bool requires_grad) {
  const std::size_t n = NumElements(shape);
  return FromValues(std::move(shape), std::vector<float>(n, 0.0f),
                    requires_grad);
}

Tensor Tensor::Full(Shape shape, float value) {
  const std::size_t n = NumElements(shape);
  return FromValues(std::move(shape), std::vector<float>(n, value));
}

Tensor Tensor::FromValues(Shape shape, std::vector<float> values,
                          bool requires_grad) {
  ValidateShape(shape);
  if (values.size() != NumElements(shape)) {
    throw DimensionError(fmt::format("{} values do not fill shape {}",
                                     values.size(), ShapeToString(shape)));
  }
  auto impl = std::make_shared<TensorImpl>();
  impl->shape = std::move(shape);
  impl->values = std::move(values);
  impl->requires_grad = requires_grad;
  return Tensor(std::move(impl));
}

Tensor Tensor::Vector(std::initializer_list<float> values) {
  return FromValues({static_cast<std::int64_t>(values.size())},
                    std::vector<float>(values));
}

Tensor Tensor::Scalar(float value) { return FromValues({1}, {value}); }

const Shape& Tensor::shape() const { return impl_->shape; }

std::int64_t Tensor::dim(std::int64_t axis) const {
  if (axis < 0 || axis >= rank()) {
    throw IndexError(fmt::format("axis {} out of range for shape {}", axis,
                                 ShapeToString(shape())));
  }
  return impl_->shape[static_cast<std::size_t>(axis)];
}

std::size_t Tensor::numel() const { return impl_->values.size(); }

std::span<const float> Tensor::values() const { return impl_->values; }
std::span<float> Tensor::mutable_values() { return impl_->values; }
bool Tensor::has_grad() const { return !impl_->grad.empty(); }
std::span<const float> Tensor::grad() const { return impl_->grad; }
std::span<float> Tensor::mutable_grad() { return impl_->MutableGrad(); }

void Tensor::ZeroGrad() {
  impl_->grad.assign(impl_->values.size(), 0.0f);
}

bool Tensor::requires_grad() const { return impl_->requires_grad; }
void Tensor::set_requires_grad(bool value) { impl_->requires_grad = value; }
bool Tensor::is_leaf() const { return impl_->node == nullptr; }

float Tensor::item() const {
  if (numel() != 1) {
    throw ContractError(fmt::format("item() on tensor of shape {}",
                                    ShapeToString(shape())));
  }
  return impl_->values[0];
}

double Tensor::scalar() const {
  const float value = item();
  return impl_->precise_scalar.value_or(static_cast<double>(value));
}

float Tensor::at(std::int64_t i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= numel()) {
    throw IndexError(fmt::format("index {} out of range for shape {}", i,
                                 ShapeToString(shape())));
  }
  return impl_->values[static_cast<std::size_t>(i)];
}

float Tensor::at(std::int64_t i, std::int64_t j) const {
  if (rank() != 2 || i < 0 || j < 0 || i >= dim(0) || j >= dim(1)) {
    throw IndexError(fmt::format("index ({}, {}) out of range for shape {}", i,
                                 j, ShapeToString(shape())));
  }
  return impl_->values[static_cast<std::size_t>(i * dim(1) + j)];
}

Tensor Tensor::Detach() const {
  return FromValues(impl_->shape, impl_->values);
}

std::vector<float> Tensor::ToVector() const { return impl_->values; }

NoGradGuard::NoGradGuard() : previous_(grad_mode_enabled) {
  grad_mode_enabled = false;
}

NoGradGuard::~NoGradGuard() { grad_mode_enabled = previous_; }

bool GradModeEnabled() { return grad_mode_enabled; }

Tensor MakeResult(Shape shape, std::vector<float> values,
                  std::vector<Tensor> inputs,
                  std::function<void(const TensorImpl& output)> backward) {
  Tensor result = Tensor::FromValues(std::move(shape), std::move(values));
  if (!grad_mode_enabled) return result;
  const bool any = std::any_of(inputs.begin(), inputs.end(), [](const auto& t) {
    return t.defined() && t.requires_grad();
  });
  if (!any) return result;
  auto node = std::make_shared<GraphNode>();
  for (auto& t : inputs) {
    if (t.defined()) node->inputs.push_back(t.impl());
  }
  node->backward = std::move(backward);
  auto& impl = *result.impl();
  impl.requires_grad = true;
  impl.node = std::move(node);
  return result;
}

void Backward(const Tensor& loss) {
  if (!loss.defined() || loss.numel() != 1) {
    throw ContractError(
        fmt::format("backward needs a scalar loss, got shape {}",
                    loss.defined() ? ShapeToString(loss.shape()) : "<null>"));
  }
  if (!loss.requires_grad()) return;

  // Iterative post-order DFS gives a topological order.
  std::vector<TensorImpl*> order;
  std::unordered_set<TensorImpl*> visited;
  std::vector<std::pair<TensorImpl*, std::size_t>> stack;
  stack.emplace_back(loss.impl().get(), 0);
  visited.insert(loss.impl().get());
  while (!stack.empty()) {
    auto& [impl, next] = stack.back();
    if (impl->node && next < impl->node->inputs.size()) {
      TensorImpl* child = impl->node->inputs[next++].get();
      if (child->requires_grad && visited.insert(child).second) {
        stack.emplace_back(child, 0);
      }
      continue;
    }
    order.push_back(impl);
    stack.pop_back();
  }

  loss.impl()->MutableGrad()[0] += 1.0f;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    TensorImpl* impl = *it;
    if (impl->node && !impl->grad.empty()) impl->node->backward(*impl);
  }
  for (TensorImpl* impl : order) impl->node.reset();
}

}  // namespace newsrec
