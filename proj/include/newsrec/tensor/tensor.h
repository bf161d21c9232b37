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

#ifndef NEWSREC_TENSOR_TENSOR_H_
#define NEWSREC_TENSOR_TENSOR_H_

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace newsrec {

using Shape = std::vector<std::int64_t>;

std::string ShapeToString(const Shape& shape);
std::size_t NumElements(const Shape& shape);

struct TensorImpl;

// One recorded operation of the backpropagation graph. `backward` reads the
// gradient of the output and accumulates into the gradients of `inputs`.
struct GraphNode {
  std::vector<std::shared_ptr<TensorImpl>> inputs;
  std::function<void(const TensorImpl& output)> backward;
};

struct TensorImpl {
  Shape shape;
  std::vector<float> values;
  std::vector<float> grad;  // empty until first accumulation
  bool requires_grad = false;
  std::shared_ptr<GraphNode> node;  // null for leaves
  // Double-precision value of a scalar produced by a reduction, before the
  // final rounding to float.
  std::optional<double> precise_scalar;

  // Returns the gradient buffer, allocating zeros on first use.
  std::span<float> MutableGrad();
};

// Dense row-major float tensor with optional gradient tracking.
//
// Tensor is a shared handle: copies alias the same storage. Parameters live
// in a ParamStore and are referenced by handle from the model.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::shared_ptr<TensorImpl> impl) : impl_(std::move(impl)) {}

  static Tensor Zeros(Shape shape, bool requires_grad = false);
  static Tensor Full(Shape shape, float value);
  static Tensor FromValues(Shape shape, std::vector<float> values,
                           bool requires_grad = false);
  static Tensor Vector(std::initializer_list<float> values);
  static Tensor Scalar(float value);

  bool defined() const { return impl_ != nullptr; }
  const Shape& shape() const;
  std::int64_t rank() const { return static_cast<std::int64_t>(shape().size()); }
  std::int64_t dim(std::int64_t axis) const;
  std::size_t numel() const;

  std::span<const float> values() const;
  // Direct write access. Only meaningful for leaves (parameters, inputs).
  std::span<float> mutable_values();
  bool has_grad() const;
  std::span<const float> grad() const;
  std::span<float> mutable_grad();
  void ZeroGrad();

  bool requires_grad() const;
  void set_requires_grad(bool value);
  bool is_leaf() const;

  float item() const;
  // item() at reduction precision when available.
  double scalar() const;
  float at(std::int64_t i) const;
  float at(std::int64_t i, std::int64_t j) const;

  // Copy of the values with no graph linkage.
  Tensor Detach() const;
  std::vector<float> ToVector() const;

  const std::shared_ptr<TensorImpl>& impl() const { return impl_; }

 private:
  std::shared_ptr<TensorImpl> impl_;
};

// Disables graph recording on the current thread while alive.
class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool previous_;
};

bool GradModeEnabled();

// Builds an op result. Records `backward` when grad mode is on and any input
// requires grad; otherwise the result is a plain leaf.
Tensor MakeResult(Shape shape, std::vector<float> values,
                  std::vector<Tensor> inputs,
                  std::function<void(const TensorImpl& output)> backward);

// Runs reverse-mode differentiation from a scalar. Gradients accumulate into
// every reachable tensor that requires grad; graph nodes are released after.
void Backward(const Tensor& loss);

}  // namespace newsrec

#endif  // NEWSREC_TENSOR_TENSOR_H_
