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

#include "newsrec/tensor/ops.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string_view>
#include <utility>

#include "fmt/format.h"
#include "newsrec/errors.h"

namespace newsrec {
namespace {

using Impl = std::shared_ptr<TensorImpl>;

void RequireRank(const Tensor& t, std::int64_t rank, std::string_view op) {
  if (!t.defined() || t.rank() != rank) {
    throw DimensionError(fmt::format(
        "{}: expected rank-{} tensor, got {}", op, rank,
        t.defined() ? ShapeToString(t.shape()) : "<undefined>"));
  }
}

void RequireSameShape(const Tensor& a, const Tensor& b, std::string_view op) {
  if (a.shape() != b.shape()) {
    throw DimensionError(fmt::format("{}: shape mismatch {} vs {}", op,
                                     ShapeToString(a.shape()),
                                     ShapeToString(b.shape())));
  }
}

// Returns the gradient buffer of `impl` if it takes gradients, else empty.
std::span<float> GradOf(const Impl& impl) {
  if (!impl->requires_grad) return {};
  return impl->MutableGrad();
}

// C[m x n] (+)= A[m x k] * B[k x n], double accumulation per output row.
void GemmNN(const float* a, const float* b, std::int64_t m, std::int64_t k,
            std::int64_t n, float* c, bool accumulate) {
  std::vector<double> acc(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < m; ++i) {
    std::fill(acc.begin(), acc.end(), 0.0);
    const float* a_row = a + i * k;
    for (std::int64_t p = 0; p < k; ++p) {
      const double av = a_row[p];
      const float* b_row = b + p * n;
      for (std::int64_t j = 0; j < n; ++j) acc[j] += av * b_row[j];
    }
    float* c_row = c + i * n;
    if (accumulate) {
      for (std::int64_t j = 0; j < n; ++j) c_row[j] += static_cast<float>(acc[j]);
    } else {
      for (std::int64_t j = 0; j < n; ++j) c_row[j] = static_cast<float>(acc[j]);
    }
  }
}

std::vector<float> Transpose(const float* a, std::int64_t rows,
                             std::int64_t cols) {
  std::vector<float> t(static_cast<std::size_t>(rows * cols));
  for (std::int64_t i = 0; i < rows; ++i) {
    for (std::int64_t j = 0; j < cols; ++j) t[j * rows + i] = a[i * cols + j];
  }
  return t;
}

// C[m x n] (+)= A[m x k] * B[n x k]^T.
void GemmNT(const float* a, const float* b, std::int64_t m, std::int64_t k,
            std::int64_t n, float* c, bool accumulate) {
  const std::vector<float> bt = Transpose(b, n, k);
  GemmNN(a, bt.data(), m, k, n, c, accumulate);
}

// C[m x n] (+)= A[k x m]^T * B[k x n].
void GemmTN(const float* a, const float* b, std::int64_t k, std::int64_t m,
            std::int64_t n, float* c, bool accumulate) {
  std::vector<double> acc(static_cast<std::size_t>(m * n), 0.0);
  for (std::int64_t p = 0; p < k; ++p) {
    const float* a_row = a + p * m;
    const float* b_row = b + p * n;
    for (std::int64_t i = 0; i < m; ++i) {
      const double av = a_row[i];
      double* acc_row = acc.data() + i * n;
      for (std::int64_t j = 0; j < n; ++j) acc_row[j] += av * b_row[j];
    }
  }
  for (std::size_t idx = 0; idx < acc.size(); ++idx) {
    if (accumulate) {
      c[idx] += static_cast<float>(acc[idx]);
    } else {
      c[idx] = static_cast<float>(acc[idx]);
    }
  }
}

Tensor WithPrecise(double value, Tensor t) {
  t.impl()->precise_scalar = value;
  return t;
}

template <typename Forward, typename Derivative>
Tensor Elementwise(const Tensor& x, Forward forward, Derivative derivative) {
  std::vector<float> out(x.numel());
  const auto in = x.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = forward(in[i]);
  Impl xi = x.impl();
  return MakeResult(x.shape(), std::move(out), {x},
                    [xi, derivative](const TensorImpl& o) {
                      auto gx = GradOf(xi);
                      for (std::size_t i = 0; i < gx.size(); ++i) {
                        gx[i] += o.grad[i] * derivative(xi->values[i], o.values[i]);
                      }
                    });
}

}  // namespace

Tensor MatMul(const Tensor& a, const Tensor& b) {
  RequireRank(a, 2, "matmul");
  RequireRank(b, 2, "matmul");
  const std::int64_t m = a.dim(0), k = a.dim(1), n = b.dim(1);
  if (b.dim(0) != k) {
    throw DimensionError(fmt::format("matmul: inner dimensions differ, {} * {}",
                                     ShapeToString(a.shape()),
                                     ShapeToString(b.shape())));
  }
  std::vector<float> out(static_cast<std::size_t>(m * n));
  GemmNN(a.values().data(), b.values().data(), m, k, n, out.data(), false);
  Impl ai = a.impl(), bi = b.impl();
  return MakeResult({m, n}, std::move(out), {a, b},
                    [ai, bi, m, k, n](const TensorImpl& o) {
                      if (ai->requires_grad) {
                        GemmNT(o.grad.data(), bi->values.data(), m, n, k,
                               ai->MutableGrad().data(), true);
                      }
                      if (bi->requires_grad) {
                        GemmTN(ai->values.data(), o.grad.data(), m, k, n,
                               bi->MutableGrad().data(), true);
                      }
                    });
}

Tensor Linear(const Tensor& x, const Tensor& weight, const Tensor& bias) {
  RequireRank(weight, 2, "linear");
  if (!x.defined() || (x.rank() != 1 && x.rank() != 2)) {
    throw DimensionError("linear: input must be a vector or matrix");
  }
  const std::int64_t in = weight.dim(1), out_dim = weight.dim(0);
  const std::int64_t rows = x.rank() == 2 ? x.dim(0) : 1;
  const std::int64_t x_cols = x.rank() == 2 ? x.dim(1) : x.dim(0);
  if (x_cols != in) {
    throw DimensionError(fmt::format("linear: input {} incompatible with weight {}",
                                     ShapeToString(x.shape()),
                                     ShapeToString(weight.shape())));
  }
  if (bias.defined() && (bias.rank() != 1 || bias.dim(0) != out_dim)) {
    throw DimensionError(fmt::format("linear: bias {} incompatible with weight {}",
                                     ShapeToString(bias.shape()),
                                     ShapeToString(weight.shape())));
  }
  std::vector<float> out(static_cast<std::size_t>(rows * out_dim));
  if (bias.defined()) {
    // Fold the bias into the accumulation so it rounds once.
    const std::vector<float> wt = Transpose(weight.values().data(), out_dim, in);
    std::vector<double> acc(static_cast<std::size_t>(out_dim));
    const float* xv = x.values().data();
    const auto bv = bias.values();
    for (std::int64_t i = 0; i < rows; ++i) {
      for (std::int64_t j = 0; j < out_dim; ++j) acc[j] = bv[j];
      for (std::int64_t p = 0; p < in; ++p) {
        const double xp = xv[i * in + p];
        const float* w_row = wt.data() + p * out_dim;
        for (std::int64_t j = 0; j < out_dim; ++j) acc[j] += xp * w_row[j];
      }
      for (std::int64_t j = 0; j < out_dim; ++j) {
        out[i * out_dim + j] = static_cast<float>(acc[j]);
      }
    }
  } else {
    GemmNT(x.values().data(), weight.values().data(), rows, in, out_dim,
           out.data(), false);
  }
  Shape shape = x.rank() == 2 ? Shape{rows, out_dim} : Shape{out_dim};
  Impl xi = x.impl(), wi = weight.impl();
  Impl bi = bias.defined() ? bias.impl() : nullptr;
  return MakeResult(
      std::move(shape), std::move(out), {x, weight, bias},
      [xi, wi, bi, rows, in, out_dim](const TensorImpl& o) {
        if (xi->requires_grad) {
          GemmNN(o.grad.data(), wi->values.data(), rows, out_dim, in,
                 xi->MutableGrad().data(), true);
        }
        if (wi->requires_grad) {
          GemmTN(o.grad.data(), xi->values.data(), rows, out_dim, in,
                 wi->MutableGrad().data(), true);
        }
        if (bi && bi->requires_grad) {
          auto gb = bi->MutableGrad();
          for (std::int64_t j = 0; j < out_dim; ++j) {
            double s = 0.0;
            for (std::int64_t i = 0; i < rows; ++i) s += o.grad[i * out_dim + j];
            gb[j] += static_cast<float>(s);
          }
        }
      });
}

Tensor Add(const Tensor& a, const Tensor& b) {
  RequireSameShape(a, b, "add");
  std::vector<float> out(a.numel());
  const auto av = a.values(), bv = b.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = av[i] + bv[i];
  Impl ai = a.impl(), bi = b.impl();
  return MakeResult(a.shape(), std::move(out), {a, b},
                    [ai, bi](const TensorImpl& o) {
                      for (const Impl& t : {ai, bi}) {
                        auto g = GradOf(t);
                        for (std::size_t i = 0; i < g.size(); ++i) g[i] += o.grad[i];
                      }
                    });
}

Tensor AddRowwise(const Tensor& x, const Tensor& row) {
  RequireRank(x, 2, "add_rowwise");
  RequireRank(row, 1, "add_rowwise");
  const std::int64_t n = x.dim(0), d = x.dim(1);
  if (row.dim(0) != d) {
    throw DimensionError(fmt::format("add_rowwise: {} vs row {}",
                                     ShapeToString(x.shape()),
                                     ShapeToString(row.shape())));
  }
  std::vector<float> out(x.numel());
  const auto xv = x.values(), rv = row.values();
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < d; ++j) out[i * d + j] = xv[i * d + j] + rv[j];
  }
  Impl xi = x.impl(), ri = row.impl();
  return MakeResult(x.shape(), std::move(out), {x, row},
                    [xi, ri, n, d](const TensorImpl& o) {
                      auto gx = GradOf(xi);
                      for (std::size_t i = 0; i < gx.size(); ++i) gx[i] += o.grad[i];
                      auto gr = GradOf(ri);
                      for (std::int64_t j = 0; j < static_cast<std::int64_t>(gr.size()); ++j) {
                        double s = 0.0;
                        for (std::int64_t i = 0; i < n; ++i) s += o.grad[i * d + j];
                        gr[j] += static_cast<float>(s);
                      }
                    });
}

Tensor Mul(const Tensor& a, const Tensor& b) {
  RequireSameShape(a, b, "mul");
  std::vector<float> out(a.numel());
  const auto av = a.values(), bv = b.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = av[i] * bv[i];
  Impl ai = a.impl(), bi = b.impl();
  return MakeResult(a.shape(), std::move(out), {a, b},
                    [ai, bi](const TensorImpl& o) {
                      auto ga = GradOf(ai);
                      for (std::size_t i = 0; i < ga.size(); ++i) {
                        ga[i] += o.grad[i] * bi->values[i];
                      }
                      auto gb = GradOf(bi);
                      for (std::size_t i = 0; i < gb.size(); ++i) {
                        gb[i] += o.grad[i] * ai->values[i];
                      }
                    });
}

Tensor Scale(const Tensor& x, float factor) {
  return Elementwise(
      x, [factor](float v) { return v * factor; },
      [factor](float, float) { return factor; });
}

Tensor Relu(const Tensor& x) {
  return Elementwise(
      x, [](float v) { return v < 0.0f ? 0.0f : v; },  // NaN passes through
      [](float in, float) { return in > 0.0f ? 1.0f : 0.0f; });
}

Tensor Tanh(const Tensor& x) {
  return Elementwise(
      x, [](float v) { return std::tanh(v); },
      [](float, float y) { return 1.0f - y * y; });
}

Tensor Sigmoid(const Tensor& x) {
  return Elementwise(
      x,
      [](float v) {
        // Branch keeps exp() from overflowing for large |v|.
        if (v >= 0.0f) return 1.0f / (1.0f + std::exp(-v));
        const float e = std::exp(v);
        return e / (1.0f + e);
      },
      [](float, float y) { return y * (1.0f - y); });
}

Tensor Im2Col(const Tensor& input, std::int64_t radius) {
  RequireRank(input, 2, "im2col");
  if (radius < 0) throw ConfigError("im2col: negative radius");
  const std::int64_t length = input.dim(0), d = input.dim(1);
  const std::int64_t window = 2 * radius + 1;
  const std::int64_t cols = window * d;
  std::vector<float> out(static_cast<std::size_t>(length * cols), 0.0f);
  const auto iv = input.values();
  for (std::int64_t t = 0; t < length; ++t) {
    for (std::int64_t j = 0; j < window; ++j) {
      const std::int64_t src = t + j - radius;
      if (src < 0 || src >= length) continue;
      std::copy_n(iv.data() + src * d, d, out.data() + t * cols + j * d);
    }
  }
  Impl ii = input.impl();
  return MakeResult({length, cols}, std::move(out), {input},
                    [ii, length, d, window, radius, cols](const TensorImpl& o) {
                      auto gi = GradOf(ii);
                      if (gi.empty()) return;
                      for (std::int64_t t = 0; t < length; ++t) {
                        for (std::int64_t j = 0; j < window; ++j) {
                          const std::int64_t src = t + j - radius;
                          if (src < 0 || src >= length) continue;
                          const float* g = o.grad.data() + t * cols + j * d;
                          float* dst = gi.data() + src * d;
                          for (std::int64_t c = 0; c < d; ++c) dst[c] += g[c];
                        }
                      }
                    });
}

Tensor Conv1dSame(const Tensor& input, const Tensor& filters,
                  const Tensor& bias) {
  RequireRank(input, 2, "conv1d_same");
  RequireRank(filters, 3, "conv1d_same");
  const std::int64_t out_dim = filters.dim(0), window = filters.dim(1),
                     in_dim = filters.dim(2);
  if (window % 2 == 0) {
    throw ConfigError(
        fmt::format("conv1d_same: window {} is not odd", window));
  }
  if (input.dim(1) != in_dim) {
    throw DimensionError(fmt::format("conv1d_same: input {} vs filters {}",
                                     ShapeToString(input.shape()),
                                     ShapeToString(filters.shape())));
  }
  const Tensor cols = Im2Col(input, (window - 1) / 2);
  const Tensor flat = Reshape(filters, {out_dim, window * in_dim});
  return Linear(cols, flat, bias);
}

Tensor MaskedSoftmax(const Tensor& logits, std::span<const std::uint8_t> mask) {
  RequireRank(logits, 1, "masked_softmax");
  const std::size_t n = logits.numel();
  if (mask.size() != n) {
    throw DimensionError(fmt::format("masked_softmax: {} logits, {} mask entries",
                                     n, mask.size()));
  }
  const auto lv = logits.values();
  double max_logit = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask[i]) {
      max_logit = std::max(max_logit, static_cast<double>(lv[i]));
      any = true;
    }
  }
  if (!any) throw EmptyAttentionError("masked_softmax: every position is masked");
  std::vector<double> e(n, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask[i]) {
      e[i] = std::exp(static_cast<double>(lv[i]) - max_logit);
      total += e[i];
    }
  }
  std::vector<float> out(n, 0.0f);
  for (std::size_t i = 0; i < n; ++i) {
    if (mask[i]) out[i] = static_cast<float>(e[i] / total);
  }
  Impl li = logits.impl();
  return MakeResult(logits.shape(), std::move(out), {logits},
                    [li, n](const TensorImpl& o) {
                      auto gl = GradOf(li);
                      double dot = 0.0;
                      for (std::size_t i = 0; i < n; ++i) {
                        dot += static_cast<double>(o.values[i]) * o.grad[i];
                      }
                      for (std::size_t i = 0; i < n; ++i) {
                        gl[i] += static_cast<float>(o.values[i] * (o.grad[i] - dot));
                      }
                    });
}

Tensor Softmax(const Tensor& logits) {
  RequireRank(logits, 1, "softmax");
  const Mask all(logits.numel(), 1);
  return MaskedSoftmax(logits, all);
}

Tensor EmbeddingLookup(const Tensor& table, std::span<const std::int32_t> ids) {
  RequireRank(table, 2, "embedding_lookup");
  if (ids.empty()) throw ContractError("embedding_lookup: no ids");
  const std::int64_t vocab = table.dim(0), d = table.dim(1);
  for (const auto id : ids) {
    if (id < 0 || id >= vocab) {
      throw IndexError(fmt::format(
          "embedding_lookup: id {} out of range [0, {})", id, vocab));
    }
  }
  const auto n = static_cast<std::int64_t>(ids.size());
  std::vector<float> out(static_cast<std::size_t>(n * d));
  const auto tv = table.values();
  for (std::int64_t i = 0; i < n; ++i) {
    std::copy_n(tv.data() + ids[i] * d, d, out.data() + i * d);
  }
  Impl ti = table.impl();
  std::vector<std::int32_t> kept(ids.begin(), ids.end());
  return MakeResult({n, d}, std::move(out), {table},
                    [ti, kept = std::move(kept), d](const TensorImpl& o) {
                      auto gt = GradOf(ti);
                      for (std::size_t i = 0; i < kept.size(); ++i) {
                        float* dst = gt.data() + kept[i] * d;
                        const float* g = o.grad.data() + i * d;
                        for (std::int64_t c = 0; c < d; ++c) dst[c] += g[c];
                      }
                    });
}

Tensor Dropout(const Tensor& x, float p, Mode mode, Rng& rng) {
  if (!(p >= 0.0f && p < 1.0f)) {
    throw ConfigError(fmt::format("dropout: probability {} not in [0, 1)", p));
  }
  if (mode == Mode::kEval || p == 0.0f) return x;
  const float scale = 1.0f / (1.0f - p);
  std::vector<float> factor(x.numel());
  for (auto& f : factor) f = rng.Uniform() < p ? 0.0f : scale;
  std::vector<float> out(x.numel());
  const auto xv = x.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = xv[i] * factor[i];
  Impl xi = x.impl();
  return MakeResult(x.shape(), std::move(out), {x},
                    [xi, factor = std::move(factor)](const TensorImpl& o) {
                      auto gx = GradOf(xi);
                      for (std::size_t i = 0; i < gx.size(); ++i) {
                        gx[i] += o.grad[i] * factor[i];
                      }
                    });
}

Tensor Concat(std::span<const Tensor> parts) {
  if (parts.empty()) throw ContractError("concat: no inputs");
  std::vector<float> out;
  std::vector<Tensor> inputs;
  for (const Tensor& p : parts) {
    RequireRank(p, 1, "concat");
    const auto v = p.values();
    out.insert(out.end(), v.begin(), v.end());
    inputs.push_back(p);
  }
  std::vector<Impl> impls;
  for (const auto& p : parts) impls.push_back(p.impl());
  const auto n = static_cast<std::int64_t>(out.size());
  return MakeResult({n}, std::move(out), std::move(inputs),
                    [impls = std::move(impls)](const TensorImpl& o) {
                      std::size_t offset = 0;
                      for (const Impl& p : impls) {
                        auto g = GradOf(p);
                        for (std::size_t i = 0; i < g.size(); ++i) {
                          g[i] += o.grad[offset + i];
                        }
                        offset += p->values.size();
                      }
                    });
}

Tensor Stack(std::span<const Tensor> rows) {
  if (rows.empty()) throw ContractError("stack: no inputs");
  RequireRank(rows[0], 1, "stack");
  const std::int64_t d = rows[0].dim(0);
  std::vector<float> out;
  out.reserve(rows.size() * static_cast<std::size_t>(d));
  std::vector<Impl> impls;
  for (const Tensor& r : rows) {
    RequireRank(r, 1, "stack");
    if (r.dim(0) != d) {
      throw DimensionError(fmt::format("stack: rows of length {} and {}", d,
                                       r.dim(0)));
    }
    const auto v = r.values();
    out.insert(out.end(), v.begin(), v.end());
    impls.push_back(r.impl());
  }
  const auto n = static_cast<std::int64_t>(rows.size());
  return MakeResult({n, d}, std::move(out),
                    std::vector<Tensor>(rows.begin(), rows.end()),
                    [impls = std::move(impls), d](const TensorImpl& o) {
                      for (std::size_t r = 0; r < impls.size(); ++r) {
                        auto g = GradOf(impls[r]);
                        for (std::int64_t j = 0; j < static_cast<std::int64_t>(g.size()); ++j) {
                          g[j] += o.grad[r * d + j];
                        }
                      }
                    });
}

Tensor Row(const Tensor& matrix, std::int64_t index) {
  RequireRank(matrix, 2, "row");
  const std::int64_t n = matrix.dim(0), d = matrix.dim(1);
  if (index < 0 || index >= n) {
    throw IndexError(fmt::format("row: index {} out of range [0, {})", index, n));
  }
  const auto mv = matrix.values();
  std::vector<float> out(mv.begin() + index * d, mv.begin() + (index + 1) * d);
  Impl mi = matrix.impl();
  return MakeResult({d}, std::move(out), {matrix},
                    [mi, index, d](const TensorImpl& o) {
                      auto g = GradOf(mi);
                      for (std::int64_t j = 0; j < d; ++j) g[index * d + j] += o.grad[j];
                    });
}

Tensor Slice(const Tensor& vector, std::int64_t begin, std::int64_t length) {
  RequireRank(vector, 1, "slice");
  if (begin < 0 || length < 1 || begin + length > vector.dim(0)) {
    throw IndexError(fmt::format("slice: [{}, {}) out of range for {}", begin,
                                 begin + length, ShapeToString(vector.shape())));
  }
  const auto v = vector.values();
  std::vector<float> out(v.begin() + begin, v.begin() + begin + length);
  Impl vi = vector.impl();
  return MakeResult({length}, std::move(out), {vector},
                    [vi, begin, length](const TensorImpl& o) {
                      auto g = GradOf(vi);
                      for (std::int64_t j = 0; j < length; ++j) g[begin + j] += o.grad[j];
                    });
}

Tensor Reshape(const Tensor& x, Shape shape) {
  if (NumElements(shape) != x.numel()) {
    throw DimensionError(fmt::format("reshape: {} to {}", ShapeToString(x.shape()),
                                     ShapeToString(shape)));
  }
  Impl xi = x.impl();
  return MakeResult(std::move(shape), x.ToVector(), {x},
                    [xi](const TensorImpl& o) {
                      auto g = GradOf(xi);
                      for (std::size_t i = 0; i < g.size(); ++i) g[i] += o.grad[i];
                    });
}

Tensor Dot(const Tensor& a, const Tensor& b) {
  RequireRank(a, 1, "dot");
  RequireRank(b, 1, "dot");
  RequireSameShape(a, b, "dot");
  double s = 0.0;
  const auto av = a.values(), bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) {
    s += static_cast<double>(av[i]) * bv[i];
  }
  Impl ai = a.impl(), bi = b.impl();
  return WithPrecise(s, MakeResult({1}, {static_cast<float>(s)}, {a, b},
                    [ai, bi](const TensorImpl& o) {
                      const float g = o.grad[0];
                      auto ga = GradOf(ai);
                      for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += g * bi->values[i];
                      auto gb = GradOf(bi);
                      for (std::size_t i = 0; i < gb.size(); ++i) gb[i] += g * ai->values[i];
                    }));
}

Tensor Sum(const Tensor& x) {
  double s = 0.0;
  for (const float v : x.values()) s += v;
  Impl xi = x.impl();
  return WithPrecise(s, MakeResult({1}, {static_cast<float>(s)}, {x},
                                   [xi](const TensorImpl& o) {
                                     auto g = GradOf(xi);
                                     for (auto& v : g) v += o.grad[0];
                                   }));
}

Tensor Mean(const Tensor& x) {
  double s = 0.0;
  for (const float v : x.values()) s += v;
  const double n = static_cast<double>(x.numel());
  Impl xi = x.impl();
  return WithPrecise(s / n, MakeResult({1}, {static_cast<float>(s / n)}, {x},
                                       [xi, n](const TensorImpl& o) {
                                         auto g = GradOf(xi);
                                         const float share =
                                             static_cast<float>(o.grad[0] / n);
                                         for (auto& v : g) v += share;
                                       }));
}

Tensor WeightedSum(const Tensor& weights, const Tensor& rows) {
  RequireRank(weights, 1, "weighted_sum");
  RequireRank(rows, 2, "weighted_sum");
  const std::int64_t n = rows.dim(0), d = rows.dim(1);
  if (weights.dim(0) != n) {
    throw DimensionError(fmt::format("weighted_sum: weights {} vs rows {}",
                                     ShapeToString(weights.shape()),
                                     ShapeToString(rows.shape())));
  }
  std::vector<float> out(static_cast<std::size_t>(d));
  GemmNN(weights.values().data(), rows.values().data(), 1, n, d, out.data(),
         false);
  Impl wi = weights.impl(), ri = rows.impl();
  return MakeResult({d}, std::move(out), {weights, rows},
                    [wi, ri, n, d](const TensorImpl& o) {
                      if (wi->requires_grad) {
                        GemmNT(o.grad.data(), ri->values.data(), 1, d, n,
                               wi->MutableGrad().data(), true);
                      }
                      if (ri->requires_grad) {
                        auto g = ri->MutableGrad();
                        for (std::int64_t i = 0; i < n; ++i) {
                          const float w = wi->values[i];
                          for (std::int64_t j = 0; j < d; ++j) g[i * d + j] += w * o.grad[j];
                        }
                      }
                    });
}

Tensor NceLoss(const Tensor& scores) {
  RequireRank(scores, 2, "nce_loss");
  const std::int64_t batch = scores.dim(0), group = scores.dim(1);
  const auto sv = scores.values();
  std::vector<double> probs(sv.size());
  double total = 0.0;
  for (std::int64_t b = 0; b < batch; ++b) {
    const float* row = sv.data() + b * group;
    const double m = *std::max_element(row, row + group);
    double z = 0.0;
    for (std::int64_t j = 0; j < group; ++j) z += std::exp(row[j] - m);
    for (std::int64_t j = 0; j < group; ++j) {
      probs[b * group + j] = std::exp(row[j] - m) / z;
    }
    total += m + std::log(z) - row[0];
  }
  Impl si = scores.impl();
  const double inv_batch = 1.0 / static_cast<double>(batch);
  return WithPrecise(
      total * inv_batch,
      MakeResult({1}, {static_cast<float>(total * inv_batch)}, {scores},
                    [si, probs = std::move(probs), group, inv_batch](const TensorImpl& o) {
                      auto g = GradOf(si);
                      const double upstream = o.grad[0] * inv_batch;
                      for (std::size_t i = 0; i < g.size(); ++i) {
                        const double target = (i % group == 0) ? 1.0 : 0.0;
                        g[i] += static_cast<float>(upstream * (probs[i] - target));
                      }
                    }));
}

LstmOutput LstmSequence(std::span<const Tensor> inputs, const Tensor& h0,
                        const Tensor& c0, const LstmWeights& weights) {
  RequireRank(h0, 1, "lstm");
  RequireRank(c0, 1, "lstm");
  RequireRank(weights.input_weight, 2, "lstm");
  RequireRank(weights.hidden_weight, 2, "lstm");
  const std::int64_t hidden = h0.dim(0);
  if (c0.dim(0) != hidden || weights.input_weight.dim(0) != 4 * hidden ||
      weights.hidden_weight.dim(0) != 4 * hidden ||
      weights.hidden_weight.dim(1) != hidden) {
    throw DimensionError(fmt::format(
        "lstm: h0 {}, c0 {}, input weight {}, hidden weight {} are inconsistent",
        ShapeToString(h0.shape()), ShapeToString(c0.shape()),
        ShapeToString(weights.input_weight.shape()),
        ShapeToString(weights.hidden_weight.shape())));
  }
  LstmOutput result;
  result.last_hidden = h0;
  if (inputs.empty()) return result;

  // Project every input at once, then run the recurrence.
  const Tensor projected =
      Linear(Stack(inputs), weights.input_weight, weights.bias);
  Tensor h = h0;
  Tensor c = c0;
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(inputs.size()); ++t) {
    const Tensor gates =
        Add(Row(projected, t), Linear(h, weights.hidden_weight));
    const Tensor in_gate = Sigmoid(Slice(gates, 0, hidden));
    const Tensor forget_gate = Sigmoid(Slice(gates, hidden, hidden));
    const Tensor candidate = Tanh(Slice(gates, 2 * hidden, hidden));
    const Tensor out_gate = Sigmoid(Slice(gates, 3 * hidden, hidden));
    c = Add(Mul(forget_gate, c), Mul(in_gate, candidate));
    h = Mul(out_gate, Tanh(c));
    result.hidden_states.push_back(h);
  }
  result.last_hidden = h;
  return result;
}

}  // namespace newsrec
