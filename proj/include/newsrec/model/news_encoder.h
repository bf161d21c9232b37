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

#ifndef NEWSREC_MODEL_NEWS_ENCODER_H_
#define NEWSREC_MODEL_NEWS_ENCODER_H_

// Multi-view news encoder: a CNN with additive word attention for title and
// abstract, dense projections of category and subcategory embeddings, and
// attentive fusion over the views.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "newsrec/data/mind.h"
#include "newsrec/model/config.h"
#include "newsrec/model/layers.h"
#include "newsrec/tensor/param_store.h"
#include "newsrec/tensor/tensor.h"

namespace newsrec {

struct TextViewParams {
  Tensor conv_weight;  // [n_f x (2r+1) x d_w]
  Tensor conv_bias;    // [n_f]
  AdditiveAttention attention;

  static TextViewParams Create(ParamStore& store, const std::string& prefix,
                               const ModelConfig& config, std::uint64_t seed);
};

struct CategoryViewParams {
  Tensor embedding;    // [n x d_c]
  Tensor proj_weight;  // [n_f x d_c]
  Tensor proj_bias;    // [n_f]

  static CategoryViewParams Create(ParamStore& store, const std::string& prefix,
                                   std::int64_t count,
                                   const ModelConfig& config,
                                   std::uint64_t seed);
};

struct TextViewOutput {
  Tensor vector;  // [n_f]
  // Word attention over the padded width; PAD positions hold exactly 0.
  std::vector<float> weights;
};

// `ids` is the padded token row; only the first `length` entries are read.
// Returns a zero vector without running attention when `length` is 0. With
// word attention disabled the view is the mean of the CNN outputs.
TextViewOutput EncodeTextView(std::span<const std::int32_t> ids,
                              std::int32_t length, const Tensor& word_table,
                              const TextViewParams& params, bool word_attention,
                              const ForwardContext& ctx);

// ReLU(V * Emb(id) + b).
Tensor EncodeCategoryView(std::int32_t id, const CategoryViewParams& params);

struct FusedViews {
  Tensor vector;                // [n_f]
  std::vector<float> weights;   // one per fused view
};

// Softmax over q^T tanh(U r_v + u) for each view vector, then the weighted
// sum of the views.
FusedViews FuseViews(std::span<const Tensor> views,
                     const AdditiveAttention& params);

enum NewsView { kTitleView = 0, kAbstractView, kCategoryView, kSubcategoryView };

struct NewsVector {
  Tensor r;  // [n_f]
  // Title, abstract, category, subcategory. Category weights are 0 when
  // category views are disabled.
  std::array<float, 4> view_weights{};
  std::vector<float> title_weights;
  std::vector<float> abstract_weights;
  std::array<Tensor, 4> views;
};

class NewsEncoder {
 public:
  NewsEncoder() = default;
  // Registers parameters under "news.*". The word table is shared and owned
  // by the caller.
  NewsEncoder(ParamStore& store, const ModelConfig& config, Tensor word_table,
              std::uint64_t seed);

  NewsVector Encode(const NewsArticle& article, const ForwardContext& ctx) const;

  const TextViewParams& title() const { return title_; }
  const TextViewParams& abstract() const { return abstract_; }
  const CategoryViewParams& category() const { return category_; }
  const CategoryViewParams& subcategory() const { return subcategory_; }
  const AdditiveAttention& view_attention() const { return view_attention_; }
  const Tensor& word_table() const { return word_table_; }

 private:
  ModelConfig config_;
  Tensor word_table_;
  TextViewParams title_;
  TextViewParams abstract_;
  CategoryViewParams category_;
  CategoryViewParams subcategory_;
  AdditiveAttention view_attention_;
};

}  // namespace newsrec

#endif  // NEWSREC_MODEL_NEWS_ENCODER_H_
