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

#include "newsrec/model/news_encoder.h"

#include "newsrec/errors.h"
#include "newsrec/tensor/ops.h"

namespace newsrec {

TextViewParams TextViewParams::Create(ParamStore& store,
                                      const std::string& prefix,
                                      const ModelConfig& config,
                                      std::uint64_t seed) {
  const std::int64_t window = 2 * config.window_radius + 1;
  const std::int64_t fan_in = window * config.word_dim;
  TextViewParams p;
  p.conv_weight = store.Add(
      prefix + ".conv.weight",
      XavierUniform({config.num_filters, window, config.word_dim}, fan_in,
                    config.num_filters, seed, prefix + ".conv.weight"));
  p.conv_bias = store.Add(prefix + ".conv.bias",
                          Tensor::Zeros({config.num_filters}));
  p.attention = AdditiveAttention::Create(store, prefix + ".attn",
                                          config.num_filters,
                                          config.attention_dim, seed);
  return p;
}

CategoryViewParams CategoryViewParams::Create(ParamStore& store,
                                              const std::string& prefix,
                                              std::int64_t count,
                                              const ModelConfig& config,
                                              std::uint64_t seed) {
  CategoryViewParams p;
  p.embedding = store.Add(
      prefix + ".embedding",
      NormalInit({count, config.category_dim}, 0.1, seed, prefix + ".embedding"));
  p.proj_weight = store.Add(
      prefix + ".proj.weight",
      XavierUniform({config.num_filters, config.category_dim},
                    config.category_dim, config.num_filters, seed,
                    prefix + ".proj.weight"));
  p.proj_bias = store.Add(prefix + ".proj.bias",
                          Tensor::Zeros({config.num_filters}));
  return p;
}

TextViewOutput EncodeTextView(std::span<const std::int32_t> ids,
                              std::int32_t length, const Tensor& word_table,
                              const TextViewParams& params, bool word_attention,
                              const ForwardContext& ctx) {
  if (length < 0 || static_cast<std::size_t>(length) > ids.size()) {
    throw ContractError("text length exceeds the padded width");
  }
  TextViewOutput out;
  out.weights.assign(ids.size(), 0.0f);
  const std::int64_t n_f = params.conv_weight.dim(0);
  if (length == 0) {
    out.vector = Tensor::Zeros({n_f});
    return out;
  }
  Tensor words = EmbeddingLookup(word_table, ids.first(length));
  words = ApplyDropout(words, ctx);
  Tensor context = Relu(Conv1dSame(words, params.conv_weight, params.conv_bias));
  context = ApplyDropout(context, ctx);
  Tensor alpha;
  if (word_attention) {
    alpha = Softmax(params.attention.Scores(context));
  } else {
    alpha = Tensor::Full({length}, 1.0f / static_cast<float>(length));
  }
  for (std::int32_t i = 0; i < length; ++i) out.weights[i] = alpha.at(i);
  out.vector = WeightedSum(alpha, context);
  return out;
}

Tensor EncodeCategoryView(std::int32_t id, const CategoryViewParams& params) {
  const std::int32_t ids[] = {id};
  Tensor emb = EmbeddingLookup(params.embedding, ids);
  Tensor out = Relu(Linear(emb, params.proj_weight, params.proj_bias));
  return Reshape(out, {params.proj_weight.dim(0)});
}

FusedViews FuseViews(std::span<const Tensor> views,
                     const AdditiveAttention& params) {
  Tensor stacked = Stack(views);
  Tensor weights = Softmax(params.Scores(stacked));
  FusedViews out;
  out.vector = WeightedSum(weights, stacked);
  out.weights = weights.ToVector();
  return out;
}

NewsEncoder::NewsEncoder(ParamStore& store, const ModelConfig& config,
                         Tensor word_table, std::uint64_t seed)
    : config_(config), word_table_(std::move(word_table)) {
  title_ = TextViewParams::Create(store, "news.title", config, seed);
  abstract_ = TextViewParams::Create(store, "news.abstract", config, seed);
  if (config.category_views) {
    category_ = CategoryViewParams::Create(store, "news.category",
                                           config.n_categories, config, seed);
    subcategory_ = CategoryViewParams::Create(
        store, "news.subcategory", config.n_subcategories, config, seed);
  }
  view_attention_ = AdditiveAttention::Create(
      store, "news.view_attn", config.num_filters, config.attention_dim, seed);
}

NewsVector NewsEncoder::Encode(const NewsArticle& article,
                               const ForwardContext& ctx) const {
  NewsVector out;
  TextViewOutput title = EncodeTextView(article.title_ids, article.title_len,
                                        word_table_, title_,
                                        config_.word_attention, ctx);
  TextViewOutput abstract = EncodeTextView(
      article.abstract_ids, article.abstract_len, word_table_, abstract_,
      config_.word_attention, ctx);
  out.views[kTitleView] = title.vector;
  out.views[kAbstractView] = abstract.vector;
  out.title_weights = std::move(title.weights);
  out.abstract_weights = std::move(abstract.weights);

  std::size_t n_views = 2;
  if (config_.category_views) {
    out.views[kCategoryView] = EncodeCategoryView(article.category_id, category_);
    out.views[kSubcategoryView] =
        EncodeCategoryView(article.subcategory_id, subcategory_);
    n_views = 4;
  }
  FusedViews fused = FuseViews(std::span<const Tensor>(out.views.data(), n_views),
                               view_attention_);
  out.r = fused.vector;
  for (std::size_t v = 0; v < n_views; ++v) out.view_weights[v] = fused.weights[v];
  return out;
}

}  // namespace newsrec
