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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"
#include "model_oracles.h"
#include "newsrec/data/embedding_file.h"
#include "newsrec/errors.h"
#include "newsrec/model/model.h"
#include "newsrec/tensor/grad_check.h"
#include "newsrec/tensor/ops.h"
#include "numeric_oracles.h"
#include "synthetic_mind.h"

namespace newsrec {
namespace {

using testing::Mat;
using testing::MaxAbsDiff;
using testing::ToMat;
using testing::ToVec;
using testing::Vec;

ModelConfig SmallConfig(const testing::World& w, std::int64_t n_f = 8) {
  ModelConfig c;
  c.vocab_size = static_cast<std::int64_t>(w.vocab.size());
  c.word_dim = 6;
  c.n_categories = static_cast<std::int64_t>(w.categories.size());
  c.n_subcategories = static_cast<std::int64_t>(w.subcategories.size());
  c.n_users = static_cast<std::int64_t>(w.users.size());
  c.num_filters = n_f;
  c.attention_dim = 5;
  c.category_dim = 4;
  c.cand_attention_dim = 7;
  c.predictor_hidden = {6, 4};
  c.embedding_mode = EmbeddingMode::kTrainable;
  c.dropout = 0.0f;
  return c;
}

struct Fixture {
  testing::World world;
  ModelConfig config;
  ParamStore store;
  std::unique_ptr<NewsRecModel> model;

  explicit Fixture(std::uint64_t seed = 1,
                   void (*tweak)(ModelConfig&) = nullptr) {
    world = testing::ParseWorld(testing::MakeRandomCorpus(seed));
    config = SmallConfig(world);
    if (tweak) tweak(config);
    Tensor table = RandomEmbeddingTable(world.vocab, config.word_dim, seed).table;
    // Larger word vectors keep activations away from zero.
    for (float& v : table.mutable_values()) v *= 5.0f;
    model = std::make_unique<NewsRecModel>(config, store, table, seed);
  }

  const NewsEncoder& news() const { return model->news_encoder(); }
  const UserEncoder& user() const { return model->user_encoder(); }
  const NewsArticle& article(std::size_t i) const {
    return world.corpus.articles[i];
  }
};

Tensor FromVec(const Vec& v) {
  std::vector<float> f(v.begin(), v.end());
  return Tensor::FromValues({static_cast<std::int64_t>(f.size())}, f);
}

Tensor FromMat(const Mat& m) {
  std::vector<float> f;
  for (const Vec& row : m) f.insert(f.end(), row.begin(), row.end());
  return Tensor::FromValues(
      {static_cast<std::int64_t>(m.size()), static_cast<std::int64_t>(m[0].size())},
      f);
}

Mat RandomMat(std::size_t rows, std::size_t cols, Rng& rng) {
  Mat m(rows, Vec(cols));
  for (auto& row : m) {
    for (auto& v : row) v = static_cast<float>(2.0 * rng.Uniform() - 1.0);
  }
  return m;
}

void Fill(Tensor t, float value) {
  for (float& v : t.mutable_values()) v = value;
}

double Total(const std::vector<float>& w) {
  return std::accumulate(w.begin(), w.end(), 0.0);
}

std::vector<std::int32_t> Padded(std::vector<std::int32_t> ids, std::size_t width) {
  ids.resize(width, Vocabulary::kPad);
  return ids;
}

// ---- news encoder ----------------------------------------------------------

TEST(TextView, SingleTokenGetsAllAttention) {
  Fixture f;
  const auto ids = Padded({5}, 8);
  const auto out = EncodeTextView(ids, 1, f.news().word_table(), f.news().title(),
                                  true, ForwardContext::Eval());
  EXPECT_FLOAT_EQ(out.weights[0], 1.0f);
  for (std::size_t i = 1; i < 8; ++i) EXPECT_EQ(out.weights[i], 0.0f);
  const auto oracle = testing::TextViewOracle(ids, 1, f.news().word_table(),
                                              f.news().title());
  EXPECT_LT(MaxAbsDiff(ToVec(out.vector), oracle.vector), 1e-5);
}

TEST(TextView, IdenticalTokensSplitEvenly) {
  Fixture f(1, [](ModelConfig& c) { c.window_radius = 0; });
  const auto ids = Padded({7, 7}, 4);
  const auto out = EncodeTextView(ids, 2, f.news().word_table(), f.news().title(),
                                  true, ForwardContext::Eval());
  EXPECT_FLOAT_EQ(out.weights[0], 0.5f);
  EXPECT_FLOAT_EQ(out.weights[1], 0.5f);
}

TEST(TextView, MatchesStraightLineOracle) {
  Fixture f;
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::int32_t> ids;
    for (int i = 0; i < 5; ++i) {
      ids.push_back(2 + static_cast<std::int32_t>(rng.UniformInt(f.world.vocab.size() - 2)));
    }
    ids = Padded(ids, 32);
    const auto out = EncodeTextView(ids, 5, f.news().word_table(),
                                    f.news().abstract(), true,
                                    ForwardContext::Eval());
    const auto oracle = testing::TextViewOracle(ids, 5, f.news().word_table(),
                                                f.news().abstract());
    EXPECT_LT(MaxAbsDiff(ToVec(out.vector), oracle.vector), 1e-5);
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(out.weights[i], oracle.weights[i], 1e-6);
  }
}

TEST(TextView, EmptyTextIsZeroVector) {
  Fixture f;
  const auto ids = Padded({}, 6);
  const auto out = EncodeTextView(ids, 0, f.news().word_table(), f.news().title(),
                                  true, ForwardContext::Eval());
  EXPECT_EQ(out.vector.shape(), (Shape{8}));
  for (float v : out.vector.values()) EXPECT_EQ(v, 0.0f);
  for (float w : out.weights) EXPECT_EQ(w, 0.0f);
  EXPECT_THROW(EncodeTextView(ids, 7, f.news().word_table(), f.news().title(),
                              true, ForwardContext::Eval()),
               ContractError);
}

TEST(TextView, TailContentNeverMatters) {
  Fixture f;
  auto ids = Padded({3, 9, 4}, 10);
  const auto base = EncodeTextView(ids, 3, f.news().word_table(), f.news().title(),
                                   true, ForwardContext::Eval());
  for (std::size_t i = 3; i < ids.size(); ++i) ids[i] = 2 + static_cast<std::int32_t>(i);
  const auto mutated = EncodeTextView(ids, 3, f.news().word_table(),
                                      f.news().title(), true,
                                      ForwardContext::Eval());
  EXPECT_EQ(base.vector.ToVector(), mutated.vector.ToVector());
  EXPECT_EQ(base.weights, mutated.weights);
}

TEST(TextView, MeanPoolingWithoutWordAttention) {
  Fixture f;
  const auto ids = Padded({3, 9, 4, 5}, 8);
  const auto out = EncodeTextView(ids, 4, f.news().word_table(), f.news().title(),
                                  false, ForwardContext::Eval());
  Mat words;
  const Mat table = ToMat(f.news().word_table());
  for (int i = 0; i < 4; ++i) words.push_back(table[ids[i]]);
  Mat context = testing::NaiveConv1dSame(words, f.news().title().conv_weight,
                                         ToVec(f.news().title().conv_bias));
  Vec mean(8, 0.0);
  for (auto& row : context) {
    row = testing::ReluVec(row);
    for (std::size_t j = 0; j < 8; ++j) mean[j] += row[j] / 4.0;
  }
  EXPECT_LT(MaxAbsDiff(ToVec(out.vector), mean), 1e-6);
  for (int i = 0; i < 4; ++i) EXPECT_FLOAT_EQ(out.weights[i], 0.25f);
}

TEST(CategoryView, ZeroParamsGiveZero) {
  Fixture f;
  CategoryViewParams p = f.news().category();
  Fill(p.embedding, 0.0f);
  Fill(p.proj_bias, 0.0f);
  const Tensor out = EncodeCategoryView(1, p);
  for (float v : out.values()) EXPECT_EQ(v, 0.0f);
}

TEST(CategoryView, NonNegativeAndMatchesOracle) {
  Fixture f;
  Rng rng(8);
  CategoryViewParams p = f.news().subcategory();
  for (float& v : p.proj_bias.mutable_values()) v = static_cast<float>(rng.Uniform() - 0.5);
  for (std::int32_t id = 0; id < f.config.n_subcategories; ++id) {
    const Tensor out = EncodeCategoryView(id, p);
    for (float v : out.values()) EXPECT_GE(v, 0.0f);
    EXPECT_LT(MaxAbsDiff(ToVec(out), testing::CategoryViewOracle(id, p)), 1e-6);
  }
  EXPECT_THROW(EncodeCategoryView(static_cast<std::int32_t>(f.config.n_subcategories), p),
               IndexError);
}

TEST(FuseViews, IdenticalViewsReturnThatView) {
  Fixture f;
  Rng rng(2);
  const Tensor v = testing::RandomTensor({8}, rng);
  const Tensor views[] = {v, v, v, v};
  const FusedViews fused = FuseViews(views, f.news().view_attention());
  EXPECT_LT(MaxAbsDiff(ToVec(fused.vector), ToVec(v)), 1e-6);
  EXPECT_NEAR(Total(fused.weights), 1.0, 1e-6);
}

TEST(FuseViews, ZeroQueryIsUniform) {
  Fixture f;
  AdditiveAttention p = f.news().view_attention();
  Fill(p.query, 0.0f);
  Rng rng(3);
  std::vector<Tensor> views;
  for (int i = 0; i < 4; ++i) views.push_back(testing::RandomTensor({8}, rng));
  const FusedViews fused = FuseViews(views, p);
  ASSERT_EQ(fused.weights.size(), 4u);
  for (float w : fused.weights) EXPECT_EQ(w, 0.25f);
}

TEST(FuseViews, MatchesDirectEvaluation) {
  Fixture f;
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Tensor> views;
    Mat rows;
    for (int i = 0; i < 4; ++i) {
      views.push_back(testing::RandomTensor({8}, rng));
      rows.push_back(ToVec(views.back()));
    }
    const FusedViews fused = FuseViews(views, f.news().view_attention());
    const auto oracle = testing::AdditiveAttentionOracle(rows, f.news().view_attention());
    EXPECT_LT(MaxAbsDiff(ToVec(fused.vector), oracle.vector), 1e-6);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(fused.weights[i], oracle.weights[i], 1e-6);
  }
}

TEST(FuseViews, ShiftedScoresKeepWeights) {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const Tensor scores = testing::RandomTensor({4}, rng, 3.0);
    const Tensor shifted = Add(scores, Tensor::Full({4}, 17.5f));
    EXPECT_LT(MaxAbsDiff(ToVec(Softmax(scores)), ToVec(Softmax(shifted))), 1e-6);
  }
}

TEST(EncodeNews, EmptyAbstractStillNormalized) {
  Fixture f;
  NewsArticle a = f.article(0);
  std::fill(a.abstract_ids.begin(), a.abstract_ids.end(), 0);
  a.abstract_len = 0;
  const NewsVector v = f.news().Encode(a, ForwardContext::Eval());
  for (float x : v.views[kAbstractView].values()) EXPECT_EQ(x, 0.0f);
  EXPECT_NEAR(v.view_weights[0] + v.view_weights[1] + v.view_weights[2] +
                  v.view_weights[3],
              1.0, 1e-6);
  EXPECT_GT(v.view_weights[kAbstractView], 0.0f);
}

TEST(EncodeNews, CategoryChangeLeavesTextViews) {
  Fixture f;
  NewsArticle a = f.article(1);
  NewsArticle b = a;
  b.category_id = (a.category_id + 1) % static_cast<std::int32_t>(f.config.n_categories);
  const NewsVector va = f.news().Encode(a, ForwardContext::Eval());
  const NewsVector vb = f.news().Encode(b, ForwardContext::Eval());
  EXPECT_EQ(va.views[kTitleView].ToVector(), vb.views[kTitleView].ToVector());
  EXPECT_EQ(va.views[kAbstractView].ToVector(), vb.views[kAbstractView].ToVector());
  EXPECT_NE(va.views[kCategoryView].ToVector(), vb.views[kCategoryView].ToVector());
}

TEST(EncodeNews, CorpusPathEqualsSinglePath) {
  Fixture f;
  const auto all = f.model->EncodeCorpus(f.world.corpus);
  for (std::size_t i = 0; i < f.world.corpus.size(); ++i) {
    EXPECT_EQ(all[i].ToVector(),
              f.news().Encode(f.article(i), ForwardContext::Eval()).r.ToVector());
  }
  NewsCorpus one;
  one.articles.push_back(f.article(3));
  EXPECT_EQ(f.model->EncodeCorpus(one)[0].ToVector(), all[3].ToVector());
}

TEST(EncodeNews, MatchesComposedOracle) {
  Fixture f;
  for (std::size_t i = 0; i < 10; ++i) {
    const NewsArticle& a = f.article(i);
    Mat views = {
        testing::TextViewOracle(a.title_ids, a.title_len, f.news().word_table(),
                                f.news().title()).vector,
        testing::TextViewOracle(a.abstract_ids, a.abstract_len,
                                f.news().word_table(), f.news().abstract()).vector,
        testing::CategoryViewOracle(a.category_id, f.news().category()),
        testing::CategoryViewOracle(a.subcategory_id, f.news().subcategory())};
    const auto oracle = testing::AdditiveAttentionOracle(views, f.news().view_attention());
    const NewsVector v = f.news().Encode(a, ForwardContext::Eval());
    EXPECT_LT(MaxAbsDiff(ToVec(v.r), oracle.vector), 1e-5);
  }
}

TEST(EncodeNews, AttentionWeightsAreDistributions) {
  Fixture f;
  for (const auto& a : f.world.corpus.articles) {
    const NewsVector v = f.news().Encode(a, ForwardContext::Eval());
    EXPECT_NEAR(v.view_weights[0] + v.view_weights[1] + v.view_weights[2] +
                    v.view_weights[3],
                1.0, 1e-6);
    for (float w : v.view_weights) EXPECT_GE(w, 0.0f);
    auto check = [](const std::vector<float>& w, std::int32_t len) {
      for (std::size_t i = 0; i < w.size(); ++i) {
        EXPECT_GE(w[i], 0.0f);
        if (static_cast<std::int32_t>(i) >= len) {
          EXPECT_EQ(w[i], 0.0f);
        }
      }
      if (len > 0) {
        EXPECT_NEAR(Total(w), 1.0, 1e-6);
      }
    };
    check(v.title_weights, a.title_len);
    check(v.abstract_weights, a.abstract_len);
  }
}

TEST(EncodeNews, WithoutCategoryViews) {
  Fixture f(1, [](ModelConfig& c) { c.category_views = false; });
  EXPECT_FALSE(f.store.Contains("news.category.embedding"));
  const NewsVector v = f.news().Encode(f.article(2), ForwardContext::Eval());
  EXPECT_NEAR(v.view_weights[0] + v.view_weights[1], 1.0, 1e-6);
  EXPECT_EQ(v.view_weights[2], 0.0f);
  EXPECT_EQ(v.view_weights[3], 0.0f);
}

TEST(EncodeNews, TrainModeDropoutIsSeeded) {
  Fixture f;
  Rng a(3), b(3);
  const auto x = f.news().Encode(f.article(4), ForwardContext::Train(0.3f, a)).r;
  const auto y = f.news().Encode(f.article(4), ForwardContext::Train(0.3f, b)).r;
  const auto z = f.news().Encode(f.article(4), ForwardContext::Eval()).r;
  EXPECT_EQ(x.ToVector(), y.ToVector());
  EXPECT_NE(x.ToVector(), z.ToVector());
}

// Gives each unit a bias of random sign and magnitude in [lo, hi], which
// keeps its ReLU pre-activations clear of the kink when |W x| < lo.
void BiasAwayFromKink(Tensor bias, double lo, double hi, Rng& rng) {
  for (float& b : bias.mutable_values()) {
    b = (rng.Uniform() < 0.5 ? -1.0f : 1.0f) *
        static_cast<float>(lo + (hi - lo) * rng.Uniform());
  }
}

void MoveNewsUnitsOffKink(const NewsEncoder& news, Rng& rng) {
  BiasAwayFromKink(news.title().conv_bias, 2.0, 3.0, rng);
  BiasAwayFromKink(news.abstract().conv_bias, 2.0, 3.0, rng);
  BiasAwayFromKink(news.category().proj_bias, 0.3, 0.6, rng);
  BiasAwayFromKink(news.subcategory().proj_bias, 0.3, 0.6, rng);
}

TEST(EncodeNews, GradientsMatchFiniteDifferences) {
  Fixture f;
  Rng rng(12);
  MoveNewsUnitsOffKink(f.news(), rng);
  const Tensor probe = testing::RandomTensor({8}, rng);
  auto loss = [&]() {
    Tensor total = Tensor::Scalar(0.0f);
    for (int i = 0; i < 3; ++i) {
      total = Add(total, Dot(f.news().Encode(f.article(i), ForwardContext::Eval()).r, probe));
    }
    return Sum(total);
  };
  const GradCheckResult r = GradCheck(loss, f.store);
  EXPECT_LE(r.max_rel_error, 1e-2) << r.worst_param;
  EXPECT_GT(r.per_param.count("news.title.conv.weight"), 0u);
  EXPECT_GT(r.per_param.count("news.view_attn.query"), 0u);
}

// ---- user encoder ----------------------------------------------------------

TEST(UserEncoder, LongTermRows) {
  Fixture f;
  const Mat table = ToMat(f.user().long_term_table());
  EXPECT_EQ(ToVec(f.user().LongTerm(2)), table[2]);
  const Vec unknown = ToVec(f.user().LongTerm(Impression::kUnknownUser));
  EXPECT_EQ(unknown, table.back());
  EXPECT_EQ(unknown, Vec(8, 0.0));
  EXPECT_EQ(f.user().unknown_row(), f.config.n_users);
  EXPECT_THROW(f.user().LongTerm(static_cast<std::int32_t>(f.config.n_users + 1)),
               IndexError);
}

TEST(UserEncoder, LongTermGradientIsRowSparse) {
  Fixture f;
  Backward(Sum(f.user().LongTerm(1)), f.store);
  const Tensor& t = f.user().long_term_table();
  for (std::int64_t r = 0; r < t.dim(0); ++r) {
    for (std::int64_t c = 0; c < t.dim(1); ++c) {
      EXPECT_EQ(t.grad()[r * t.dim(1) + c], r == 1 ? 1.0f : 0.0f);
    }
  }
}

TEST(UserEncoder, EmptyHistoryPassesLongTermThrough) {
  Fixture f;
  const Tensor u_l = f.user().LongTerm(0);
  EXPECT_EQ(f.user().ShortTerm(Tensor(), u_l).ToVector(), u_l.ToVector());
  Rng rng(1);
  const Tensor cand = testing::RandomTensor({8}, rng);
  const UserVector u = f.user().Encode(0, Tensor(), cand);
  EXPECT_EQ(u.u.ToVector(), u_l.ToVector());
  EXPECT_TRUE(u.attention.empty());
  for (float v : u.u_att.values()) EXPECT_EQ(v, 0.0f);
}

TEST(UserEncoder, ZeroDynamicsGiveZero) {
  Fixture f;
  Fill(f.user().lstm().input_weight, 0.0f);
  Fill(f.user().lstm().hidden_weight, 0.0f);
  Fill(f.user().lstm().bias, 0.0f);
  Rng rng(2);
  const Tensor history = testing::RandomTensor({3, 8}, rng);
  const Tensor out = f.user().ShortTerm(history, Tensor::Zeros({8}));
  for (float v : out.values()) EXPECT_EQ(v, 0.0f);
  // u_s = 0 annihilates any attention summary.
  const UserVector u = f.user().ForCandidate(
      UserState{Tensor::Zeros({8}), out, history,
                Linear(history, f.user().candidate_attention().history_weight,
                       f.user().candidate_attention().bias)},
      testing::RandomTensor({8}, rng));
  for (float v : u.u.values()) EXPECT_EQ(v, 0.0f);
}

TEST(UserEncoder, ShortTermMatchesUnrolledOracle) {
  Fixture f;
  Rng rng(3);
  const Mat history = RandomMat(3, 8, rng);
  const Tensor u_l = f.user().LongTerm(1);
  const Tensor out = f.user().ShortTerm(FromMat(history), u_l);
  EXPECT_LT(MaxAbsDiff(ToVec(out), testing::ShortTermOracle(history, ToVec(u_l),
                                                           f.user().lstm())),
            1e-5);
}

TEST(CandidateAttention, SingleItem) {
  Fixture f;
  Rng rng(4);
  const Tensor history = testing::RandomTensor({1, 8}, rng);
  const auto out = CandidateAttention(history, testing::RandomTensor({8}, rng),
                                      f.user().candidate_attention());
  ASSERT_EQ(out.weights.size(), 1u);
  EXPECT_FLOAT_EQ(out.weights[0], 1.0f);
  EXPECT_LT(MaxAbsDiff(ToVec(out.u_att), ToVec(Row(history, 0))), 1e-7);
}

TEST(CandidateAttention, IdenticalItemsUniform) {
  Fixture f;
  Rng rng(5);
  const Vec r = ToVec(testing::RandomTensor({8}, rng));
  const auto out = CandidateAttention(FromMat({r, r, r, r}),
                                      testing::RandomTensor({8}, rng),
                                      f.user().candidate_attention());
  for (float w : out.weights) EXPECT_FLOAT_EQ(w, 0.25f);
}

TEST(CandidateAttention, MatchesConcatenationOracle) {
  Fixture f;
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat history = RandomMat(4, 8, rng);
    const Vec cand = ToVec(testing::RandomTensor({8}, rng));
    const auto out = CandidateAttention(FromMat(history), FromVec(cand),
                                        f.user().candidate_attention());
    const auto oracle = testing::CandidateAttentionOracle(
        history, cand, f.user().candidate_attention());
    EXPECT_LT(MaxAbsDiff(ToVec(out.u_att), oracle.vector), 1e-6);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(out.weights[i], oracle.weights[i], 1e-6);
  }
}

TEST(CandidateAttention, ShapeMismatchIsContractError) {
  Fixture f;
  Rng rng(7);
  EXPECT_THROW(CandidateAttention(testing::RandomTensor({2, 5}, rng),
                                  testing::RandomTensor({8}, rng),
                                  f.user().candidate_attention()),
               ContractError);
  EXPECT_THROW(f.user().ShortTerm(testing::RandomTensor({2, 5}, rng),
                                  f.user().LongTerm(0)),
               ContractError);
}

TEST(EncodeUser, AllOnesAttentionIsIdentity) {
  Fixture f;
  Rng rng(8);
  const Tensor ones = Tensor::Full({3, 8}, 1.0f);
  const UserVector u = f.user().Encode(1, ones, testing::RandomTensor({8}, rng));
  EXPECT_LT(MaxAbsDiff(ToVec(u.u_att), Vec(8, 1.0)), 1e-6);
  EXPECT_LT(MaxAbsDiff(ToVec(u.u), ToVec(u.u_s)), 1e-6);
}

TEST(EncodeUser, MatchesComposedOracle) {
  Fixture f;
  Rng rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const Mat history = RandomMat(1 + trial % 5, 8, rng);
    const Vec cand = ToVec(testing::RandomTensor({8}, rng));
    const std::int32_t user = trial % static_cast<std::int32_t>(f.config.n_users);
    const UserVector u = f.user().Encode(user, FromMat(history), FromVec(cand));
    const Vec oracle = testing::UserOracle(history, ToVec(f.user().LongTerm(user)),
                                           cand, f.user());
    EXPECT_LT(MaxAbsDiff(ToVec(u.u), oracle), 1e-5);
  }
}

TEST(EncodeUser, CandidateOnlyChangesAttention) {
  Fixture f;
  Rng rng(10);
  const Tensor history = testing::RandomTensor({4, 8}, rng);
  const UserState state = f.user().Prepare(2, history);
  const UserVector a = f.user().ForCandidate(state, testing::RandomTensor({8}, rng));
  const UserVector b = f.user().ForCandidate(state, testing::RandomTensor({8}, rng));
  EXPECT_EQ(a.u_s.ToVector(), b.u_s.ToVector());
  EXPECT_EQ(a.u_l.ToVector(), b.u_l.ToVector());
  EXPECT_NE(a.attention, b.attention);
  EXPECT_GT(MaxAbsDiff(ToVec(a.u), ToVec(b.u)), 1e-7);
}

TEST(EncodeUser, AttentionWeightsAreDistributions) {
  Fixture f;
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::int64_t k = 1 + static_cast<std::int64_t>(rng.UniformInt(8));
    const UserVector u = f.user().Encode(0, testing::RandomTensor({k, 8}, rng, 3.0),
                                         testing::RandomTensor({8}, rng, 3.0));
    ASSERT_EQ(u.attention.size(), static_cast<std::size_t>(k));
    for (float w : u.attention) EXPECT_GE(w, 0.0f);
    EXPECT_NEAR(Total(u.attention), 1.0, 1e-6);
  }
}

TEST(EncodeUser, HistoryOrderMatters) {
  Fixture f;
  Rng rng(12);
  const Mat history = RandomMat(3, 8, rng);
  const Mat reversed(history.rbegin(), history.rend());
  const Tensor u_l = f.user().LongTerm(0);
  const Vec forward = ToVec(f.user().ShortTerm(FromMat(history), u_l));
  const Vec backward = ToVec(f.user().ShortTerm(FromMat(reversed), u_l));
  EXPECT_GT(MaxAbsDiff(forward, backward), 1e-6);
}

TEST(EncodeUser, GradientsMatchFiniteDifferences) {
  Fixture f;
  Rng rng(13);
  const Tensor history = testing::RandomTensor({4, 8}, rng);
  const Tensor cand = testing::RandomTensor({8}, rng);
  const Tensor probe = testing::RandomTensor({8}, rng);
  auto loss = [&]() { return Dot(f.user().Encode(1, history, cand).u, probe); };
  const GradCheckResult r = GradCheck(loss, f.store);
  EXPECT_LE(r.max_rel_error, 1e-3) << r.worst_param;
  EXPECT_GT(r.per_param.count("user.cand_attn.candidate_weight"), 0u);
}

// ---- click predictors ------------------------------------------------------

TEST(DotScore, Examples) {
  EXPECT_EQ(DotScore(Tensor::Vector({1, 0, 0}), Tensor::Vector({1, 0, 0})).item(), 1.0f);
  EXPECT_EQ(DotScore(Tensor::Vector({1, 0}), Tensor::Vector({0, 1})).item(), 0.0f);
  EXPECT_EQ(DotScore(Tensor::Vector({1, 2}), Tensor::Vector({3, 4})).item(), 11.0f);
  EXPECT_THROW(DotScore(Tensor::Vector({1, 2}), Tensor::Vector({3})), ContractError);
}

TEST(DotScore, SymmetricAndBilinear) {
  Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const Tensor u = testing::RandomTensor({16}, rng);
    const Tensor r = testing::RandomTensor({16}, rng);
    EXPECT_EQ(DotScore(u, r).item(), DotScore(r, u).item());
    const float a = static_cast<float>(4.0 * rng.Uniform() - 2.0);
    EXPECT_NEAR(DotScore(Scale(u, a), r).item(), a * DotScore(u, r).item(), 1e-6);
  }
}

MlpParams MakeMlp(ParamStore& store, std::uint64_t seed) {
  return MlpParams::Create(store, 6, {5, 3}, seed);
}

TEST(DnnScore, ZeroNetworkScoresZero) {
  ParamStore store;
  MlpParams p = MakeMlp(store, 1);
  for (auto& w : p.weights) Fill(w, 0.0f);
  Rng rng(15);
  EXPECT_EQ(DnnScore(testing::RandomTensor({6}, rng), testing::RandomTensor({6}, rng), p)
                .item(),
            0.0f);
}

TEST(DnnScore, OrderSensitiveAndMatchesOracle) {
  ParamStore store;
  MlpParams p = MakeMlp(store, 2);
  for (auto& b : p.biases) {
    for (float& v : b.mutable_values()) v = 0.1f;
  }
  Rng rng(16);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec u = ToVec(testing::RandomTensor({6}, rng));
    const Vec r = ToVec(testing::RandomTensor({6}, rng));
    const float score = DnnScore(FromVec(u), FromVec(r), p).item();
    EXPECT_NEAR(score, testing::MlpOracle(u, r, p), 1e-6);
    Vec permuted(u.rbegin(), u.rend());
    EXPECT_NE(DnnScore(FromVec(permuted), FromVec(r), p).item(), score);
  }
  EXPECT_THROW(DnnScore(Tensor::Vector({1, 2}), Tensor::Vector({3, 4}), p),
               Error);
}

TEST(Predictors, GradientsMatchFiniteDifferences) {
  for (const auto kind : {PredictorKind::kDot, PredictorKind::kNeural}) {
    ParamStore store;
    ModelConfig c;
    c.num_filters = 6;
    c.predictor = kind;
    c.predictor_hidden = {5, 4};
    const ClickPredictor predictor(store, c, 3);
    Rng rng(17);
    const Tensor u = store.Add("probe.u", testing::RandomTensor({6}, rng));
    const Tensor r = store.Add("probe.r", testing::RandomTensor({6}, rng));
    const GradCheckResult result =
        GradCheck([&]() { return Sum(predictor.Score(u, r)); }, store);
    EXPECT_LE(result.max_rel_error, 1e-3) << ToString(kind) << " " << result.worst_param;
  }
}

// ---- composed model --------------------------------------------------------

TEST(Model, RegistersExpectedParameters) {
  Fixture f(1, [](ModelConfig& c) { c.predictor = PredictorKind::kNeural; });
  for (const char* name :
       {"word_embedding.table", "news.title.conv.weight", "news.abstract.attn.query",
        "news.category.proj.bias", "news.subcategory.embedding",
        "news.view_attn.proj.weight", "user.long_term.table", "user.lstm.w_hh",
        "user.cand_attn.output_weight", "predictor.layer2.weight"}) {
    EXPECT_TRUE(f.store.Contains(name)) << name;
  }
  EXPECT_FALSE(f.store.Contains("predictor.layer3.weight"));
  Fixture frozen(1, [](ModelConfig& c) { c.embedding_mode = EmbeddingMode::kFrozen; });
  EXPECT_FALSE(frozen.store.Get("word_embedding.table").requires_grad());
}

TEST(Model, BatchLossIsMeanNegativeLogPseudoRank) {
  Fixture f;
  Rng rng(18);
  const auto samples = SampleNegatives(f.world.impressions, 3, rng);
  ASSERT_GT(samples.size(), 5u);
  Rng batch_rng(1);
  const auto batches = BuildBatches(samples, 8, batch_rng);
  const Tensor loss = f.model->BatchLoss(samples, batches[0], f.world.corpus,
                                         ForwardContext::Eval());
  double expected = 0.0;
  for (const auto i : batches[0].sample_indices) {
    const Vec s = ToVec(f.model->SampleScores(samples[i], f.world.corpus,
                                              ForwardContext::Eval()));
    double z = 0.0;
    for (double x : s) z += std::exp(x);
    expected += -std::log(std::exp(s[0]) / z);
  }
  expected /= static_cast<double>(batches[0].size());
  EXPECT_NEAR(loss.scalar(), expected, 1e-5);
}

TEST(Model, ScoreCandidatesMatchesSampleScores) {
  Fixture f;
  const auto vectors = f.model->EncodeCorpus(f.world.corpus);
  for (const auto& imp : f.world.impressions) {
    TrainSample s;
    s.user_id = imp.user_id;
    s.history = imp.history;
    std::vector<std::int32_t> cands;
    for (const auto& c : imp.candidates) cands.push_back(c.news);
    s.positive = cands[0];
    s.negatives.assign(cands.begin() + 1, cands.end());
    const auto scores = f.model->ScoreCandidates(imp.user_id, imp.history, cands, vectors);
    const Vec expected = ToVec(f.model->SampleScores(s, f.world.corpus,
                                                     ForwardContext::Eval()));
    for (std::size_t i = 0; i < scores.size(); ++i) {
      EXPECT_FLOAT_EQ(static_cast<float>(scores[i]), static_cast<float>(expected[i]));
      EXPECT_TRUE(std::isfinite(scores[i]));
    }
  }
}

TEST(Model, WordTableShapeChecked) {
  const auto world = testing::ParseWorld(testing::MakeRandomCorpus(1));
  ModelConfig c = SmallConfig(world);
  ParamStore store;
  EXPECT_THROW(NewsRecModel(c, store, Tensor::Zeros({3, c.word_dim}), 1), ConfigError);
  c.dropout = 1.0f;
  ParamStore other;
  EXPECT_THROW(NewsRecModel(c, other, Tensor::Zeros({c.vocab_size, c.word_dim}), 1),
               ConfigError);
}

}  // namespace
}  // namespace newsrec
