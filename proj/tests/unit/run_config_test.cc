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

#include "newsrec/app/run_config.h"

#include <gtest/gtest.h>

#include "newsrec/errors.h"

namespace newsrec {
namespace {

TEST(RunConfigTest, DefaultsAreValid) {
  const RunConfig c = ParseRunConfig("");
  EXPECT_EQ(c.train.negatives, 3);
  EXPECT_EQ(c.train.batch_size, 128u);
  EXPECT_DOUBLE_EQ(c.train.lr, 1e-4);
  EXPECT_EQ(c.train.epochs, 5);
  EXPECT_FLOAT_EQ(c.train.dropout, 0.3f);
  EXPECT_EQ(c.mindtiny.min_user_clicks, 24);
  EXPECT_EQ(c.mindtiny.min_news_clicks, 150);
  EXPECT_EQ(c.predictor_hidden, (std::vector<std::int64_t>{256, 64}));
}

TEST(RunConfigTest, ParsesSections) {
  const RunConfig c = ParseRunConfig(R"(
; comment
[data]
train_news = /d/news.tsv
[model]
num_filters = 16
category_views = off
[predictor]
kind = neural
hidden = 32, 8
[train]
lr = 0.003
seed = 42
[log]
wall_time = true
)");
  EXPECT_EQ(c.train_news, "/d/news.tsv");
  EXPECT_EQ(c.num_filters, 16);
  EXPECT_FALSE(c.category_views);
  EXPECT_EQ(c.predictor, PredictorKind::kNeural);
  EXPECT_EQ(c.predictor_hidden, (std::vector<std::int64_t>{32, 8}));
  EXPECT_DOUBLE_EQ(c.train.lr, 0.003);
  EXPECT_EQ(c.train.seed, 42u);
  EXPECT_TRUE(c.log_wall_time);
}

TEST(RunConfigTest, OverridesWinOverFile) {
  const RunConfig c = ParseRunConfig("[train]\nepochs = 2\n",
                                     {{"train.epochs", "7"}, {"model.num_filters", "4"}});
  EXPECT_EQ(c.train.epochs, 7);
  EXPECT_EQ(c.num_filters, 4);
}

TEST(RunConfigTest, RejectsUnknownKeys) {
  EXPECT_THROW(ParseRunConfig("[train]\nlearning_rate = 1\n"), ConfigError);
  EXPECT_THROW(ParseRunConfig("[nope]\nx = 1\n"), ConfigError);
  EXPECT_THROW(ParseRunConfig("epochs = 1\n"), ConfigError);
  EXPECT_THROW(ParseRunConfig("", {{"train.nope", "1"}}), ConfigError);
}

TEST(RunConfigTest, RejectsBadValues) {
  EXPECT_THROW(ParseRunConfig("[train]\nepochs = two\n"), ConfigError);
  EXPECT_THROW(ParseRunConfig("[train]\nepochs = 3x\n"), ConfigError);
  EXPECT_THROW(ParseRunConfig("[train]\nnegatives = 0\n"), ConfigError);
  EXPECT_THROW(ParseRunConfig("[train]\nlr = 0\n"), ConfigError);
  EXPECT_THROW(ParseRunConfig("[model]\ncategory_views = maybe\n"), ConfigError);
  EXPECT_THROW(ParseRunConfig("[predictor]\nkind = cosine\n"), ConfigError);
  EXPECT_THROW(ParseRunConfig("[embedding]\nmode = frozen\n"), ConfigError);
  EXPECT_THROW(ParseRunConfig("[model]\nhistory_max = 0\n"), ConfigError);
  EXPECT_THROW(ParseRunConfig("[train]\nlr = 1\nlr = 2\n"), ConfigError);
  EXPECT_NO_THROW(ParseRunConfig("[embedding]\nmode = frozen\npath = e.txt\n"));
}

TEST(RunConfigTest, CanonicalTextRoundTrips) {
  const RunConfig c = ParseRunConfig(
      "[train]\nlr = 0.0007\ndropout = 0.1\n[predictor]\nhidden = 5,3\n"
      "[data]\ntrain_news = a b.tsv\n");
  const std::string text = CanonicalConfigText(c);
  const RunConfig back = ParseRunConfig(text);
  EXPECT_EQ(CanonicalConfigText(back), text);
  for (const auto& key : RunConfigKeys()) {
    EXPECT_EQ(GetRunConfigValue(back, key), GetRunConfigValue(c, key)) << key;
  }
}

TEST(RunConfigTest, HashCoversModelKeysOnly) {
  const RunConfig base = ParseRunConfig("");
  const std::uint64_t h = ModelConfigHash(base);
  EXPECT_EQ(ModelConfigHash(ParseRunConfig("", {{"train.lr", "0.5"}})), h);
  EXPECT_EQ(ModelConfigHash(ParseRunConfig("", {{"output.dir", "x"}})), h);
  EXPECT_EQ(ModelConfigHash(ParseRunConfig("", {{"data.train_news", "x"}})), h);
  EXPECT_NE(ModelConfigHash(ParseRunConfig("", {{"model.num_filters", "8"}})), h);
  EXPECT_NE(ModelConfigHash(ParseRunConfig("", {{"predictor.kind", "neural"}})), h);
  EXPECT_NE(ModelConfigHash(ParseRunConfig("", {{"embedding.dim", "50"}})), h);
  EXPECT_NE(ModelConfigHash(ParseRunConfig("", {{"model.category_views", "false"}})), h);
}

}  // namespace
}  // namespace newsrec
