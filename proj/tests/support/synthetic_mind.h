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

#ifndef NEWSREC_TESTS_SUPPORT_SYNTHETIC_MIND_H_
#define NEWSREC_TESTS_SUPPORT_SYNTHETIC_MIND_H_

// Seeded generators of MIND-format text for tests.

#include <cstdint>
#include <string>
#include <vector>

#include "newsrec/data/mind.h"
#include "newsrec/data/vocabulary.h"

namespace newsrec::testing {

struct SyntheticMind {
  std::string news_tsv;
  std::string behaviors_tsv;
};

// Skewed click data for the popularity filter: user activity varies from a
// handful of clicks to about 150, news popularity follows a power law.
SyntheticMind MakePopularityCorpus(std::uint64_t seed, int n_news = 150,
                                   int n_users = 600);

// Random text over a `vocab_words`-word lexicon. Titles have 1..12 words,
// abstracts 0..20 (about one in five empty). Each impression has a history
// of 0..max_history clicks and 2..8 candidates with at least one click and
// one non-click.
struct RandomCorpusOptions {
  int vocab_words = 48;
  int n_news = 30;
  int n_users = 6;
  int n_impressions = 20;
  int max_history = 6;
  int n_categories = 4;
  int n_subcategories = 6;
};
SyntheticMind MakeRandomCorpus(std::uint64_t seed,
                               const RandomCorpusOptions& options = {});

// Parsed form of a synthetic corpus with growing maps.
struct World {
  Vocabulary vocab;
  LabelMap categories{true};
  LabelMap subcategories{true};
  LabelMap users{false};
  NewsCorpus corpus;
  std::vector<Impression> impressions;
};
World ParseWorld(const SyntheticMind& data, TextLimits limits = {},
                 std::size_t history_max = 60);

}  // namespace newsrec::testing

#endif  // NEWSREC_TESTS_SUPPORT_SYNTHETIC_MIND_H_
