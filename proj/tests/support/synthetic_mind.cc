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

#include "synthetic_mind.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "newsrec/tensor/rng.h"

namespace newsrec::testing {

SyntheticMind MakePopularityCorpus(std::uint64_t seed, int n_news,
                                   int n_users) {
  Rng rng(seed);
  SyntheticMind out;
  for (int n = 0; n < n_news; ++n) {
    out.news_tsv += fmt::format("N{}\tcat{}\tsub{}\ttitle word{} w{}\tabs {}\n",
                                n, n % 7, n % 11, n, n % 13, n % 5);
  }
  std::vector<double> cumulative(n_news);
  double total = 0.0;
  for (int n = 0; n < n_news; ++n) {
    total += 1.0 / std::pow(n + 1.0, 0.5);
    cumulative[n] = total;
  }
  auto draw_news = [&]() {
    const double x = rng.Uniform() * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
    return static_cast<int>(std::min<std::ptrdiff_t>(
        it - cumulative.begin(), n_news - 1));
  };

  int impression = 0;
  for (int u = 0; u < n_users; ++u) {
    const int clicks = 5 + static_cast<int>(rng.UniformInt(150));
    std::vector<int> clicked;
    for (int c = 0; c < clicks; ++c) clicked.push_back(draw_news());
    const int split = clicks * 3 / 4;
    std::string history;
    for (int c = 0; c < split; ++c) {
      history += fmt::format("{}N{}", c ? " " : "", clicked[c]);
    }
    for (int c = split; c < clicks; c += 2) {
      std::string cands;
      for (int j = c; j < std::min(c + 2, clicks); ++j) {
        cands += fmt::format("N{}-1 ", clicked[j]);
      }
      for (int j = 0; j < 4; ++j) {
        cands += fmt::format("N{}-0 ", rng.UniformInt(n_news));
      }
      cands.pop_back();
      out.behaviors_tsv += fmt::format("I{}\tU{}\t11/11/2019 9:00:00 AM\t{}\t{}\n",
                                       impression++, u, history, cands);
    }
  }
  return out;
}

SyntheticMind MakeRandomCorpus(std::uint64_t seed,
                               const RandomCorpusOptions& options) {
  Rng rng(seed);
  SyntheticMind out;
  auto words = [&](int lo, int hi) {
    const int n = lo + static_cast<int>(rng.UniformInt(hi - lo + 1));
    std::string text;
    for (int i = 0; i < n; ++i) {
      text += fmt::format("{}w{}", i ? " " : "", rng.UniformInt(options.vocab_words));
    }
    return text;
  };
  for (int n = 0; n < options.n_news; ++n) {
    const std::string title = words(1, 12);
    const std::string abstract = rng.UniformInt(5) == 0 ? "" : words(1, 20);
    out.news_tsv += fmt::format("N{}\tcat{}\tsub{}\t{}\t{}\n", n,
                                rng.UniformInt(options.n_categories),
                                rng.UniformInt(options.n_subcategories), title,
                                abstract);
  }
  for (int i = 0; i < options.n_impressions; ++i) {
    const int k = static_cast<int>(rng.UniformInt(options.max_history + 1));
    std::string history;
    for (int j = 0; j < k; ++j) {
      history += fmt::format("{}N{}", j ? " " : "", rng.UniformInt(options.n_news));
    }
    const int n_cands = 2 + static_cast<int>(rng.UniformInt(7));
    std::string cands;
    for (int j = 0; j < n_cands; ++j) {
      const int label = j == 0 ? 1 : (j == 1 ? 0 : static_cast<int>(rng.UniformInt(2)));
      cands += fmt::format("{}N{}-{}", j ? " " : "", rng.UniformInt(options.n_news),
                           label);
    }
    out.behaviors_tsv += fmt::format("I{}\tU{}\tt\t{}\t{}\n", i,
                                     rng.UniformInt(options.n_users), history,
                                     cands);
  }
  return out;
}

World ParseWorld(const SyntheticMind& data, TextLimits limits,
                 std::size_t history_max) {
  World w;
  std::istringstream news(data.news_tsv), behaviors(data.behaviors_tsv);
  ParseNewsTsv(news, w.vocab, w.categories, w.subcategories,
               NewsParseOptions{limits, 1}, w.corpus);
  w.impressions = ParseBehaviorsTsv(behaviors, w.corpus, w.users, history_max);
  return w;
}

}  // namespace newsrec::testing
