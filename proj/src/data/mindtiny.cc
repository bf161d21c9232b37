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

#include "newsrec/data/mindtiny.h"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <unordered_map>
#include <utility>

namespace newsrec {
namespace {

// Keeps the entries of `ids` that are still active.
std::vector<std::int32_t> Restrict(const std::vector<std::int32_t>& ids,
                                   const std::vector<std::uint8_t>& active) {
  std::vector<std::int32_t> out;
  for (const auto id : ids) {
    if (active[id]) out.push_back(id);
  }
  return out;
}

}  // namespace

MindTinyResult SampleMindTiny(const std::vector<Impression>& behaviors,
                              const NewsCorpus& corpus,
                              const MindTinyOptions& options) {
  std::unordered_map<std::string, std::int32_t> user_index;
  std::vector<std::string> user_keys;
  std::vector<std::int32_t> row_user(behaviors.size());
  for (std::size_t r = 0; r < behaviors.size(); ++r) {
    auto [it, inserted] = user_index.try_emplace(
        behaviors[r].user_key, static_cast<std::int32_t>(user_keys.size()));
    if (inserted) user_keys.push_back(behaviors[r].user_key);
    row_user[r] = it->second;
  }

  const std::size_t n_news = corpus.size();
  const std::size_t n_users = user_keys.size();
  std::vector<std::uint8_t> news_on(n_news, 1), user_on(n_users, 1);
  std::vector<std::int64_t> news_clicks, user_clicks;

  // Per-user click sets under the current restriction.
  auto count = [&]() {
    std::vector<std::vector<std::int32_t>> clicked(n_users);
    for (std::size_t r = 0; r < behaviors.size(); ++r) {
      const std::int32_t u = row_user[r];
      if (!user_on[u]) continue;
      const Impression& imp = behaviors[r];
      std::vector<std::int32_t> pos;
      for (const auto& c : imp.candidates) {
        if (c.label && news_on[c.news]) pos.push_back(c.news);
      }
      if (pos.empty()) continue;
      auto& set = clicked[u];
      set.insert(set.end(), pos.begin(), pos.end());
      if (options.count_history) {
        for (const auto h : imp.history) {
          if (news_on[h]) set.push_back(h);
        }
      }
    }
    news_clicks.assign(n_news, 0);
    user_clicks.assign(n_users, 0);
    for (std::size_t u = 0; u < n_users; ++u) {
      auto& set = clicked[u];
      std::sort(set.begin(), set.end());
      set.erase(std::unique(set.begin(), set.end()), set.end());
      user_clicks[u] = static_cast<std::int64_t>(set.size());
      for (const auto n : set) ++news_clicks[n];
    }
  };

  MindTinyResult result;
  bool changed = true;
  while (changed) {
    ++result.rounds;
    count();
    changed = false;
    for (std::size_t u = 0; u < n_users; ++u) {
      if (user_on[u] && user_clicks[u] < options.min_user_clicks) {
        user_on[u] = 0;
        changed = true;
      }
    }
    for (std::size_t n = 0; n < n_news; ++n) {
      if (news_on[n] && news_clicks[n] < options.min_news_clicks) {
        news_on[n] = 0;
        changed = true;
      }
    }
  }

  for (std::size_t n = 0; n < n_news; ++n) {
    if (news_on[n]) result.news.push_back(static_cast<std::int32_t>(n));
  }
  std::stable_sort(result.news.begin(), result.news.end(),
                   [&](std::int32_t a, std::int32_t b) {
                     return news_clicks[a] > news_clicks[b];
                   });
  for (const auto n : result.news) result.news_clicks.push_back(news_clicks[n]);
  for (std::size_t u = 0; u < n_users; ++u) {
    if (!user_on[u]) continue;
    result.users.push_back(user_keys[u]);
    result.user_clicks.push_back(user_clicks[u]);
  }

  for (std::size_t r = 0; r < behaviors.size(); ++r) {
    if (!user_on[row_user[r]]) continue;
    Impression imp = behaviors[r];
    imp.history = Restrict(imp.history, news_on);
    std::erase_if(imp.candidates,
                  [&](const Candidate& c) { return !news_on[c.news]; });
    const bool has_positive =
        std::any_of(imp.candidates.begin(), imp.candidates.end(),
                    [](const Candidate& c) { return c.label == 1; });
    if (has_positive) result.behaviors.push_back(std::move(imp));
  }
  return result;
}

void WriteMindTinyNews(std::ostream& out, const MindTinyResult& result,
                       const NewsCorpus& corpus) {
  for (const auto n : result.news) out << corpus.raw_rows[n] << '\n';
}

}  // namespace newsrec
