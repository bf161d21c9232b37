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

#ifndef NEWSREC_DATA_MINDTINY_H_
#define NEWSREC_DATA_MINDTINY_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "newsrec/data/mind.h"

namespace newsrec {

struct MindTinyOptions {
  std::int64_t min_user_clicks = 24;
  std::int64_t min_news_clicks = 150;
  // Count history entries as click interactions in addition to clicked
  // candidates.
  bool count_history = true;
};

struct MindTinyResult {
  // Retained news, most clicked first (ties by corpus index), with their
  // click counts: distinct retained users who clicked each one.
  std::vector<std::int32_t> news;
  std::vector<std::int64_t> news_clicks;
  // Retained user keys in first-seen order with their interaction counts:
  // distinct retained news each one clicked.
  std::vector<std::string> users;
  std::vector<std::int64_t> user_clicks;
  // Impressions of retained users restricted to retained news. Rows left
  // without a clicked candidate are dropped.
  std::vector<Impression> behaviors;
  int rounds = 0;
};

// Alternates the user and news thresholds until neither removes anything, so
// both minimums hold on the returned subset.
MindTinyResult SampleMindTiny(const std::vector<Impression>& behaviors,
                              const NewsCorpus& corpus,
                              const MindTinyOptions& options);

// Writes retained source rows in popularity order.
void WriteMindTinyNews(std::ostream& out, const MindTinyResult& result,
                       const NewsCorpus& corpus);

}  // namespace newsrec

#endif  // NEWSREC_DATA_MINDTINY_H_
