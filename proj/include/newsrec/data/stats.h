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

#ifndef NEWSREC_DATA_STATS_H_
#define NEWSREC_DATA_STATS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "newsrec/data/mind.h"
#include "newsrec/data/vocabulary.h"

namespace newsrec {

struct DatasetStats {
  std::size_t num_news = 0;
  std::size_t num_users = 0;
  std::size_t num_impressions = 0;
  std::size_t num_categories = 0;     // distinct categories among articles
  std::size_t num_subcategories = 0;  // distinct subcategories among articles
  double mean_title_words = 0.0;
  double mean_abstract_words = 0.0;
  std::map<std::string, std::size_t> category_counts;
  std::map<std::string, std::size_t> subcategory_counts;
  // word count -> number of titles / abstracts with that many words
  std::map<std::int32_t, std::size_t> title_lengths;
  std::map<std::int32_t, std::size_t> abstract_lengths;
};

// Lengths are word counts before truncation.
DatasetStats ComputeDatasetStats(const NewsCorpus& corpus,
                                 const LabelMap& categories,
                                 const LabelMap& subcategories,
                                 const std::vector<Impression>& behaviors);

// Writes stats_summary.csv (statistic,value), category_histogram.csv
// (category,count), subcategory_histogram.csv (subcategory,count) and
// length_histogram.csv (length,title_count,abstract_count) into `dir`.
void WriteDatasetStats(const DatasetStats& stats,
                       const std::filesystem::path& dir);

}  // namespace newsrec

#endif  // NEWSREC_DATA_STATS_H_
