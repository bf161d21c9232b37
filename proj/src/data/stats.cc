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

#include "newsrec/data/stats.h"

#include <fstream>
#include <set>
#include <unordered_set>

#include <fmt/format.h>

#include "newsrec/errors.h"

namespace newsrec {

DatasetStats ComputeDatasetStats(const NewsCorpus& corpus,
                                 const LabelMap& categories,
                                 const LabelMap& subcategories,
                                 const std::vector<Impression>& behaviors) {
  DatasetStats s;
  s.num_news = corpus.size();
  s.num_impressions = behaviors.size();
  std::unordered_set<std::string> users;
  for (const auto& imp : behaviors) users.insert(imp.user_key);
  s.num_users = users.size();

  double title_total = 0.0, abstract_total = 0.0;
  for (const auto& a : corpus.articles) {
    ++s.category_counts[categories.label(a.category_id)];
    ++s.subcategory_counts[subcategories.label(a.subcategory_id)];
    ++s.title_lengths[a.title_words];
    ++s.abstract_lengths[a.abstract_words];
    title_total += a.title_words;
    abstract_total += a.abstract_words;
  }
  s.num_categories = s.category_counts.size();
  s.num_subcategories = s.subcategory_counts.size();
  if (s.num_news > 0) {
    s.mean_title_words = title_total / static_cast<double>(s.num_news);
    s.mean_abstract_words = abstract_total / static_cast<double>(s.num_news);
  }
  return s;
}

namespace {

std::ofstream OpenOutput(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(fmt::format("cannot write {}", path.string()));
  return out;
}

}  // namespace

void WriteDatasetStats(const DatasetStats& stats,
                       const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    auto out = OpenOutput(dir / "stats_summary.csv");
    out << "statistic,value\n";
    out << fmt::format("news,{}\n", stats.num_news);
    out << fmt::format("users,{}\n", stats.num_users);
    out << fmt::format("impressions,{}\n", stats.num_impressions);
    out << fmt::format("categories,{}\n", stats.num_categories);
    out << fmt::format("subcategories,{}\n", stats.num_subcategories);
    out << fmt::format("mean_title_words,{:.4f}\n", stats.mean_title_words);
    out << fmt::format("mean_abstract_words,{:.4f}\n",
                       stats.mean_abstract_words);
  }
  {
    auto out = OpenOutput(dir / "category_histogram.csv");
    out << "category,count\n";
    for (const auto& [k, v] : stats.category_counts) {
      out << fmt::format("{},{}\n", k, v);
    }
  }
  {
    auto out = OpenOutput(dir / "subcategory_histogram.csv");
    out << "subcategory,count\n";
    for (const auto& [k, v] : stats.subcategory_counts) {
      out << fmt::format("{},{}\n", k, v);
    }
  }
  {
    auto out = OpenOutput(dir / "length_histogram.csv");
    out << "length,title_count,abstract_count\n";
    std::set<std::int32_t> lengths;
    for (const auto& [k, v] : stats.title_lengths) lengths.insert(k);
    for (const auto& [k, v] : stats.abstract_lengths) lengths.insert(k);
    for (const auto len : lengths) {
      auto count = [len](const std::map<std::int32_t, std::size_t>& m) {
        const auto it = m.find(len);
        return it == m.end() ? std::size_t{0} : it->second;
      };
      out << fmt::format("{},{},{}\n", len, count(stats.title_lengths),
                         count(stats.abstract_lengths));
    }
  }
}

}  // namespace newsrec
