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

#ifndef NEWSREC_DATA_MIND_H_
#define NEWSREC_DATA_MIND_H_

// Readers for MIND-format news and behaviors files.
//
// news.tsv:      news_id \t category \t subcategory \t title \t abstract [\t ...]
// behaviors.tsv: impression_id \t user_id \t time \t history \t candidates
//   history is space-separated news ids (may be empty); candidates are
//   space-separated "news_id-label" tokens with label 0 or 1.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "newsrec/data/vocabulary.h"

namespace newsrec {

struct TextLimits {
  std::int32_t title_max = 32;
  std::int32_t abstract_max = 64;
};

struct NewsArticle {
  std::string news_id;
  std::int32_t category_id = 0;
  std::int32_t subcategory_id = 0;
  std::vector<std::int32_t> title_ids;     // title_max entries
  std::vector<std::int32_t> abstract_ids;  // abstract_max entries
  std::int32_t title_len = 0;
  std::int32_t abstract_len = 0;
  // Word counts before truncation, for corpus statistics.
  std::int32_t title_words = 0;
  std::int32_t abstract_words = 0;
  std::string title;  // original text, used for display
};

// Articles in insertion order plus an id index. Also keeps every source row
// verbatim so filtered subsets can be written back unchanged.
struct NewsCorpus {
  std::vector<NewsArticle> articles;
  std::vector<std::string> raw_rows;
  std::unordered_map<std::string, std::int32_t> index;

  std::int32_t Find(const std::string& news_id) const;
  std::size_t size() const { return articles.size(); }
};

struct Candidate {
  std::int32_t news = 0;
  std::uint8_t label = 0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct Impression {
  static constexpr std::int32_t kUnknownUser = -1;

  std::string impression_id;
  std::string user_key;  // raw user id from the file
  std::int32_t user_id = kUnknownUser;
  std::string time;
  std::vector<std::int32_t> history;  // oldest first
  std::vector<Candidate> candidates;
};

// Row-level problems are collected here instead of aborting the parse.
struct ParseReport {
  std::size_t rows_read = 0;
  std::size_t rows_skipped = 0;
  std::size_t duplicates = 0;
  std::size_t unknown_history = 0;
  std::size_t unknown_candidates = 0;
  std::size_t truncated_histories = 0;
  std::vector<std::string> errors;  // "line N: reason", capped
};

struct NewsParseOptions {
  TextLimits limits;
  // Words seen fewer times than this map to UNK while the vocabulary grows.
  std::int32_t vocab_min_count = 1;
};

// Appends the articles of a news file to `corpus`. Ids already present are
// skipped. Vocabulary and label maps grow unless frozen.
void ParseNewsTsv(std::istream& in, Vocabulary& vocab, LabelMap& categories,
                  LabelMap& subcategories, const NewsParseOptions& options,
                  NewsCorpus& corpus, ParseReport* report = nullptr);
void ParseNewsTsv(const std::filesystem::path& path, Vocabulary& vocab,
                  LabelMap& categories, LabelMap& subcategories,
                  const NewsParseOptions& options, NewsCorpus& corpus,
                  ParseReport* report = nullptr);

inline constexpr std::size_t kUnlimitedHistory =
    std::numeric_limits<std::size_t>::max();

// Parses a behaviors file against `corpus`. History and candidate ids unknown
// to the corpus are dropped and counted; histories keep their latest
// `history_max` entries. Users grow `users` unless it is frozen, in which
// case unseen users get Impression::kUnknownUser.
std::vector<Impression> ParseBehaviorsTsv(std::istream& in,
                                          const NewsCorpus& corpus,
                                          LabelMap& users,
                                          std::size_t history_max,
                                          ParseReport* report = nullptr);
std::vector<Impression> ParseBehaviorsTsv(const std::filesystem::path& path,
                                          const NewsCorpus& corpus,
                                          LabelMap& users,
                                          std::size_t history_max,
                                          ParseReport* report = nullptr);

// Writes one canonical row per article: id, category, subcategory, and the
// title and abstract rebuilt from their token ids.
void WriteCanonicalNewsTsv(std::ostream& out, const NewsCorpus& corpus,
                           const Vocabulary& vocab, const LabelMap& categories,
                           const LabelMap& subcategories);

// Writes impressions in behaviors.tsv layout.
void WriteBehaviorsTsv(std::ostream& out, const std::vector<Impression>& rows,
                       const NewsCorpus& corpus);

}  // namespace newsrec

#endif  // NEWSREC_DATA_MIND_H_
