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

#include "newsrec/data/mind.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "fmt/format.h"
#include "newsrec/errors.h"

namespace newsrec {
namespace {

constexpr std::size_t kMaxReportedErrors = 20;

std::vector<std::string_view> SplitOn(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string_view> SplitSpaces(std::string_view s) {
  std::vector<std::string_view> out;
  for (const auto piece : SplitOn(s, ' ')) {
    if (!piece.empty()) out.push_back(piece);
  }
  return out;
}

bool ReadLine(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

void RecordError(ParseReport* report, std::size_t line_no,
                 const std::string& reason) {
  if (!report) return;
  ++report->rows_skipped;
  if (report->errors.size() < kMaxReportedErrors) {
    report->errors.push_back(fmt::format("line {}: {}", line_no, reason));
  }
}

std::ifstream OpenOrThrow(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open {}", path.string()));
  return in;
}

struct RawNewsRow {
  std::size_t line_no;
  std::string line;
  std::vector<std::string> title_words;
  std::vector<std::string> abstract_words;
};

void EncodeWords(const std::vector<std::string>& words, Vocabulary& vocab,
                 std::int32_t max_len,
                 const std::unordered_map<std::string, std::int32_t>* counts,
                 std::int32_t min_count, std::vector<std::int32_t>& ids,
                 std::int32_t& length, std::int32_t& total) {
  ids.assign(static_cast<std::size_t>(max_len), Vocabulary::kPad);
  total = static_cast<std::int32_t>(words.size());
  length = std::min(total, max_len);
  for (std::int32_t i = 0; i < length; ++i) {
    const bool rare = counts && counts->at(words[i]) < min_count;
    ids[i] = rare ? vocab.Lookup(words[i]) : vocab.AddOrLookup(words[i]);
  }
}

std::string JoinTokens(const std::vector<std::int32_t>& ids, std::int32_t len,
                       const Vocabulary& vocab) {
  std::string out;
  for (std::int32_t i = 0; i < len; ++i) {
    if (i > 0) out += ' ';
    out += vocab.token(ids[i]);
  }
  return out;
}

}  // namespace

std::int32_t NewsCorpus::Find(const std::string& news_id) const {
  const auto it = index.find(news_id);
  return it == index.end() ? -1 : it->second;
}

void ParseNewsTsv(std::istream& in, Vocabulary& vocab, LabelMap& categories,
                  LabelMap& subcategories, const NewsParseOptions& options,
                  NewsCorpus& corpus, ParseReport* report) {
  if (options.limits.title_max < 1 || options.limits.abstract_max < 1) {
    throw ConfigError("news text limits must be >= 1");
  }
  std::vector<RawNewsRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (ReadLine(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (report) ++report->rows_read;
    const auto fields = SplitOn(line, '\t');
    if (fields.size() < 5) {
      RecordError(report, line_no,
                  fmt::format("expected >= 5 tab-separated fields, got {}",
                              fields.size()));
      continue;
    }
    if (fields[0].empty()) {
      RecordError(report, line_no, "empty news id");
      continue;
    }
    RawNewsRow row{line_no, line, SplitWords(fields[3]), SplitWords(fields[4])};
    rows.push_back(std::move(row));
  }

  std::unordered_map<std::string, std::int32_t> counts;
  const bool use_counts = options.vocab_min_count > 1 && !vocab.frozen();
  if (use_counts) {
    for (const auto& row : rows) {
      for (const auto& w : row.title_words) ++counts[w];
      for (const auto& w : row.abstract_words) ++counts[w];
    }
  }

  for (auto& row : rows) {
    const auto fields = SplitOn(row.line, '\t');
    const std::string news_id(fields[0]);
    if (corpus.index.count(news_id)) {
      if (report) ++report->duplicates;
      continue;
    }
    NewsArticle article;
    article.news_id = news_id;
    article.category_id = categories.AddOrLookup(fields[1]);
    article.subcategory_id = subcategories.AddOrLookup(fields[2]);
    article.title = std::string(fields[3]);
    const auto* count_map = use_counts ? &counts : nullptr;
    EncodeWords(row.title_words, vocab, options.limits.title_max, count_map,
                options.vocab_min_count, article.title_ids, article.title_len,
                article.title_words);
    EncodeWords(row.abstract_words, vocab, options.limits.abstract_max,
                count_map, options.vocab_min_count, article.abstract_ids,
                article.abstract_len, article.abstract_words);
    const auto index = static_cast<std::int32_t>(corpus.articles.size());
    corpus.index.emplace(news_id, index);
    corpus.articles.push_back(std::move(article));
    corpus.raw_rows.push_back(std::move(row.line));
  }
}

void ParseNewsTsv(const std::filesystem::path& path, Vocabulary& vocab,
                  LabelMap& categories, LabelMap& subcategories,
                  const NewsParseOptions& options, NewsCorpus& corpus,
                  ParseReport* report) {
  std::ifstream in = OpenOrThrow(path);
  ParseNewsTsv(in, vocab, categories, subcategories, options, corpus, report);
}

std::vector<Impression> ParseBehaviorsTsv(std::istream& in,
                                          const NewsCorpus& corpus,
                                          LabelMap& users,
                                          std::size_t history_max,
                                          ParseReport* report) {
  std::vector<Impression> out;
  std::string line;
  std::size_t line_no = 0;
  while (ReadLine(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (report) ++report->rows_read;
    const auto fields = SplitOn(line, '\t');
    if (fields.size() < 5) {
      RecordError(report, line_no,
                  fmt::format("expected 5 tab-separated fields, got {}",
                              fields.size()));
      continue;
    }
    Impression imp;
    imp.impression_id = std::string(fields[0]);
    imp.user_key = std::string(fields[1]);
    imp.time = std::string(fields[2]);

    bool bad = false;
    std::size_t unknown_candidates = 0;
    for (const auto token : SplitSpaces(fields[4])) {
      const std::size_t dash = token.rfind('-');
      const std::string_view suffix =
          dash == std::string_view::npos ? std::string_view{} : token.substr(dash + 1);
      if (dash == std::string_view::npos || dash == 0 ||
          (suffix != "0" && suffix != "1")) {
        RecordError(report, line_no,
                    fmt::format("candidate '{}' lacks a -0/-1 label", token));
        bad = true;
        break;
      }
      const std::int32_t news = corpus.Find(std::string(token.substr(0, dash)));
      if (news < 0) {
        ++unknown_candidates;
        continue;
      }
      imp.candidates.push_back(
          {news, static_cast<std::uint8_t>(suffix == "1" ? 1 : 0)});
    }
    if (bad) continue;
    if (report) report->unknown_candidates += unknown_candidates;
    if (imp.candidates.empty()) {
      RecordError(report, line_no, "no resolvable candidates");
      continue;
    }

    for (const auto token : SplitSpaces(fields[3])) {
      const std::int32_t news = corpus.Find(std::string(token));
      if (news < 0) {
        if (report) ++report->unknown_history;
        continue;
      }
      imp.history.push_back(news);
    }
    if (imp.history.size() > history_max) {
      imp.history.erase(imp.history.begin(),
                        imp.history.end() - static_cast<std::ptrdiff_t>(history_max));
      if (report) ++report->truncated_histories;
    }
    imp.user_id = users.AddOrLookup(imp.user_key);
    out.push_back(std::move(imp));
  }
  return out;
}

std::vector<Impression> ParseBehaviorsTsv(const std::filesystem::path& path,
                                          const NewsCorpus& corpus,
                                          LabelMap& users,
                                          std::size_t history_max,
                                          ParseReport* report) {
  std::ifstream in = OpenOrThrow(path);
  return ParseBehaviorsTsv(in, corpus, users, history_max, report);
}

void WriteCanonicalNewsTsv(std::ostream& out, const NewsCorpus& corpus,
                           const Vocabulary& vocab, const LabelMap& categories,
                           const LabelMap& subcategories) {
  for (const auto& a : corpus.articles) {
    out << a.news_id << '\t' << categories.label(a.category_id) << '\t'
        << subcategories.label(a.subcategory_id) << '\t'
        << JoinTokens(a.title_ids, a.title_len, vocab) << '\t'
        << JoinTokens(a.abstract_ids, a.abstract_len, vocab) << '\n';
  }
}

void WriteBehaviorsTsv(std::ostream& out, const std::vector<Impression>& rows,
                       const NewsCorpus& corpus) {
  for (const auto& imp : rows) {
    out << imp.impression_id << '\t' << imp.user_key << '\t' << imp.time << '\t';
    for (std::size_t i = 0; i < imp.history.size(); ++i) {
      if (i > 0) out << ' ';
      out << corpus.articles[imp.history[i]].news_id;
    }
    out << '\t';
    for (std::size_t i = 0; i < imp.candidates.size(); ++i) {
      if (i > 0) out << ' ';
      out << corpus.articles[imp.candidates[i].news].news_id << '-'
          << static_cast<int>(imp.candidates[i].label);
    }
    out << '\n';
  }
}

}  // namespace newsrec
