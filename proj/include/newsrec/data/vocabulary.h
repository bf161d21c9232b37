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

#ifndef NEWSREC_DATA_VOCABULARY_H_
#define NEWSREC_DATA_VOCABULARY_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace newsrec {

// Word vocabulary. Ids 0 and 1 are reserved for padding and unknown tokens;
// real tokens get ids 2, 3, ... in first-seen order.
class Vocabulary {
 public:
  static constexpr std::int32_t kPad = 0;
  static constexpr std::int32_t kUnk = 1;

  Vocabulary();

  // Returns kUnk for unseen tokens.
  std::int32_t Lookup(std::string_view token) const;
  // Adds unseen tokens unless frozen, in which case this behaves as Lookup.
  std::int32_t AddOrLookup(std::string_view token);

  void Freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

  std::size_t size() const { return tokens_.size(); }
  const std::string& token(std::int32_t id) const;
  const std::vector<std::string>& tokens() const { return tokens_; }

  // Rebuilds a frozen vocabulary from its id-ordered token list.
  static Vocabulary FromTokens(std::vector<std::string> tokens);

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::int32_t> ids_;
  bool frozen_ = false;
};

// String label to dense index map (categories, users). With a reserved
// unknown entry, index 0 is "<unk>" and unseen labels map to it; otherwise
// unseen labels map to kNotFound.
class LabelMap {
 public:
  static constexpr std::int32_t kNotFound = -1;

  explicit LabelMap(bool reserve_unknown);

  std::int32_t Lookup(std::string_view label) const;
  std::int32_t AddOrLookup(std::string_view label);

  void Freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }
  bool reserves_unknown() const { return reserve_unknown_; }

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::int32_t index) const;
  const std::vector<std::string>& labels() const { return labels_; }

  static LabelMap FromLabels(std::vector<std::string> labels,
                             bool reserve_unknown);

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::int32_t> index_;
  bool reserve_unknown_;
  bool frozen_ = false;
};

// NFC-normalizes and lowercases UTF-8 text, then splits it on every maximal
// run of non-alphanumeric code points.
std::vector<std::string> SplitWords(std::string_view text);

// NFC + lowercase of a single token.
std::string NormalizeToken(std::string_view token);

struct TokenizedText {
  std::vector<std::int32_t> ids;  // exactly max_len entries, PAD-filled tail
  std::int32_t length = 0;        // real tokens kept
  std::int32_t total_words = 0;   // words before truncation
};

// Splits, truncates to max_len and pads. Unseen words get new ids while the
// vocabulary is growing and map to kUnk once it is frozen.
TokenizedText Tokenize(std::string_view text, Vocabulary& vocab,
                       std::int32_t max_len);

}  // namespace newsrec

#endif  // NEWSREC_DATA_VOCABULARY_H_
