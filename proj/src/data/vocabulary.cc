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

#include "newsrec/data/vocabulary.h"

#include <unicode/normalizer2.h>
#include <unicode/locid.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "fmt/format.h"
#include "newsrec/errors.h"

namespace newsrec {
namespace {

icu::UnicodeString NormalizeLower(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<std::int32_t>(text.size())));
  icu::UnicodeString out = nfc->normalize(s, status);
  out.toLower(icu::Locale::getRoot());
  out = nfc->normalize(out, status);
  if (U_FAILURE(status)) throw DataError("invalid text for normalization");
  return out;
}

}  // namespace

Vocabulary::Vocabulary() : tokens_{"<pad>", "<unk>"} {
  ids_.emplace("<pad>", kPad);
  ids_.emplace("<unk>", kUnk);
}

std::int32_t Vocabulary::Lookup(std::string_view token) const {
  const auto it = ids_.find(std::string(token));
  return it == ids_.end() ? kUnk : it->second;
}

std::int32_t Vocabulary::AddOrLookup(std::string_view token) {
  const auto it = ids_.find(std::string(token));
  if (it != ids_.end()) return it->second;
  if (frozen_) return kUnk;
  const auto id = static_cast<std::int32_t>(tokens_.size());
  tokens_.emplace_back(token);
  ids_.emplace(tokens_.back(), id);
  return id;
}

const std::string& Vocabulary::token(std::int32_t id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= tokens_.size()) {
    throw IndexError(fmt::format("token id {} out of range", id));
  }
  return tokens_[id];
}

Vocabulary Vocabulary::FromTokens(std::vector<std::string> tokens) {
  if (tokens.size() < 2) {
    throw DataError("vocabulary must contain the two reserved tokens");
  }
  Vocabulary vocab;
  for (std::size_t i = 2; i < tokens.size(); ++i) vocab.AddOrLookup(tokens[i]);
  if (vocab.size() != tokens.size()) {
    throw DataError("vocabulary token list contains duplicates");
  }
  vocab.Freeze();
  return vocab;
}

LabelMap::LabelMap(bool reserve_unknown) : reserve_unknown_(reserve_unknown) {
  if (reserve_unknown_) {
    labels_.emplace_back("<unk>");
    index_.emplace("<unk>", 0);
  }
}

std::int32_t LabelMap::Lookup(std::string_view label) const {
  const auto it = index_.find(std::string(label));
  if (it != index_.end()) return it->second;
  return reserve_unknown_ ? 0 : kNotFound;
}

std::int32_t LabelMap::AddOrLookup(std::string_view label) {
  const auto it = index_.find(std::string(label));
  if (it != index_.end()) return it->second;
  if (frozen_) return reserve_unknown_ ? 0 : kNotFound;
  const auto index = static_cast<std::int32_t>(labels_.size());
  labels_.emplace_back(label);
  index_.emplace(labels_.back(), index);
  return index;
}

const std::string& LabelMap::label(std::int32_t index) const {
  if (index < 0 || static_cast<std::size_t>(index) >= labels_.size()) {
    throw IndexError(fmt::format("label index {} out of range", index));
  }
  return labels_[index];
}

LabelMap LabelMap::FromLabels(std::vector<std::string> labels,
                              bool reserve_unknown) {
  LabelMap map(reserve_unknown);
  const std::size_t start = reserve_unknown ? 1 : 0;
  for (std::size_t i = start; i < labels.size(); ++i) map.AddOrLookup(labels[i]);
  if (map.size() != labels.size()) {
    throw DataError("label list contains duplicates or a misplaced <unk>");
  }
  map.Freeze();
  return map;
}

std::vector<std::string> SplitWords(std::string_view text) {
  const icu::UnicodeString s = NormalizeLower(text);
  std::vector<std::string> words;
  icu::UnicodeString current;
  auto flush = [&] {
    if (current.isEmpty()) return;
    std::string utf8;
    current.toUTF8String(utf8);
    words.push_back(std::move(utf8));
    current.remove();
  };
  for (std::int32_t i = 0; i < s.length();) {
    const UChar32 c = s.char32At(i);
    if (u_isalnum(c)) {
      current.append(c);
    } else {
      flush();
    }
    i = s.moveIndex32(i, 1);
  }
  flush();
  return words;
}

std::string NormalizeToken(std::string_view token) {
  std::string out;
  NormalizeLower(token).toUTF8String(out);
  return out;
}

TokenizedText Tokenize(std::string_view text, Vocabulary& vocab,
                       std::int32_t max_len) {
  if (max_len < 1) throw ConfigError("tokenize: max_len must be >= 1");
  const std::vector<std::string> words = SplitWords(text);
  TokenizedText out;
  out.ids.assign(static_cast<std::size_t>(max_len), Vocabulary::kPad);
  out.total_words = static_cast<std::int32_t>(words.size());
  out.length = std::min<std::int32_t>(out.total_words, max_len);
  for (std::int32_t i = 0; i < out.length; ++i) {
    out.ids[i] = vocab.AddOrLookup(words[i]);
  }
  return out;
}

}  // namespace newsrec
