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

#include "newsrec/app/run_config.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "newsrec/errors.h"
#include "newsrec/tensor/rng.h"

namespace newsrec {
namespace {

template <typename T>
T ParseNumber(std::string_view key, std::string_view text) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError(fmt::format("{}: cannot parse '{}' as a number", key, text));
  }
  return value;
}

bool ParseBool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "on" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "off" || text == "no" || text == "0") return false;
  throw ConfigError(fmt::format("{}: expected true/false, got '{}'", key, text));
}

std::vector<std::int64_t> ParseWidths(std::string_view key, std::string_view text) {
  std::vector<std::int64_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view part = text.substr(start, comma - start);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    if (!part.empty() || comma < text.size()) {
      out.push_back(ParseNumber<std::int64_t>(key, part));
    }
    start = comma + 1;
  }
  return out;
}

struct KeySpec {
  std::string name;
  bool model_defining;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <typename T>
KeySpec Number(std::string name, bool model, T RunConfig::*field) {
  return {name, model,
          [name, field](RunConfig& c, std::string_view v) {
            c.*field = ParseNumber<T>(name, v);
          },
          [field](const RunConfig& c) { return fmt::format("{}", c.*field); }};
}

template <typename T, typename Get>
KeySpec NumberAt(std::string name, bool model, Get access) {
  return {name, model,
          [name, access](RunConfig& c, std::string_view v) {
            access(c) = ParseNumber<T>(name, v);
          },
          [access](const RunConfig& c) {
            return fmt::format("{}", access(c));
          }};
}

KeySpec Text(std::string name, bool model, std::string RunConfig::*field) {
  return {name, model,
          [field](RunConfig& c, std::string_view v) { c.*field = std::string(v); },
          [field](const RunConfig& c) { return c.*field; }};
}

KeySpec Flag(std::string name, bool model, bool RunConfig::*field) {
  return {name, model,
          [name, field](RunConfig& c, std::string_view v) {
            c.*field = ParseBool(name, v);
          },
          [field](const RunConfig& c) {
            return std::string(c.*field ? "true" : "false");
          }};
}

const std::vector<KeySpec>& Specs() {
  static const std::vector<KeySpec> specs = [] {
    using C = RunConfig;
    std::vector<KeySpec> s;
    s.push_back(Text("data.train_news", false, &C::train_news));
    s.push_back(Text("data.train_behaviors", false, &C::train_behaviors));
    s.push_back(Text("data.valid_news", false, &C::valid_news));
    s.push_back(Text("data.valid_behaviors", false, &C::valid_behaviors));
    s.push_back(Number("data.vocab_min_count", false, &C::vocab_min_count));
    s.push_back(Text("embedding.path", false, &C::embedding_path));
    s.push_back({"embedding.mode", true,
                 [](C& c, std::string_view v) { c.embedding_mode = ParseEmbeddingMode(v); },
                 [](const C& c) { return std::string(ToString(c.embedding_mode)); }});
    s.push_back(Number("embedding.dim", true, &C::embedding_dim));
    s.push_back(Number("model.num_filters", true, &C::num_filters));
    s.push_back(Number("model.window_radius", true, &C::window_radius));
    s.push_back(Number("model.attention_dim", true, &C::attention_dim));
    s.push_back(Number("model.category_dim", true, &C::category_dim));
    s.push_back(Number("model.cand_attention_dim", true, &C::cand_attention_dim));
    s.push_back(NumberAt<std::int32_t>("model.title_max", true,
                                       [](auto& c) -> auto& { return c.limits.title_max; }));
    s.push_back(NumberAt<std::int32_t>("model.abstract_max", true,
                                       [](auto& c) -> auto& { return c.limits.abstract_max; }));
    s.push_back(Number("model.history_max", true, &C::history_max));
    s.push_back(Flag("model.category_views", true, &C::category_views));
    s.push_back(Flag("model.word_attention", true, &C::word_attention));
    s.push_back({"predictor.kind", true,
                 [](C& c, std::string_view v) { c.predictor = ParsePredictorKind(v); },
                 [](const C& c) { return std::string(ToString(c.predictor)); }});
    s.push_back({"predictor.hidden", true,
                 [](C& c, std::string_view v) {
                   c.predictor_hidden = ParseWidths("predictor.hidden", v);
                 },
                 [](const C& c) { return fmt::format("{}", fmt::join(c.predictor_hidden, ",")); }});
    s.push_back(NumberAt<int>("train.negatives", false,
                              [](auto& c) -> auto& { return c.train.negatives; }));
    s.push_back(NumberAt<std::size_t>("train.batch_size", false,
                                      [](auto& c) -> auto& { return c.train.batch_size; }));
    s.push_back(NumberAt<double>("train.lr", false,
                                 [](auto& c) -> auto& { return c.train.lr; }));
    s.push_back(NumberAt<int>("train.epochs", false,
                              [](auto& c) -> auto& { return c.train.epochs; }));
    s.push_back(NumberAt<float>("train.dropout", false,
                                [](auto& c) -> auto& { return c.train.dropout; }));
    s.push_back(NumberAt<std::uint64_t>("train.seed", false,
                                        [](auto& c) -> auto& { return c.train.seed; }));
    s.push_back(NumberAt<double>("train.grad_clip", false,
                                 [](auto& c) -> auto& { return c.train.grad_clip; }));
    s.push_back(NumberAt<std::size_t>("train.log_every", false,
                                      [](auto& c) -> auto& { return c.train.log_every; }));
    s.push_back(NumberAt<std::int64_t>("mindtiny.min_user_clicks", false,
                                       [](auto& c) -> auto& { return c.mindtiny.min_user_clicks; }));
    s.push_back(NumberAt<std::int64_t>("mindtiny.min_news_clicks", false,
                                       [](auto& c) -> auto& { return c.mindtiny.min_news_clicks; }));
    s.push_back(Text("output.dir", false, &C::output_dir));
    s.push_back(Flag("log.wall_time", false, &C::log_wall_time));
    return s;
  }();
  return specs;
}

const KeySpec& FindSpec(std::string_view key) {
  for (const auto& spec : Specs()) {
    if (spec.name == key) return spec;
  }
  throw ConfigError(fmt::format("unknown config key '{}'", key));
}

}  // namespace

void RunConfig::Validate() const {
  ToModelConfig().Validate();
  train.Validate();
  if (vocab_min_count < 1) throw ConfigError("data.vocab_min_count must be >= 1");
  if (embedding_mode != EmbeddingMode::kRandom && embedding_path.empty()) {
    throw ConfigError(fmt::format("embedding.mode {} needs embedding.path",
                                  ToString(embedding_mode)));
  }
  if (limits.title_max < 1 || limits.abstract_max < 1) {
    throw ConfigError("model.title_max and model.abstract_max must be >= 1");
  }
  if (history_max < 1) throw ConfigError("model.history_max must be >= 1");
  if (mindtiny.min_user_clicks < 0 || mindtiny.min_news_clicks < 0) {
    throw ConfigError("mindtiny thresholds must be >= 0");
  }
  if (output_dir.empty()) throw ConfigError("output.dir must not be empty");
}

ModelConfig RunConfig::ToModelConfig() const {
  ModelConfig m;
  m.word_dim = embedding_dim;
  m.num_filters = num_filters;
  m.window_radius = window_radius;
  m.attention_dim = attention_dim;
  m.category_dim = category_dim;
  m.cand_attention_dim = cand_attention_dim;
  m.predictor = predictor;
  m.predictor_hidden = predictor_hidden;
  m.embedding_mode = embedding_mode;
  m.category_views = category_views;
  m.word_attention = word_attention;
  m.dropout = train.dropout;
  return m;
}

const std::vector<std::string>& RunConfigKeys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& spec : Specs()) out.push_back(spec.name);
    return out;
  }();
  return keys;
}

void SetRunConfigValue(RunConfig& config, std::string_view key,
                       std::string_view value) {
  FindSpec(key).set(config, value);
}

std::string GetRunConfigValue(const RunConfig& config, std::string_view key) {
  return FindSpec(key).get(config);
}

RunConfig ParseRunConfig(
    std::string_view ini_text,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(ini_text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("config line {}: {}", e.line(), e.message()));
  }
  RunConfig config;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError(
          fmt::format("config key '{}' is outside any [section]", section));
    }
    for (const auto& [key, value] : body) {
      SetRunConfigValue(config, section + "." + key, value.data());
    }
  }
  for (const auto& [key, value] : overrides) {
    SetRunConfigValue(config, key, value);
  }
  config.Validate();
  return config;
}

RunConfig LoadRunConfig(
    const std::filesystem::path& path,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read config {}", path.string()));
  std::ostringstream text;
  text << in.rdbuf();
  return ParseRunConfig(text.str(), overrides);
}

std::string CanonicalConfigText(const RunConfig& config) {
  std::string out, section;
  for (const auto& spec : Specs()) {
    const auto dot = spec.name.find('.');
    const std::string s = spec.name.substr(0, dot);
    if (s != section) {
      out += fmt::format("{}[{}]\n", section.empty() ? "" : "\n", s);
      section = s;
    }
    out += fmt::format("{} = {}\n", spec.name.substr(dot + 1), spec.get(config));
  }
  return out;
}

std::uint64_t ModelConfigHash(const RunConfig& config) {
  std::string text;
  for (const auto& spec : Specs()) {
    if (spec.model_defining) text += spec.name + "=" + spec.get(config) + "\n";
  }
  return Fnv1a64(text);
}

}  // namespace newsrec
