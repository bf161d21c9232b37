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

// Command-line entry point: train, eval, sample-tiny, stats, predict.

#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "newsrec/app/commands.h"
#include "newsrec/app/run_config.h"

namespace {

using newsrec::RunConfig;

struct ConfigArgs {
  std::string path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<std::pair<std::string, std::string>> overrides;
};

void AddConfigArgs(CLI::App* app, ConfigArgs& args) {
  app->add_option("--config", args.path, "INI run configuration");
  app->add_option("--seed", args.seed, "Same as --train.seed");
  app->add_option("--out", args.out, "Same as --output.dir");
  for (const std::string& key : newsrec::RunConfigKeys()) {
    app->add_option_function<std::string>(
           "--" + key,
           [&args, key](const std::string& value) {
             args.overrides.emplace_back(key, value);
           },
           "Override " + key)
        ->group("Config overrides");
  }
}

RunConfig BuildConfig(const ConfigArgs& args) {
  auto overrides = args.overrides;
  if (args.seed) overrides.emplace_back("train.seed", std::to_string(*args.seed));
  if (!args.out.empty()) overrides.emplace_back("output.dir", args.out);
  return args.path.empty() ? newsrec::ParseRunConfig("", overrides)
                           : newsrec::LoadRunConfig(args.path, overrides);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-view news recommender"};
  app.require_subcommand(1);

  ConfigArgs train_args;
  CLI::App* train = app.add_subcommand("train", "Train a model and evaluate it");
  AddConfigArgs(train, train_args);

  ConfigArgs eval_args;
  newsrec::EvalOptions eval_options;
  CLI::App* eval = app.add_subcommand("eval", "Score impressions with a checkpoint");
  eval->add_option("--checkpoint", eval_options.checkpoint, "Checkpoint file")->required();
  eval->add_option("--news", eval_options.news,
                   "news.tsv files (default: data.train_news and data.valid_news)");
  eval->add_option("--behaviors", eval_options.behaviors,
                   "behaviors.tsv (default: data.valid_behaviors)");
  AddConfigArgs(eval, eval_args);

  ConfigArgs tiny_args;
  std::string tiny_news, tiny_behaviors;
  CLI::App* tiny = app.add_subcommand("sample-tiny", "Sample a MINDtiny subset");
  tiny->add_option("--news", tiny_news, "news.tsv (default: data.train_news)");
  tiny->add_option("--behaviors", tiny_behaviors,
                   "behaviors.tsv (default: data.train_behaviors)");
  AddConfigArgs(tiny, tiny_args);

  ConfigArgs stats_args;
  std::string stats_news, stats_behaviors;
  CLI::App* stats = app.add_subcommand("stats", "Write dataset statistics");
  stats->add_option("--news", stats_news, "news.tsv (default: data.train_news)");
  stats->add_option("--behaviors", stats_behaviors,
                    "behaviors.tsv (default: data.train_behaviors)");
  AddConfigArgs(stats, stats_args);

  newsrec::PredictOptions predict_options;
  CLI::App* predict = app.add_subcommand("predict", "Print top-k news for one user");
  predict->add_option("--checkpoint", predict_options.checkpoint, "Checkpoint file")
      ->required();
  predict->add_option("--news", predict_options.news, "news.tsv files")->required();
  predict->add_option("--history", predict_options.history,
                      "File of clicked news ids, oldest first")
      ->required();
  predict->add_option("--candidates", predict_options.candidates,
                      "File of candidate news ids")
      ->required();
  predict->add_option("--user", predict_options.user, "User id (optional)");
  predict->add_option("--k", predict_options.k, "Rows to print")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? newsrec::kExitOk : newsrec::kExitConfig;
  }

  try {
    if (*train) {
      newsrec::RunTrain(BuildConfig(train_args), std::cerr);
    } else if (*eval) {
      const RunConfig config = BuildConfig(eval_args);
      if (eval_options.news.empty()) {
        for (const auto& path : {config.train_news, config.valid_news}) {
          if (!path.empty()) eval_options.news.emplace_back(path);
        }
      }
      if (eval_options.behaviors.empty()) eval_options.behaviors = config.valid_behaviors;
      eval_options.out_dir = config.output_dir;
      if (!eval_args.path.empty() || !eval_args.overrides.empty()) {
        eval_options.expected = config;
      }
      newsrec::RunEval(eval_options, std::cerr);
    } else if (*tiny) {
      const RunConfig config = BuildConfig(tiny_args);
      newsrec::RunSampleTiny(tiny_news.empty() ? config.train_news : tiny_news,
                             tiny_behaviors.empty() ? config.train_behaviors
                                                    : tiny_behaviors,
                             config.mindtiny, config.output_dir, std::cerr);
    } else if (*stats) {
      const RunConfig config = BuildConfig(stats_args);
      newsrec::RunStats(stats_news.empty() ? config.train_news : stats_news,
                        stats_behaviors.empty() ? config.train_behaviors
                                                : stats_behaviors,
                        config.output_dir, std::cerr);
    } else if (*predict) {
      newsrec::RunPredict(predict_options, std::cout);
    }
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return newsrec::ExitCodeFor(e);
  }
  return newsrec::kExitOk;
}
