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

#ifndef NEWSREC_APP_COMMANDS_H_
#define NEWSREC_APP_COMMANDS_H_

// The work behind each command-line subcommand. Every function writes only
// below its output directory and reports progress on `log`.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "newsrec/app/run_config.h"
#include "newsrec/eval/metrics.h"

namespace newsrec {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitData = 3,
  kExitNumeric = 4,
  kExitCheckpoint = 5,
};

// Maps the library's error types onto exit codes.
int ExitCodeFor(const std::exception& error);

struct TrainSummary {
  int best_epoch = 0;
  EvalReport report;  // best parameters on the validation impressions
  std::filesystem::path checkpoint;
};

// Writes into config.output_dir:
//   config.ini           canonical form of the effective configuration
//   metrics.csv          epoch,batch,loss,wall_time_s
//   epochs.csv           per-epoch loss and validation metrics
//   checkpoints/epoch_N.ckpt, best.ckpt
//   eval_report.json, prediction.txt, predictions.jsonl
TrainSummary RunTrain(const RunConfig& config, std::ostream& log);

struct EvalOptions {
  std::filesystem::path checkpoint;
  std::vector<std::filesystem::path> news;  // merged in order
  std::filesystem::path behaviors;
  std::filesystem::path out_dir;
  // When set, its model hash must match the checkpoint's.
  std::optional<RunConfig> expected;
};

// Writes eval_report.json, prediction.txt and predictions.jsonl.
EvalReport RunEval(const EvalOptions& options, std::ostream& log);

// Writes news.tsv, behaviors.tsv and the dataset statistics of the sample.
void RunSampleTiny(const std::filesystem::path& news,
                   const std::filesystem::path& behaviors,
                   const MindTinyOptions& options,
                   const std::filesystem::path& out_dir, std::ostream& log);

// Writes the dataset statistics of one news/behaviors pair.
void RunStats(const std::filesystem::path& news,
              const std::filesystem::path& behaviors,
              const std::filesystem::path& out_dir, std::ostream& log);

struct PredictOptions {
  std::filesystem::path checkpoint;
  std::vector<std::filesystem::path> news;  // merged in order
  std::filesystem::path history;     // whitespace-separated news ids
  std::filesystem::path candidates;  // whitespace-separated news ids
  std::string user;                  // empty or unseen: unknown user
  std::size_t k = 5;
};

// Prints rank, news id, category, title and score of the top-k candidates.
void RunPredict(const PredictOptions& options, std::ostream& out);

}  // namespace newsrec

#endif  // NEWSREC_APP_COMMANDS_H_
