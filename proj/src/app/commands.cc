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

#include "newsrec/app/commands.h"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "newsrec/data/embedding_file.h"
#include "newsrec/data/stats.h"
#include "newsrec/errors.h"
#include "newsrec/model/model.h"
#include "newsrec/train/checkpoint.h"

namespace newsrec {
namespace {

namespace fs = std::filesystem;

std::ofstream OpenOutput(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(fmt::format("cannot write {}", path.string()));
  return out;
}

void RequireFile(const fs::path& path, std::string_view what) {
  if (path.empty()) throw ConfigError(fmt::format("no {} file given", what));
  if (!fs::is_regular_file(path)) {
    throw DataError(fmt::format("{} file not found: {}", what, path.string()));
  }
}

void LogReport(std::ostream& log, const fs::path& path, const ParseReport& r) {
  fmt::print(log, "{}: {} rows, {} skipped, {} duplicates", path.string(),
             r.rows_read, r.rows_skipped, r.duplicates);
  if (r.unknown_history || r.unknown_candidates) {
    fmt::print(log, ", {} unknown history ids, {} unknown candidates",
               r.unknown_history, r.unknown_candidates);
  }
  fmt::print(log, "\n");
  for (const auto& e : r.errors) fmt::print(log, "  {}\n", e);
}

// Label maps and corpus shared by training, evaluation and prediction.
struct Dataset {
  Vocabulary vocab;
  LabelMap categories{true};
  LabelMap subcategories{true};
  LabelMap users{false};
  NewsCorpus corpus;
};

void ParseNews(Dataset& d, const fs::path& path, const RunConfig& config,
               std::ostream& log) {
  RequireFile(path, "news");
  ParseReport report;
  ParseNewsTsv(path, d.vocab, d.categories, d.subcategories,
               NewsParseOptions{config.limits, config.vocab_min_count},
               d.corpus, &report);
  LogReport(log, path, report);
}

std::vector<Impression> ParseBehaviors(Dataset& d, const fs::path& path,
                                       const RunConfig& config,
                                       std::ostream& log) {
  RequireFile(path, "behaviors");
  ParseReport report;
  auto rows = ParseBehaviorsTsv(path, d.corpus, d.users,
                                static_cast<std::size_t>(config.history_max),
                                &report);
  LogReport(log, path, report);
  return rows;
}

ModelConfig SizedModelConfig(const RunConfig& config, const Dataset& d) {
  ModelConfig m = config.ToModelConfig();
  m.vocab_size = static_cast<std::int64_t>(d.vocab.size());
  m.n_categories = static_cast<std::int64_t>(d.categories.size());
  m.n_subcategories = static_cast<std::int64_t>(d.subcategories.size());
  m.n_users = static_cast<std::int64_t>(d.users.size());
  return m;
}

void WriteEvalOutputs(const fs::path& dir,
                      const std::vector<ScoredImpression>& scored,
                      const EvalReport& report) {
  OpenOutput(dir / "eval_report.json") << EvalReportJson(report) << "\n";
  auto ranks = OpenOutput(dir / "prediction.txt");
  WritePredictionRanks(ranks, scored);
  auto jsonl = OpenOutput(dir / "predictions.jsonl");
  WritePredictionJsonl(jsonl, scored);
}

void LogMetrics(std::ostream& log, std::string_view label, const EvalReport& r) {
  fmt::print(log, "{}: auc {:.4f} mrr {:.4f} ndcg@5 {:.4f} ndcg@10 {:.4f} ({} impressions)\n",
             label, r.auc.mean, r.mrr.mean, r.ndcg5.mean, r.ndcg10.mean,
             r.impressions);
}

// A model restored from a checkpoint together with its frozen maps.
struct Restored {
  RunConfig config;
  Dataset data;
  ParamStore store;
  std::unique_ptr<NewsRecModel> model;
};

std::unique_ptr<Restored> Restore(const fs::path& path,
                                  const std::optional<RunConfig>& expected) {
  if (!fs::is_regular_file(path)) {
    throw CheckpointError(fmt::format("checkpoint not found: {}", path.string()));
  }
  Checkpoint ckpt = LoadCheckpoint(path);
  auto r = std::make_unique<Restored>();
  try {
    r->config = ParseRunConfig(ckpt.config_text);
  } catch (const ConfigError& e) {
    throw CheckpointError(fmt::format("checkpoint config unreadable: {}", e.what()));
  }
  if (ModelConfigHash(r->config) != ckpt.config_hash) {
    throw CheckpointError("checkpoint config hash does not match its stored config");
  }
  if (expected && ModelConfigHash(*expected) != ckpt.config_hash) {
    throw CheckpointError(fmt::format(
        "checkpoint was trained with a different model config (hash {:016x}, "
        "expected {:016x})",
        ckpt.config_hash, ModelConfigHash(*expected)));
  }
  Dataset& d = r->data;
  try {
    d.vocab = Vocabulary::FromTokens(ckpt.vocabulary);
    d.categories = LabelMap::FromLabels(ckpt.categories, true);
    d.subcategories = LabelMap::FromLabels(ckpt.subcategories, true);
    d.users = LabelMap::FromLabels(ckpt.users, false);
  } catch (const DataError& e) {
    throw CheckpointError(fmt::format("checkpoint maps invalid: {}", e.what()));
  }
  d.vocab.Freeze();
  d.categories.Freeze();
  d.subcategories.Freeze();
  d.users.Freeze();
  const ModelConfig m = SizedModelConfig(r->config, d);
  r->model = std::make_unique<NewsRecModel>(
      m, r->store, Tensor::Zeros({m.vocab_size, m.word_dim}), 0);
  try {
    r->store.CopyValuesFrom(ckpt.params);
  } catch (const Error& e) {
    throw CheckpointError(fmt::format("checkpoint parameters do not fit: {}", e.what()));
  }
  return r;
}

std::vector<std::string> ReadIds(const fs::path& path, std::string_view what) {
  RequireFile(path, what);
  std::ifstream in(path);
  std::vector<std::string> ids;
  std::string id;
  while (in >> id) ids.push_back(id);
  return ids;
}

}  // namespace

int ExitCodeFor(const std::exception& error) {
  if (dynamic_cast<const ConfigError*>(&error)) return kExitConfig;
  if (dynamic_cast<const DataError*>(&error)) return kExitData;
  if (dynamic_cast<const NumericError*>(&error) ||
      dynamic_cast<const EvaluationError*>(&error)) {
    return kExitNumeric;
  }
  if (dynamic_cast<const CheckpointError*>(&error)) return kExitCheckpoint;
  return kExitFailure;
}

TrainSummary RunTrain(const RunConfig& config, std::ostream& log) {
  config.Validate();
  const fs::path out_dir = config.output_dir;
  fs::create_directories(out_dir / "checkpoints");
  OpenOutput(out_dir / "config.ini") << CanonicalConfigText(config);

  Dataset d;
  ParseNews(d, config.train_news, config, log);
  d.vocab.Freeze();
  d.categories.Freeze();
  d.subcategories.Freeze();
  if (!config.valid_news.empty()) ParseNews(d, config.valid_news, config, log);
  const auto train = ParseBehaviors(d, config.train_behaviors, config, log);
  d.users.Freeze();
  std::vector<Impression> valid;
  if (!config.valid_behaviors.empty()) {
    valid = ParseBehaviors(d, config.valid_behaviors, config, log);
  }
  if (train.empty()) {
    throw DataError(fmt::format("no usable impressions in {}", config.train_behaviors));
  }
  fmt::print(log, "corpus: {} news, {} words, {} users; {} train / {} valid impressions\n",
             d.corpus.size(), d.vocab.size(), d.users.size(), train.size(),
             valid.size());

  const std::uint64_t seed = config.train.seed;
  EmbeddingTable table;
  if (config.embedding_mode == EmbeddingMode::kRandom) {
    table = RandomEmbeddingTable(d.vocab, config.embedding_dim, seed);
  } else {
    RequireFile(config.embedding_path, "embedding");
    table = LoadEmbeddingFile(fs::path(config.embedding_path), d.vocab,
                              config.embedding_dim, seed);
    fmt::print(log, "embeddings: {} found, {} random\n", table.hits, table.misses);
  }

  const ModelConfig model_config = SizedModelConfig(config, d);
  ParamStore store;
  NewsRecModel model(model_config, store, table.table, seed);
  const std::uint64_t hash = ModelConfigHash(config);

  auto Snapshot = [&](const ParamStore& params, int epoch, const RngState& rng,
                      const std::map<std::string, double>& metrics) {
    Checkpoint c;
    c.config_hash = hash;
    c.epoch = epoch;
    c.rng = rng;
    c.metrics = metrics;
    c.config_text = CanonicalConfigText(config);
    c.vocabulary = d.vocab.tokens();
    c.categories = d.categories.labels();
    c.subcategories = d.subcategories.labels();
    c.users = d.users.labels();
    c.params = params.Clone();
    return c;
  };

  auto metrics_csv = OpenOutput(out_dir / "metrics.csv");
  metrics_csv << "epoch,batch,loss,wall_time_s\n";
  auto epochs_csv = OpenOutput(out_dir / "epochs.csv");
  epochs_csv << "epoch,train_loss,samples,auc,mrr,ndcg@5,ndcg@10\n";

  TrainHooks hooks;
  hooks.on_batch = [&](const BatchRecord& b) {
    fmt::print(metrics_csv, "{},{},{},{}\n", b.epoch, b.batch, b.loss,
               config.log_wall_time ? fmt::format("{:.3f}", b.wall_time_s) : "");
  };
  std::map<int, std::map<std::string, double>> epoch_metrics;
  hooks.on_epoch = [&](const EpochRecord& e) {
    const EvalReport& v = e.validation;
    fmt::print(epochs_csv, "{},{},{},{},{},{},{}\n", e.epoch, e.train_loss,
               e.samples, v.auc.mean, v.mrr.mean, v.ndcg5.mean, v.ndcg10.mean);
    fmt::print(log, "epoch {}: loss {:.4f}, ", e.epoch, e.train_loss);
    LogMetrics(log, "validation", v);
    auto& m = epoch_metrics[e.epoch];
    m = {{"train_loss", e.train_loss}, {"auc", v.auc.mean}, {"mrr", v.mrr.mean},
         {"ndcg@5", v.ndcg5.mean}, {"ndcg@10", v.ndcg10.mean}};
    SaveCheckpoint(out_dir / "checkpoints" / fmt::format("epoch_{}.ckpt", e.epoch),
                   Snapshot(store, e.epoch, e.rng, m));
    return true;
  };

  Trainer trainer(model, store, config.train);
  TrainResult result = trainer.Train(d.corpus, train, valid, hooks);
  metrics_csv.close();
  epochs_csv.close();

  store.CopyValuesFrom(result.best_params);
  TrainSummary summary;
  summary.best_epoch = result.best_epoch;
  summary.checkpoint = out_dir / "best.ckpt";
  SaveCheckpoint(summary.checkpoint,
                 Snapshot(store, result.best_epoch,
                          result.epochs[result.best_epoch - 1].rng,
                          epoch_metrics[result.best_epoch]));
  const auto& eval_set = valid.empty() ? train : valid;
  const auto scored = ScoreImpressions(model, d.corpus, eval_set);
  summary.report = Aggregate(scored);
  WriteEvalOutputs(out_dir, scored, summary.report);
  fmt::print(log, "best epoch {}\n", summary.best_epoch);
  LogMetrics(log, valid.empty() ? "train" : "validation", summary.report);
  return summary;
}

EvalReport RunEval(const EvalOptions& options, std::ostream& log) {
  auto r = Restore(options.checkpoint, options.expected);
  if (options.news.empty()) throw ConfigError("no news file given");
  for (const auto& path : options.news) ParseNews(r->data, path, r->config, log);
  const auto rows = ParseBehaviors(r->data, options.behaviors, r->config, log);
  if (rows.empty()) {
    throw DataError(fmt::format("no usable impressions in {}", options.behaviors.string()));
  }
  const auto scored = ScoreImpressions(*r->model, r->data.corpus, rows);
  const EvalReport report = Aggregate(scored);
  fs::create_directories(options.out_dir);
  WriteEvalOutputs(options.out_dir, scored, report);
  LogMetrics(log, "eval", report);
  return report;
}

void RunSampleTiny(const fs::path& news, const fs::path& behaviors,
                   const MindTinyOptions& options, const fs::path& out_dir,
                   std::ostream& log) {
  RunConfig config;
  Dataset d;
  ParseNews(d, news, config, log);
  RequireFile(behaviors, "behaviors");
  ParseReport report;
  const auto rows = ParseBehaviorsTsv(behaviors, d.corpus, d.users,
                                      kUnlimitedHistory, &report);
  LogReport(log, behaviors, report);
  const MindTinyResult tiny = SampleMindTiny(rows, d.corpus, options);
  fs::create_directories(out_dir);
  auto news_out = OpenOutput(out_dir / "news.tsv");
  WriteMindTinyNews(news_out, tiny, d.corpus);
  auto behaviors_out = OpenOutput(out_dir / "behaviors.tsv");
  WriteBehaviorsTsv(behaviors_out, tiny.behaviors, d.corpus);

  NewsCorpus kept;
  for (const std::int32_t i : tiny.news) {
    kept.index[d.corpus.articles[i].news_id] =
        static_cast<std::int32_t>(kept.articles.size());
    kept.articles.push_back(d.corpus.articles[i]);
  }
  WriteDatasetStats(
      ComputeDatasetStats(kept, d.categories, d.subcategories, tiny.behaviors),
      out_dir);
  fmt::print(log, "mindtiny: {} news, {} users, {} impressions after {} rounds\n",
             tiny.news.size(), tiny.users.size(), tiny.behaviors.size(),
             tiny.rounds);
}

void RunStats(const fs::path& news, const fs::path& behaviors,
              const fs::path& out_dir, std::ostream& log) {
  RunConfig config;
  Dataset d;
  ParseNews(d, news, config, log);
  RequireFile(behaviors, "behaviors");
  ParseReport report;
  const auto rows = ParseBehaviorsTsv(behaviors, d.corpus, d.users,
                                      kUnlimitedHistory, &report);
  LogReport(log, behaviors, report);
  const DatasetStats stats =
      ComputeDatasetStats(d.corpus, d.categories, d.subcategories, rows);
  fs::create_directories(out_dir);
  WriteDatasetStats(stats, out_dir);
  fmt::print(log, "{} news, {} users, {} impressions, {} categories\n",
             stats.num_news, stats.num_users, stats.num_impressions,
             stats.num_categories);
}

void RunPredict(const PredictOptions& options, std::ostream& out) {
  auto r = Restore(options.checkpoint, std::nullopt);
  if (options.news.empty()) throw ConfigError("no news file given");
  std::ostringstream quiet;
  for (const auto& path : options.news) ParseNews(r->data, path, r->config, quiet);
  const NewsCorpus& corpus = r->data.corpus;

  std::vector<std::string> unknown;
  auto Resolve = [&](const std::vector<std::string>& ids) {
    std::vector<std::int32_t> out_ids;
    for (const auto& id : ids) {
      const std::int32_t i = corpus.Find(id);
      if (i < 0) {
        unknown.push_back(id);
      } else {
        out_ids.push_back(i);
      }
    }
    return out_ids;
  };
  std::vector<std::int32_t> history = Resolve(ReadIds(options.history, "history"));
  const std::vector<std::int32_t> candidates =
      Resolve(ReadIds(options.candidates, "candidates"));
  if (!unknown.empty()) {
    throw DataError(fmt::format("unknown news ids: {}", fmt::join(unknown, " ")));
  }
  if (candidates.empty()) throw DataError("candidate list is empty");
  const auto max_history = static_cast<std::size_t>(r->config.history_max);
  if (history.size() > max_history) {
    history.erase(history.begin(), history.end() - static_cast<std::ptrdiff_t>(max_history));
  }

  const std::int32_t user =
      options.user.empty() ? Impression::kUnknownUser : r->data.users.Lookup(options.user);
  const auto vectors = r->model->EncodeCorpus(corpus);
  const std::vector<double> scores =
      r->model->ScoreCandidates(user, history, candidates, vectors);
  const auto order = RankOrder(scores);
  const std::size_t k = std::min(options.k, order.size());
  fmt::print(out, "rank\tnews_id\tcategory\ttitle\tscore\n");
  for (std::size_t rank = 0; rank < k; ++rank) {
    const NewsArticle& a = corpus.articles[candidates[order[rank]]];
    fmt::print(out, "{}\t{}\t{}\t{}\t{:.6f}\n", rank + 1, a.news_id,
               r->data.categories.label(a.category_id), a.title,
               scores[order[rank]]);
  }
}

}  // namespace newsrec
