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

#ifndef NEWSREC_EVAL_METRICS_H_
#define NEWSREC_EVAL_METRICS_H_

// Per-impression ranking metrics and their unweighted mean. A metric that is
// undefined for an impression (no positive, or for AUC no negative) returns
// nullopt and is left out of the mean.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace newsrec {

struct ScoredImpression {
  std::string impression_id;
  std::vector<double> scores;
  std::vector<std::uint8_t> labels;
};

// Probability that a positive outscores a negative, ties counting one half.
std::optional<double> Auc(const ScoredImpression& imp);
// 1 / rank of the best-ranked positive.
std::optional<double> Mrr(const ScoredImpression& imp);
// DCG over the top k divided by the DCG of the ideal ordering.
std::optional<double> NdcgAtK(const ScoredImpression& imp, int k);

// Candidate indices by descending score; equal scores keep input order.
std::vector<std::size_t> RankOrder(std::span<const double> scores);

struct ImpressionMetrics {
  std::optional<double> auc;
  std::optional<double> mrr;
  std::optional<double> ndcg5;
  std::optional<double> ndcg10;
};

// Throws NumericError on a non-finite score and ContractError on an empty
// or inconsistent impression.
ImpressionMetrics ComputeMetrics(const ScoredImpression& imp);

struct MetricSummary {
  double mean = 0.0;
  std::size_t count = 0;
  std::size_t skipped = 0;
};

struct EvalReport {
  std::size_t impressions = 0;
  MetricSummary auc;
  MetricSummary mrr;
  MetricSummary ndcg5;
  MetricSummary ndcg10;
};

// Means use compensated summation. Throws EvaluationError when every
// impression is skipped for some metric.
EvalReport Aggregate(std::span<const ScoredImpression> imps);

// JSON object with "impressions" and one {"mean","count","skipped"} entry
// per metric.
std::string EvalReportJson(const EvalReport& report);

// "impression_id [r_1,r_2,...]" with r_i the 1-based rank of candidate i.
void WritePredictionRanks(std::ostream& out,
                          std::span<const ScoredImpression> imps);
// One {"impression_id","scores","labels"} object per line.
void WritePredictionJsonl(std::ostream& out,
                          std::span<const ScoredImpression> imps);

}  // namespace newsrec

#endif  // NEWSREC_EVAL_METRICS_H_
