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

#include "newsrec/eval/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include <fmt/format.h>

#include "json.hpp"
#include "newsrec/errors.h"

namespace newsrec {
namespace {

std::size_t CountPositives(const ScoredImpression& imp) {
  return static_cast<std::size_t>(
      std::count(imp.labels.begin(), imp.labels.end(), std::uint8_t{1}));
}

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void Add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

struct Accumulator {
  CompensatedSum sum;
  MetricSummary summary;

  void Add(const std::optional<double>& v) {
    if (v) {
      sum.Add(*v);
      ++summary.count;
    } else {
      ++summary.skipped;
    }
  }

  MetricSummary Finish(const char* name) {
    if (summary.count == 0) {
      throw EvaluationError(
          fmt::format("{} is undefined for every impression", name));
    }
    summary.mean = sum.value() / static_cast<double>(summary.count);
    return summary;
  }
};

nlohmann::ordered_json SummaryJson(const MetricSummary& s) {
  return {{"mean", s.mean}, {"count", s.count}, {"skipped", s.skipped}};
}

}  // namespace

std::vector<std::size_t> RankOrder(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });
  return order;
}

std::optional<double> Auc(const ScoredImpression& imp) {
  const std::size_t n = imp.scores.size();
  const std::size_t positives = CountPositives(imp);
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) return std::nullopt;

  // Mann-Whitney U from midranks of the ascending order.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return imp.scores[a] < imp.scores[b];
  });
  double positive_rank_sum = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && imp.scores[order[j + 1]] == imp.scores[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) {
      if (imp.labels[order[t]]) positive_rank_sum += midrank;
    }
    i = j + 1;
  }
  const double p = static_cast<double>(positives);
  const double u = positive_rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(negatives));
}

std::optional<double> Mrr(const ScoredImpression& imp) {
  if (CountPositives(imp) == 0) return std::nullopt;
  const auto order = RankOrder(imp.scores);
  for (std::size_t r = 0; r < order.size(); ++r) {
    if (imp.labels[order[r]]) return 1.0 / static_cast<double>(r + 1);
  }
  return std::nullopt;
}

std::optional<double> NdcgAtK(const ScoredImpression& imp, int k) {
  const std::size_t positives = CountPositives(imp);
  if (positives == 0 || k < 1) return std::nullopt;
  const auto order = RankOrder(imp.scores);
  const std::size_t cutoff = std::min<std::size_t>(static_cast<std::size_t>(k),
                                                   order.size());
  double dcg = 0.0;
  for (std::size_t r = 0; r < cutoff; ++r) {
    if (imp.labels[order[r]]) dcg += 1.0 / std::log2(static_cast<double>(r + 2));
  }
  double ideal = 0.0;
  const std::size_t ideal_hits = std::min<std::size_t>(static_cast<std::size_t>(k),
                                                       positives);
  for (std::size_t r = 0; r < ideal_hits; ++r) {
    ideal += 1.0 / std::log2(static_cast<double>(r + 2));
  }
  return dcg / ideal;
}

ImpressionMetrics ComputeMetrics(const ScoredImpression& imp) {
  if (imp.scores.empty() || imp.scores.size() != imp.labels.size()) {
    throw ContractError(fmt::format(
        "impression {} has {} scores and {} labels", imp.impression_id,
        imp.scores.size(), imp.labels.size()));
  }
  for (const double s : imp.scores) {
    if (!std::isfinite(s)) {
      throw NumericError(
          fmt::format("non-finite score in impression {}", imp.impression_id));
    }
  }
  return {Auc(imp), Mrr(imp), NdcgAtK(imp, 5), NdcgAtK(imp, 10)};
}

EvalReport Aggregate(std::span<const ScoredImpression> imps) {
  Accumulator auc, mrr, ndcg5, ndcg10;
  for (const auto& imp : imps) {
    const ImpressionMetrics m = ComputeMetrics(imp);
    auc.Add(m.auc);
    mrr.Add(m.mrr);
    ndcg5.Add(m.ndcg5);
    ndcg10.Add(m.ndcg10);
  }
  EvalReport report;
  report.impressions = imps.size();
  report.auc = auc.Finish("AUC");
  report.mrr = mrr.Finish("MRR");
  report.ndcg5 = ndcg5.Finish("nDCG@5");
  report.ndcg10 = ndcg10.Finish("nDCG@10");
  return report;
}

std::string EvalReportJson(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["impressions"] = report.impressions;
  j["auc"] = SummaryJson(report.auc);
  j["mrr"] = SummaryJson(report.mrr);
  j["ndcg@5"] = SummaryJson(report.ndcg5);
  j["ndcg@10"] = SummaryJson(report.ndcg10);
  return j.dump(2);
}

void WritePredictionRanks(std::ostream& out,
                          std::span<const ScoredImpression> imps) {
  for (const auto& imp : imps) {
    const auto order = RankOrder(imp.scores);
    std::vector<std::size_t> rank(order.size());
    for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r + 1;
    out << imp.impression_id << " [" << fmt::format("{}", fmt::join(rank, ","))
        << "]\n";
  }
}

void WritePredictionJsonl(std::ostream& out,
                          std::span<const ScoredImpression> imps) {
  for (const auto& imp : imps) {
    nlohmann::ordered_json j;
    j["impression_id"] = imp.impression_id;
    j["scores"] = imp.scores;
    j["labels"] = imp.labels;
    out << j.dump() << '\n';
  }
}

}  // namespace newsrec
