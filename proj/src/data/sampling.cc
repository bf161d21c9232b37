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

#include "newsrec/data/sampling.h"

#include <algorithm>
#include <numeric>

#include "newsrec/errors.h"

namespace newsrec {

std::vector<TrainSample> SampleNegatives(const Impression& impression, int k,
                                         Rng& rng, SamplingStats* stats) {
  if (k < 1) throw ConfigError("negative sampling ratio must be >= 1");
  std::vector<std::int32_t> positives, negatives;
  for (const auto& c : impression.candidates) {
    (c.label ? positives : negatives).push_back(c.news);
  }
  if (positives.empty()) {
    if (stats) ++stats->impressions_without_positive;
    return {};
  }
  if (negatives.empty()) {
    if (stats) ++stats->impressions_without_negative;
    return {};
  }
  std::vector<TrainSample> out;
  out.reserve(positives.size());
  const auto kk = static_cast<std::size_t>(k);
  for (const std::int32_t pos : positives) {
    TrainSample s;
    s.user_id = impression.user_id;
    s.history = impression.history;
    s.positive = pos;
    if (negatives.size() >= kk) {
      // Partial Fisher-Yates: the first k slots become a uniform draw.
      std::vector<std::int32_t> pool = negatives;
      for (std::size_t i = 0; i < kk; ++i) {
        const std::size_t j = i + rng.UniformInt(pool.size() - i);
        std::swap(pool[i], pool[j]);
      }
      s.negatives.assign(pool.begin(), pool.begin() + k);
    } else {
      for (std::size_t i = 0; i < kk; ++i) {
        s.negatives.push_back(negatives[rng.UniformInt(negatives.size())]);
      }
      if (stats) ++stats->samples_with_replacement;
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<TrainSample> SampleNegatives(const std::vector<Impression>& rows,
                                         int k, Rng& rng,
                                         SamplingStats* stats) {
  std::vector<TrainSample> out;
  for (const auto& imp : rows) {
    auto samples = SampleNegatives(imp, k, rng, stats);
    std::move(samples.begin(), samples.end(), std::back_inserter(out));
  }
  return out;
}

std::vector<Batch> BuildBatches(const std::vector<TrainSample>& samples,
                                std::size_t batch_size, Rng& rng) {
  if (batch_size < 1) throw ConfigError("batch size must be >= 1");
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.Shuffle(std::span<std::size_t>(order));

  std::vector<Batch> batches;
  for (std::size_t start = 0; start < order.size(); start += batch_size) {
    Batch b;
    const std::size_t end = std::min(order.size(), start + batch_size);
    b.sample_indices.assign(order.begin() + start, order.begin() + end);
    std::size_t width = 0;
    for (const auto i : b.sample_indices) {
      width = std::max(width, samples[i].history.size());
    }
    b.history_width = static_cast<std::int64_t>(width);
    b.history.assign(b.size() * width, 0);
    b.history_mask.assign(b.size() * width, 0);
    for (std::size_t r = 0; r < b.size(); ++r) {
      const auto& h = samples[b.sample_indices[r]].history;
      for (std::size_t j = 0; j < h.size(); ++j) {
        b.history[r * width + j] = h[j];
        b.history_mask[r * width + j] = 1;
      }
    }
    batches.push_back(std::move(b));
  }
  return batches;
}

}  // namespace newsrec
