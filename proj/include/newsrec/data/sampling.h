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

#ifndef NEWSREC_DATA_SAMPLING_H_
#define NEWSREC_DATA_SAMPLING_H_

#include <cstdint>
#include <vector>

#include "newsrec/data/mind.h"
#include "newsrec/tensor/ops.h"
#include "newsrec/tensor/rng.h"

namespace newsrec {

struct TrainSample {
  std::int32_t user_id = Impression::kUnknownUser;
  std::vector<std::int32_t> history;
  std::int32_t positive = 0;
  std::vector<std::int32_t> negatives;  // K entries
};

struct SamplingStats {
  std::size_t impressions_without_positive = 0;
  std::size_t impressions_without_negative = 0;
  std::size_t samples_with_replacement = 0;
};

// One sample per clicked candidate, paired with K unclicked candidates of the
// same impression: drawn without replacement when at least K exist, with
// replacement otherwise. Impressions lacking a positive or a negative yield
// nothing and are counted.
std::vector<TrainSample> SampleNegatives(const Impression& impression, int k,
                                         Rng& rng,
                                         SamplingStats* stats = nullptr);

std::vector<TrainSample> SampleNegatives(const std::vector<Impression>& rows,
                                         int k, Rng& rng,
                                         SamplingStats* stats = nullptr);

// Histories of a batch padded to the longest one. Row i of `history` and
// `history_mask` belongs to samples[sample_indices[i]].
struct Batch {
  std::vector<std::size_t> sample_indices;
  std::int64_t history_width = 0;
  std::vector<std::int32_t> history;  // rows x history_width, 0-padded
  Mask history_mask;                  // rows x history_width

  std::size_t size() const { return sample_indices.size(); }
};

// Shuffles sample order with `rng` and cuts consecutive batches; the last
// batch may be short.
std::vector<Batch> BuildBatches(const std::vector<TrainSample>& samples,
                                std::size_t batch_size, Rng& rng);

}  // namespace newsrec

#endif  // NEWSREC_DATA_SAMPLING_H_
