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

#ifndef NEWSREC_ERRORS_H_
#define NEWSREC_ERRORS_H_

#include <stdexcept>
#include <string>

namespace newsrec {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tensor shapes do not line up for an operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Index outside the valid range of a table or list.
class IndexError : public Error {
 public:
  using Error::Error;
};

// Invalid hyper-parameter or configuration value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A caller broke a documented precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Softmax requested over a fully masked input.
class EmptyAttentionError : public Error {
 public:
  using Error::Error;
};

// Unreadable or malformed input data.
class DataError : public Error {
 public:
  using Error::Error;
};

// NaN or Inf detected during training or evaluation.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Checkpoint is corrupt or incompatible with the requested configuration.
class CheckpointError : public Error {
 public:
  using Error::Error;
};

// A function that must be deterministic returned different values.
class FlakinessError : public Error {
 public:
  using Error::Error;
};

// No impression could be scored for some metric.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

}  // namespace newsrec

#endif  // NEWSREC_ERRORS_H_
