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

#ifndef NEWSREC_TENSOR_RNG_H_
#define NEWSREC_TENSOR_RNG_H_

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>

namespace newsrec {

// Serializable position of an Rng. Two generators with equal state produce
// equal streams.
struct RngState {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t block = 0;  // next Philox counter block to generate
  std::uint32_t lane = 4;   // lanes already consumed from the current block

  friend bool operator==(const RngState&, const RngState&) = default;
};

// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as
// easy as 1, 2, 3"). Exposed for known-answer tests.
std::array<std::uint32_t, 4> Philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// Counter-based generator. The 64-bit seed is the Philox key; the 128-bit
// counter is (block, stream). Every draw is a pure function of
// (seed, stream, position), so streams are reproducible across platforms.
//
// Floating-point draws are built from integer bits only, except normal()
// which goes through std::log/std::cos.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);
  static Rng FromState(const RngState& state);

  // Independent generator for a named purpose, e.g. Derive(seed, "dropout", 3).
  static Rng Derive(std::uint64_t seed, std::string_view tag,
                    std::uint64_t index = 0);

  RngState state() const;

  std::uint32_t NextU32();
  std::uint64_t NextU64();
  // Uniform in [0, 1) with 53 random bits.
  double Uniform();
  // Uniform integer in [0, n). n must be positive.
  std::uint64_t UniformInt(std::uint64_t n);
  double Normal(double mean = 0.0, double stddev = 1.0);

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(UniformInt(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  void Refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  std::uint32_t lane_ = 4;
};

// FNV-1a, 64 bit.
std::uint64_t Fnv1a64(std::string_view data,
                      std::uint64_t basis = 0xcbf29ce484222325ULL);

}  // namespace newsrec

#endif  // NEWSREC_TENSOR_RNG_H_
