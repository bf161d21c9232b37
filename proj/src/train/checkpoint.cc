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

#include "newsrec/train/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "newsrec/errors.h"

namespace newsrec {
namespace {

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

constexpr char kMagic[8] = {'N', 'R', 'C', 'K', 'P', 'T', '\0', '\1'};

class Writer {
 public:
  template <typename T>
  void Put(T value) {
    char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    out_.append(buf, sizeof(T));
  }
  void PutString(const std::string& s) {
    Put<std::uint64_t>(s.size());
    out_ += s;
  }
  void PutStrings(const std::vector<std::string>& list) {
    Put<std::uint64_t>(list.size());
    for (const auto& s : list) PutString(s);
  }
  void PutBytes(const void* data, std::size_t n) {
    out_.append(static_cast<const char*>(data), n);
  }
  std::string& bytes() { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  Reader(const std::string& bytes, std::size_t end) : bytes_(bytes), end_(end) {}

  template <typename T>
  T Get() {
    T value;
    std::memcpy(&value, Take(sizeof(T)), sizeof(T));
    return value;
  }
  std::string GetString() {
    const auto n = Get<std::uint64_t>();
    return std::string(Take(n), n);
  }
  std::vector<std::string> GetStrings() {
    const auto n = Get<std::uint64_t>();
    std::vector<std::string> out;
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(GetString());
    return out;
  }
  const char* Take(std::uint64_t n) {
    if (n > end_ - pos_) throw CheckpointError("checkpoint is truncated");
    const char* p = bytes_.data() + pos_;
    pos_ += n;
    return p;
  }
  std::size_t pos() const { return pos_; }

 private:
  const std::string& bytes_;
  std::size_t end_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string SerializeCheckpoint(const Checkpoint& c) {
  Writer w;
  w.PutBytes(kMagic, sizeof(kMagic));
  w.Put<std::uint32_t>(kCheckpointVersion);
  w.Put<std::uint64_t>(c.config_hash);
  w.Put<std::int32_t>(c.epoch);
  w.Put<std::uint64_t>(c.rng.seed);
  w.Put<std::uint64_t>(c.rng.stream);
  w.Put<std::uint64_t>(c.rng.block);
  w.Put<std::uint32_t>(c.rng.lane);
  w.Put<std::uint64_t>(c.metrics.size());
  for (const auto& [name, value] : c.metrics) {
    w.PutString(name);
    w.Put<double>(value);
  }
  w.PutString(c.config_text);
  w.PutStrings(c.vocabulary);
  w.PutStrings(c.categories);
  w.PutStrings(c.subcategories);
  w.PutStrings(c.users);
  w.Put<std::uint64_t>(c.params.size());
  for (const auto& [name, t] : c.params) {
    w.PutString(name);
    w.Put<std::uint32_t>(static_cast<std::uint32_t>(t.rank()));
    for (const auto d : t.shape()) w.Put<std::int64_t>(d);
    w.Put<std::uint8_t>(t.requires_grad() ? 1 : 0);
    const auto values = t.values();
    w.PutBytes(values.data(), values.size() * sizeof(float));
  }
  w.Put<std::uint64_t>(Fnv1a64(w.bytes()));
  return std::move(w.bytes());
}

Checkpoint ParseCheckpoint(const std::string& bytes) {
  if (bytes.size() < sizeof(kMagic) + sizeof(std::uint64_t) ||
      std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw CheckpointError("not a checkpoint file");
  }
  std::uint32_t version;
  std::memcpy(&version, bytes.data() + sizeof(kMagic), sizeof(version));
  if (version != kCheckpointVersion) {
    throw CheckpointError(fmt::format("unsupported checkpoint version {}", version));
  }
  const std::size_t body = bytes.size() - sizeof(std::uint64_t);
  std::uint64_t stored;
  std::memcpy(&stored, bytes.data() + body, sizeof(stored));
  if (stored != Fnv1a64(std::string_view(bytes.data(), body))) {
    throw CheckpointError("checkpoint checksum mismatch");
  }
  Reader r(bytes, body);
  r.Take(sizeof(kMagic) + sizeof(version));
  Checkpoint c;
  c.config_hash = r.Get<std::uint64_t>();
  c.epoch = r.Get<std::int32_t>();
  c.rng.seed = r.Get<std::uint64_t>();
  c.rng.stream = r.Get<std::uint64_t>();
  c.rng.block = r.Get<std::uint64_t>();
  c.rng.lane = r.Get<std::uint32_t>();
  const auto n_metrics = r.Get<std::uint64_t>();
  for (std::uint64_t i = 0; i < n_metrics; ++i) {
    std::string name = r.GetString();
    c.metrics[name] = r.Get<double>();
  }
  c.config_text = r.GetString();
  c.vocabulary = r.GetStrings();
  c.categories = r.GetStrings();
  c.subcategories = r.GetStrings();
  c.users = r.GetStrings();
  const auto n_params = r.Get<std::uint64_t>();
  for (std::uint64_t i = 0; i < n_params; ++i) {
    const std::string name = r.GetString();
    const auto rank = r.Get<std::uint32_t>();
    if (rank == 0 || rank > 8) {
      throw CheckpointError(fmt::format("bad rank {} for {}", rank, name));
    }
    Shape shape;
    for (std::uint32_t d = 0; d < rank; ++d) {
      const auto dim = r.Get<std::int64_t>();
      if (dim < 1) throw CheckpointError(fmt::format("bad shape for {}", name));
      shape.push_back(dim);
    }
    const bool trainable = r.Get<std::uint8_t>() != 0;
    const std::size_t n = NumElements(shape);
    std::vector<float> values(n);
    std::memcpy(values.data(), r.Take(n * sizeof(float)), n * sizeof(float));
    c.params.Add(name, Tensor::FromValues(std::move(shape), std::move(values)),
                 trainable);
  }
  if (r.pos() != body) throw CheckpointError("trailing bytes in checkpoint");
  return c;
}

void SaveCheckpoint(const std::filesystem::path& path,
                    const Checkpoint& checkpoint) {
  const std::string bytes = SerializeCheckpoint(checkpoint);
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw CheckpointError(fmt::format("cannot write {}", path.string()));
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError(fmt::format("cannot open {}", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return ParseCheckpoint(buf.str());
  } catch (const CheckpointError& e) {
    throw CheckpointError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

}  // namespace newsrec
