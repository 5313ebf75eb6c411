// Copyright 2026 The ldpmean Authors
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

#ifndef LDPMEAN_RNG_H_
#define LDPMEAN_RNG_H_

#include <cstdint>
#include <optional>
#include <random>

namespace ldpmean {

// Mixes two 64-bit words into a stream identifier (SplitMix64 finalizer
// applied to a combination of both). Used to derive per-trial and per-user
// streams from indices.
uint64_t DeriveStreamId(uint64_t a, uint64_t b);

// Deterministic random source identified by (seed, stream_id).
//
// Stream derivation rule: the engine is std::mt19937_64 seeded through
// std::seed_seq with the four 32-bit halves of seed and stream_id, low word
// first. Both the engine and std::seed_seq are fully specified by the
// standard, so a given (seed, stream_id) produces the same sequence on every
// conforming platform. Distributions are implemented here rather than taken
// from <random> for the same reason.
//
// A stream is not thread-safe; use one stream per thread.
class RngStream {
 public:
  RngStream(uint64_t seed, uint64_t stream_id);

  uint64_t seed() const { return seed_; }
  uint64_t stream_id() const { return stream_id_; }

  // Independent child stream with the same seed and
  // stream_id = DeriveStreamId(stream_id(), child).
  RngStream Derive(uint64_t child) const;

  uint64_t NextU64() { return engine_(); }

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double UniformOpen();

  // True with probability `p` (p >= 1 always true, p <= 0 always false).
  bool Bernoulli(double p);

  // Standard normal draw (Marsaglia polar method).
  double Normal();

 private:
  uint64_t seed_;
  uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

}  // namespace ldpmean

#endif  // LDPMEAN_RNG_H_
