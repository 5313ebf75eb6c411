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

#include "ldpmean/rng.h"

#include <cmath>

namespace ldpmean {
namespace {

uint64_t SplitMix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::mt19937_64 SeedEngine(uint64_t seed, uint64_t stream_id) {
  std::seed_seq seq{static_cast<uint32_t>(seed),
                    static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(stream_id),
                    static_cast<uint32_t>(stream_id >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

uint64_t DeriveStreamId(uint64_t a, uint64_t b) {
  return SplitMix64(SplitMix64(a) ^ (b + 0x632be59bd9b4e019ULL));
}

RngStream::RngStream(uint64_t seed, uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(SeedEngine(seed, stream_id)) {}

RngStream RngStream::Derive(uint64_t child) const {
  return RngStream(seed_, DeriveStreamId(stream_id_, child));
}

double RngStream::UniformOpen() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

bool RngStream::Bernoulli(double p) {
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  return UniformOpen() < p;
}

double RngStream::Normal() {
  if (spare_normal_.has_value()) {
    const double out = *spare_normal_;
    spare_normal_.reset();
    return out;
  }
  double u, v, s;
  do {
    u = 2.0 * UniformOpen() - 1.0;
    v = 2.0 * UniformOpen() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * scale;
  return u * scale;
}

}  // namespace ldpmean
