// src/common/rng.cpp

// Copyright 2026  the vcnorm authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "common/rng.hpp"

#include <cmath>

namespace vcn {

namespace {

inline uint64_t splitmix64(uint64_t &x) {
  uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(uint64_t seed) : lineage_(seed) {
  uint64_t x = seed;
  for (int i = 0; i < 4; ++i) s_[i] = splitmix64(x);
}

uint64_t Rng::next_u64() {
  const uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

uint64_t Rng::below(uint64_t bound) {
  // Rejection sampling over the largest multiple of bound.
  const uint64_t limit = bound * ((~uint64_t{0}) / bound);
  uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return v % bound;
}

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_cached_gauss_) {
    has_cached_gauss_ = false;
    return cached_gauss_;
  }
  double u1;
  do {
    u1 = next_double();
  } while (u1 <= 0.0);
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  cached_gauss_ = r * std::sin(theta);
  has_cached_gauss_ = true;
  return r * std::cos(theta);
}

void Rng::fill_bytes(uint8_t *dst, size_t len) {
  size_t i = 0;
  while (i + 8 <= len) {
    uint64_t v = next_u64();
    for (int b = 0; b < 8; ++b) dst[i + b] = static_cast<uint8_t>(v >> (8 * b));
    i += 8;
  }
  if (i < len) {
    uint64_t v = next_u64();
    for (; i < len; ++i) {
      dst[i] = static_cast<uint8_t>(v);
      v >>= 8;
    }
  }
}

std::vector<uint8_t> Rng::bytes(size_t len) {
  std::vector<uint8_t> out(len);
  if (len) fill_bytes(out.data(), len);
  return out;
}

Rng Rng::split(uint64_t stream_id) const {
  uint64_t x = lineage_ ^ (0x632be59bd9b4e019ULL * (stream_id + 1));
  return Rng(splitmix64(x));
}

}  // namespace vcn
