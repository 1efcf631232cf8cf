// src/common/rng.hpp

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

#ifndef VCNORM_COMMON_RNG_HPP_
#define VCNORM_COMMON_RNG_HPP_

#include <cstdint>
#include <cstddef>
#include <vector>

namespace vcn {

// Deterministic generator (xoshiro256** seeded through SplitMix64).
// Every stochastic component in the project draws from one of these so that
// a fixed seed replays bit-identically; split() derives independent streams
// for per-party / per-role randomness.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t next_u64();
  // Uniform in [0, bound), bound > 0. Rejection sampled, exactly uniform.
  uint64_t below(uint64_t bound);
  // Uniform double in [0, 1) with 53 bits of precision.
  double next_double();
  // Standard normal (Box-Muller; caches the second variate).
  double gaussian();
  bool next_bit() { return (next_u64() >> 63) != 0; }
  void fill_bytes(uint8_t *dst, size_t len);
  std::vector<uint8_t> bytes(size_t len);

  // Independent stream derived from this generator's seed lineage.
  Rng split(uint64_t stream_id) const;

 private:
  uint64_t s_[4];
  uint64_t lineage_;
  double cached_gauss_ = 0.0;
  bool has_cached_gauss_ = false;
};

}  // namespace vcn

#endif  // VCNORM_COMMON_RNG_HPP_
