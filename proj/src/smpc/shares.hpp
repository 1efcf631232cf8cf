// src/smpc/shares.hpp

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

#ifndef VCNORM_SMPC_SHARES_HPP_
#define VCNORM_SMPC_SHARES_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "common/bitvec.hpp"
#include "common/rng.hpp"

namespace vcn {

// XOR-additive share of a bit vector.  share0 XOR share1 reconstructs the
// secret; each share on its own is marginally uniform.
struct BooleanShare {
  BitVec bits;
  int party = 0;
  uint64_t tag = 0;  // value identifier, equal across the pair
};

using SharePair = std::pair<BooleanShare, BooleanShare>;

// Party 0 receives a uniform random bitstring r, party 1 receives x XOR r.
SharePair share_bits(const BitVec &x, Rng &rng, uint64_t tag = 0);

BitVec reconstruct(const BooleanShare &s0, const BooleanShare &s1);

// Renewability: XORs a fresh random bitstring into both shares.  The
// reconstruction is unchanged and the new shares are independent of the old
// ones given the secret.
void rerandomize(BooleanShare *s0, BooleanShare *s1, Rng &rng);

// Share store, mirroring the BK container: magic "SHR1", version byte, bit
// length, party and record count as 4-byte big-endian, then per record an
// 8-byte tag and the packed share bitmap (little-endian bit order).
struct ShareStore {
  size_t bit_length = 0;
  int party = 0;
  std::vector<BooleanShare> shares;

  void save(const std::string &path) const;
  static ShareStore load(const std::string &path);
};

}  // namespace vcn

#endif  // VCNORM_SMPC_SHARES_HPP_
