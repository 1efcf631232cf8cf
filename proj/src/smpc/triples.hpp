// src/smpc/triples.hpp

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

#ifndef VCNORM_SMPC_TRIPLES_HPP_
#define VCNORM_SMPC_TRIPLES_HPP_

#include <cstdint>
#include <string>
#include <utility>

#include "common/bitvec.hpp"
#include "common/rng.hpp"

namespace vcn {

// One party's block of Beaver triple bits: (a0^a1) AND (b0^b1) = c0^c1.
struct TripleBlock {
  BitVec a, b, c;

  size_t size() const { return a.size(); }
};

// Correlated randomness from the trusted dealer role.  The dealer never sees
// online messages; it only emits these input-independent blocks.
std::pair<TripleBlock, TripleBlock> deal_triples(size_t count, Rng &rng);

// Test hook: all-zero randomness, so reconstructed a = b = 0 forces c = 0.
std::pair<TripleBlock, TripleBlock> deal_zero_triples(size_t count);

// Sequential consumer; each triple is used at most once and consumption past
// the dealt count is a protocol error.
class TriplePool {
 public:
  TriplePool() = default;
  explicit TriplePool(TripleBlock block) : block_(std::move(block)) {}

  struct Slice {
    BitVec a, b, c;
  };
  Slice take(size_t count);
  size_t remaining() const { return block_.size() - cursor_; }
  size_t consumed() const { return cursor_; }
  void add_block(const TripleBlock &more);

 private:
  TripleBlock block_;
  size_t cursor_ = 0;
};

// Triple store file, mirroring the BK container: magic "TRP1", version byte,
// bit count and party as 4-byte big-endian, then the three packed bitmaps
// (a, b, c), each prefixed with an 8-byte label hash.
void save_triples(const std::string &path, const TripleBlock &block,
                  int party);
TripleBlock load_triples(const std::string &path, int *party_out = nullptr);

// Wire payload for TRIPLE_BLOCK frames (dealer -> server).
std::vector<uint8_t> encode_triple_block(const TripleBlock &block);
TripleBlock decode_triple_block(const std::vector<uint8_t> &payload);

}  // namespace vcn

#endif  // VCNORM_SMPC_TRIPLES_HPP_
