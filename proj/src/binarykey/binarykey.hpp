// src/binarykey/binarykey.hpp

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

#ifndef VCNORM_BINARYKEY_BINARYKEY_HPP_
#define VCNORM_BINARYKEY_BINARYKEY_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "common/bitvec.hpp"
#include "binarykey/kbm.hpp"

namespace vcn {

// Pooled per-frame top-M activation statistics over the KBM positions.
// Each frame contributes 1/T to the M positions with the highest component
// log likelihood (ties to the lowest position index), so the counts sum
// to M.
struct ActivationCounts {
  Vec counts;         // length N
  size_t frame_count = 0;
  size_t per_frame_selection = 0;  // M
};

ActivationCounts frame_activations(const Kbm &kbm, const Matrix &frames,
                                   size_t per_frame_selection);

// Fixed-length bit vector with exactly K set bits: the K positions with the
// largest pooled statistics, ties to the lowest position index.
struct BinaryKey {
  BitVec bits;
  size_t set_bits = 0;  // K

  size_t size() const { return bits.size(); }
};

BinaryKey extract_bk(const ActivationCounts &counts, size_t k);

// Convenience: frames -> activations -> binary key.
BinaryKey extract_bk(const Kbm &kbm, const Matrix &frames,
                     size_t per_frame_selection, size_t k);

// popcount(a AND b); the plaintext oracle for the secure pruning circuit.
size_t bk_similarity(const BinaryKey &a, const BinaryKey &b);

// BK store: magic "BKDB", version byte 0x01, N, K and record count as
// 4-byte big-endian unsigned, then per record an 8-byte sample-id hash
// (FNV-1a, big-endian) followed by ceil(N/8) bytes of little-endian-bit-order
// packed bitmap.
struct BkRecord {
  std::string sample_id;  // hash is derived; id kept alongside in an index
  uint64_t id_hash = 0;
  BinaryKey key;
};

class BkStore {
 public:
  BkStore() = default;
  BkStore(size_t n, size_t k) : n_(n), k_(k) {}

  size_t dimension() const { return n_; }
  size_t set_bits() const { return k_; }
  size_t size() const { return records_.size(); }
  void add(const std::string &sample_id, const BinaryKey &key);
  const BkRecord &record(size_t i) const { return records_[i]; }

  void save(const std::string &path) const;
  static BkStore load(const std::string &path);

 private:
  size_t n_ = 0, k_ = 0;
  std::vector<BkRecord> records_;
};

}  // namespace vcn

#endif  // VCNORM_BINARYKEY_BINARYKEY_HPP_
