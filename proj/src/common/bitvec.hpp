// src/common/bitvec.hpp

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

#ifndef VCNORM_COMMON_BITVEC_HPP_
#define VCNORM_COMMON_BITVEC_HPP_

#include <cstdint>
#include <cstddef>
#include <vector>

#include "common/rng.hpp"

namespace vcn {

// Packed bit vector, LSB-first inside 64-bit words.  Serialized byte order is
// little-endian-bit-order: global bit i lives at byte i/8, bit position i%8.
// Bits past size() are kept zero so word-wise ops and popcount stay exact.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(size_t nbits) : n_(nbits), w_((nbits + 63) / 64, 0) {}

  static BitVec from_bytes(const uint8_t *data, size_t nbits);
  static BitVec from_bools(const std::vector<bool> &bits);
  static BitVec random(size_t nbits, Rng &rng);
  // Low `nbits` of `value`, bit 0 = LSB.
  static BitVec from_uint(uint64_t value, size_t nbits);

  size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }

  bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(size_t i, bool v) {
    const uint64_t m = uint64_t{1} << (i & 63);
    if (v)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }

  BitVec &operator^=(const BitVec &o);
  BitVec &operator&=(const BitVec &o);
  BitVec &operator|=(const BitVec &o);
  friend BitVec operator^(BitVec a, const BitVec &b) { return a ^= b; }
  friend BitVec operator&(BitVec a, const BitVec &b) { return a &= b; }
  friend BitVec operator|(BitVec a, const BitVec &b) { return a |= b; }
  bool operator==(const BitVec &o) const { return n_ == o.n_ && w_ == o.w_; }

  // Bitwise complement of the low size() bits.
  BitVec flipped() const;
  void flip_all();

  size_t popcount() const;
  bool any() const;

  // Deterministic uniform refill from rng (used by sharing / rerandomize).
  void randomize(Rng &rng);

  // Appends `len` bits of src starting at src_off.  Returns old size.
  size_t append(const BitVec &src, size_t src_off, size_t len);
  size_t append(const BitVec &src) { return append(src, 0, src.size()); }
  void append_bit(bool b);

  BitVec slice(size_t off, size_t len) const;
  // Low 64 bits as an integer (size() must be <= 64).
  uint64_t to_uint() const;

  std::vector<uint8_t> to_bytes() const;  // ceil(size()/8) bytes

 private:
  void mask_tail();
  friend void copy_bits(BitVec &dst, size_t dst_off, const BitVec &src,
                        size_t src_off, size_t len);

  size_t n_ = 0;
  std::vector<uint64_t> w_;
};

// Blit `len` bits from src[src_off..] into dst[dst_off..].  Ranges must be in
// bounds; overlapping self-copy is not supported.
void copy_bits(BitVec &dst, size_t dst_off, const BitVec &src, size_t src_off,
               size_t len);

}  // namespace vcn

#endif  // VCNORM_COMMON_BITVEC_HPP_
