// src/common/bitvec.cpp

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

#include "common/bitvec.hpp"

#include <bit>

#include "common/error.hpp"

namespace vcn {

void BitVec::mask_tail() {
  const size_t rem = n_ & 63;
  if (rem && !w_.empty()) w_.back() &= (~uint64_t{0}) >> (64 - rem);
}

BitVec BitVec::from_bytes(const uint8_t *data, size_t nbits) {
  BitVec v(nbits);
  const size_t nbytes = (nbits + 7) / 8;
  for (size_t i = 0; i < nbytes; ++i)
    v.w_[i >> 3] |= uint64_t{data[i]} << (8 * (i & 7));
  v.mask_tail();
  return v;
}

BitVec BitVec::from_bools(const std::vector<bool> &bits) {
  BitVec v(bits.size());
  for (size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) v.set(i, true);
  return v;
}

BitVec BitVec::random(size_t nbits, Rng &rng) {
  BitVec v(nbits);
  v.randomize(rng);
  return v;
}

BitVec BitVec::from_uint(uint64_t value, size_t nbits) {
  VCN_CHECK(nbits <= 64, kInvalidArgument) << "from_uint width " << nbits;
  BitVec v(nbits);
  if (nbits) {
    v.w_[0] = value;
    v.mask_tail();
  }
  return v;
}

BitVec &BitVec::operator^=(const BitVec &o) {
  VCN_CHECK(n_ == o.n_, kDimension) << "bitvec xor " << n_ << " vs " << o.n_;
  for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
  return *this;
}

BitVec &BitVec::operator&=(const BitVec &o) {
  VCN_CHECK(n_ == o.n_, kDimension) << "bitvec and " << n_ << " vs " << o.n_;
  for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
  return *this;
}

BitVec &BitVec::operator|=(const BitVec &o) {
  VCN_CHECK(n_ == o.n_, kDimension) << "bitvec or " << n_ << " vs " << o.n_;
  for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
  return *this;
}

BitVec BitVec::flipped() const {
  BitVec v(*this);
  v.flip_all();
  return v;
}

void BitVec::flip_all() {
  for (auto &w : w_) w = ~w;
  mask_tail();
}

size_t BitVec::popcount() const {
  size_t c = 0;
  for (uint64_t w : w_) c += static_cast<size_t>(std::popcount(w));
  return c;
}

bool BitVec::any() const {
  for (uint64_t w : w_)
    if (w) return true;
  return false;
}

void BitVec::randomize(Rng &rng) {
  for (auto &w : w_) w = rng.next_u64();
  mask_tail();
}

size_t BitVec::append(const BitVec &src, size_t src_off, size_t len) {
  const size_t old = n_;
  n_ += len;
  w_.resize((n_ + 63) / 64, 0);
  copy_bits(*this, old, src, src_off, len);
  return old;
}

void BitVec::append_bit(bool b) {
  n_ += 1;
  w_.resize((n_ + 63) / 64, 0);
  if (b) set(n_ - 1, true);
}

BitVec BitVec::slice(size_t off, size_t len) const {
  VCN_CHECK(off + len <= n_, kDimension)
      << "slice [" << off << "," << off + len << ") of " << n_;
  BitVec v(len);
  copy_bits(v, 0, *this, off, len);
  return v;
}

uint64_t BitVec::to_uint() const {
  VCN_CHECK(n_ <= 64, kInvalidArgument) << "to_uint of width " << n_;
  return w_.empty() ? 0 : w_[0];
}

std::vector<uint8_t> BitVec::to_bytes() const {
  std::vector<uint8_t> out((n_ + 7) / 8);
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<uint8_t>(w_[i >> 3] >> (8 * (i & 7)));
  return out;
}

void copy_bits(BitVec &dst, size_t dst_off, const BitVec &src, size_t src_off,
               size_t len) {
  VCN_CHECK(src_off + len <= src.size() && dst_off + len <= dst.size(),
            kDimension)
      << "copy_bits out of range";
  // Word-at-a-time: read up to 64 source bits (possibly straddling two
  // words) and merge them into the destination.
  size_t done = 0;
  while (done < len) {
    const size_t chunk = std::min<size_t>(64, len - done);
    const size_t s = src_off + done;
    const size_t sword = s >> 6, sshift = s & 63;
    uint64_t bits = src.w_[sword] >> sshift;
    if (sshift && sword + 1 < src.w_.size())
      bits |= src.w_[sword + 1] << (64 - sshift);
    if (chunk < 64) bits &= (~uint64_t{0}) >> (64 - chunk);

    const size_t d = dst_off + done;
    const size_t dword = d >> 6, dshift = d & 63;
    const uint64_t mask =
        chunk == 64 ? ~uint64_t{0} : ((~uint64_t{0}) >> (64 - chunk));
    dst.w_[dword] = (dst.w_[dword] & ~(mask << dshift)) | (bits << dshift);
    if (dshift && dshift + chunk > 64) {
      const size_t spill = dshift + chunk - 64;
      const uint64_t hi_mask = (~uint64_t{0}) >> (64 - spill);
      dst.w_[dword + 1] =
          (dst.w_[dword + 1] & ~hi_mask) | (bits >> (64 - dshift));
    }
    done += chunk;
  }
}

}  // namespace vcn
