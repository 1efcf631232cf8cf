// src/smpc/shares.cpp

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

#include "smpc/shares.hpp"

#include <cstring>
#include <fstream>

#include "common/container.hpp"
#include "common/error.hpp"

namespace vcn {

SharePair share_bits(const BitVec &x, Rng &rng, uint64_t tag) {
  BooleanShare s0, s1;
  s0.party = 0;
  s1.party = 1;
  s0.tag = s1.tag = tag;
  s0.bits = BitVec::random(x.size(), rng);
  s1.bits = x ^ s0.bits;
  return {std::move(s0), std::move(s1)};
}

BitVec reconstruct(const BooleanShare &s0, const BooleanShare &s1) {
  VCN_CHECK(s0.tag == s1.tag, kProtocol)
      << "share tag mismatch: " << s0.tag << " vs " << s1.tag;
  VCN_CHECK(s0.bits.size() == s1.bits.size(), kDimension)
      << "share length mismatch";
  return s0.bits ^ s1.bits;
}

void rerandomize(BooleanShare *s0, BooleanShare *s1, Rng &rng) {
  VCN_CHECK(s0->tag == s1->tag && s0->bits.size() == s1->bits.size(),
            kProtocol)
      << "rerandomize on mismatched shares";
  BitVec r = BitVec::random(s0->bits.size(), rng);
  s0->bits ^= r;
  s1->bits ^= r;
}

void ShareStore::save(const std::string &path) const {
  auto os = open_out(path);
  os.write("SHR1", 4);
  os.put(1);
  write_be32(os, static_cast<uint32_t>(bit_length));
  write_be32(os, static_cast<uint32_t>(party));
  write_be32(os, static_cast<uint32_t>(shares.size()));
  for (const auto &s : shares) {
    VCN_CHECK(s.bits.size() == bit_length, kDimension)
        << "share length inconsistent with store";
    write_be64(os, s.tag);
    const auto bytes = s.bits.to_bytes();
    os.write(reinterpret_cast<const char *>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
  }
  VCN_CHECK(os.good(), kIo) << "share store write failed: " << path;
}

ShareStore ShareStore::load(const std::string &path) {
  auto is = open_in(path);
  char magic[4];
  is.read(magic, 4);
  VCN_CHECK(is.good() && std::memcmp(magic, "SHR1", 4) == 0, kIo)
      << "bad SHR1 magic in " << path;
  const int version = is.get();
  VCN_CHECK(version == 1, kIo) << "SHR1 version " << version;
  ShareStore store;
  store.bit_length = read_be32(is);
  store.party = static_cast<int>(read_be32(is));
  const uint32_t count = read_be32(is);
  const size_t nbytes = (store.bit_length + 7) / 8;
  std::vector<uint8_t> buf(nbytes);
  for (uint32_t i = 0; i < count; ++i) {
    BooleanShare s;
    s.party = store.party;
    s.tag = read_be64(is);
    is.read(reinterpret_cast<char *>(buf.data()),
            static_cast<std::streamsize>(nbytes));
    VCN_CHECK(is.good(), kIo) << "truncated share record";
    s.bits = BitVec::from_bytes(buf.data(), store.bit_length);
    store.shares.push_back(std::move(s));
  }
  return store;
}

}  // namespace vcn
