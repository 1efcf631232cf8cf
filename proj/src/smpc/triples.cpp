// src/smpc/triples.cpp

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

#include "smpc/triples.hpp"

#include <cstring>
#include <fstream>

#include "common/container.hpp"
#include "common/error.hpp"

namespace vcn {

std::pair<TripleBlock, TripleBlock> deal_triples(size_t count, Rng &rng) {
  TripleBlock t0, t1;
  t0.a = BitVec::random(count, rng);
  t0.b = BitVec::random(count, rng);
  t0.c = BitVec::random(count, rng);
  t1.a = BitVec::random(count, rng);
  t1.b = BitVec::random(count, rng);
  // c1 = ((a0^a1) & (b0^b1)) ^ c0
  t1.c = ((t0.a ^ t1.a) & (t0.b ^ t1.b)) ^ t0.c;
  return {std::move(t0), std::move(t1)};
}

std::pair<TripleBlock, TripleBlock> deal_zero_triples(size_t count) {
  TripleBlock t0, t1;
  t0.a = t0.b = t0.c = BitVec(count);
  t1 = t0;
  return {std::move(t0), std::move(t1)};
}

TriplePool::Slice TriplePool::take(size_t count) {
  VCN_CHECK(cursor_ + count <= block_.size(), kProtocol)
      << "triple pool exhausted: need " << count << ", have "
      << (block_.size() - cursor_);
  Slice s;
  s.a = block_.a.slice(cursor_, count);
  s.b = block_.b.slice(cursor_, count);
  s.c = block_.c.slice(cursor_, count);
  cursor_ += count;
  return s;
}

void TriplePool::add_block(const TripleBlock &more) {
  block_.a.append(more.a);
  block_.b.append(more.b);
  block_.c.append(more.c);
}

void save_triples(const std::string &path, const TripleBlock &block,
                  int party) {
  auto os = open_out(path);
  os.write("TRP1", 4);
  os.put(1);
  write_be32(os, static_cast<uint32_t>(block.size()));
  write_be32(os, static_cast<uint32_t>(party));
  for (const auto *v : {&block.a, &block.b, &block.c}) {
    write_be64(os, fnv1a64(v == &block.a ? "a" : (v == &block.b ? "b" : "c")));
    const auto bytes = v->to_bytes();
    os.write(reinterpret_cast<const char *>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
  }
  VCN_CHECK(os.good(), kIo) << "triple store write failed: " << path;
}

TripleBlock load_triples(const std::string &path, int *party_out) {
  auto is = open_in(path);
  char magic[4];
  is.read(magic, 4);
  VCN_CHECK(is.good() && std::memcmp(magic, "TRP1", 4) == 0, kIo)
      << "bad TRP1 magic in " << path;
  const int version = is.get();
  VCN_CHECK(version == 1, kIo) << "TRP1 version " << version;
  const uint32_t count = read_be32(is);
  const int party = static_cast<int>(read_be32(is));
  if (party_out) *party_out = party;
  TripleBlock block;
  const size_t nbytes = (count + 7) / 8;
  std::vector<uint8_t> buf(nbytes);
  for (auto *v : {&block.a, &block.b, &block.c}) {
    (void)read_be64(is);  // label hash
    is.read(reinterpret_cast<char *>(buf.data()),
            static_cast<std::streamsize>(nbytes));
    VCN_CHECK(is.good(), kIo) << "truncated triple store";
    *v = BitVec::from_bytes(buf.data(), count);
  }
  return block;
}

std::vector<uint8_t> encode_triple_block(const TripleBlock &block) {
  std::vector<uint8_t> payload;
  put_be32(payload, static_cast<uint32_t>(block.size()));
  for (const auto *v : {&block.a, &block.b, &block.c}) {
    const auto bytes = v->to_bytes();
    payload.insert(payload.end(), bytes.begin(), bytes.end());
  }
  return payload;
}

TripleBlock decode_triple_block(const std::vector<uint8_t> &payload) {
  VCN_CHECK(payload.size() >= 4, kProtocol) << "short triple block";
  const uint32_t count = get_be32(payload.data());
  const size_t nbytes = (count + 7) / 8;
  VCN_CHECK(payload.size() == 4 + 3 * nbytes, kProtocol)
      << "triple block size mismatch";
  TripleBlock block;
  block.a = BitVec::from_bytes(payload.data() + 4, count);
  block.b = BitVec::from_bytes(payload.data() + 4 + nbytes, count);
  block.c = BitVec::from_bytes(payload.data() + 4 + 2 * nbytes, count);
  return block;
}

}  // namespace vcn
