// src/binarykey/binarykey.cpp

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

#include "binarykey/binarykey.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <numeric>

#include "common/container.hpp"
#include "common/error.hpp"

namespace vcn {

ActivationCounts frame_activations(const Kbm &kbm, const Matrix &frames,
                                   size_t per_frame_selection) {
  const size_t n = kbm.size();
  const size_t t = frames.rows();
  VCN_CHECK(per_frame_selection >= 1 && per_frame_selection <= n,
            kInvalidArgument)
      << "M=" << per_frame_selection << " outside [1, " << n << "]";
  VCN_CHECK(frames.cols() == kbm.feature_dim(), kDimension)
      << "frame dim " << frames.cols() << " vs KBM dim " << kbm.feature_dim();

  ActivationCounts out;
  out.counts.assign(n, 0.0);
  out.frame_count = t;
  out.per_frame_selection = per_frame_selection;

  const double unit = 1.0 / static_cast<double>(t);
  Vec ll(n);
  std::vector<uint32_t> order(n);
  for (size_t fr = 0; fr < t; ++fr) {
    const double *x = frames.row(fr);
    for (size_t p = 0; p < n; ++p) ll[p] = kbm.position_log_density(p, x);
    std::iota(order.begin(), order.end(), 0u);
    // Top-M by likelihood, ties broken towards the lowest position index.
    std::partial_sort(order.begin(), order.begin() + per_frame_selection,
                      order.end(), [&](uint32_t a, uint32_t b) {
                        if (ll[a] != ll[b]) return ll[a] > ll[b];
                        return a < b;
                      });
    for (size_t m = 0; m < per_frame_selection; ++m)
      out.counts[order[m]] += unit;
  }
  return out;
}

BinaryKey extract_bk(const ActivationCounts &counts, size_t k) {
  const size_t n = counts.counts.size();
  VCN_CHECK(k >= 1 && k <= n, kInvalidArgument)
      << "K=" << k << " outside [1, " << n << "]";
  std::vector<uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::partial_sort(order.begin(), order.begin() + k, order.end(),
                    [&](uint32_t a, uint32_t b) {
                      if (counts.counts[a] != counts.counts[b])
                        return counts.counts[a] > counts.counts[b];
                      return a < b;
                    });
  BinaryKey bk;
  bk.bits = BitVec(n);
  bk.set_bits = k;
  for (size_t i = 0; i < k; ++i) bk.bits.set(order[i], true);
  return bk;
}

BinaryKey extract_bk(const Kbm &kbm, const Matrix &frames,
                     size_t per_frame_selection, size_t k) {
  return extract_bk(frame_activations(kbm, frames, per_frame_selection), k);
}

size_t bk_similarity(const BinaryKey &a, const BinaryKey &b) {
  VCN_CHECK(a.size() == b.size(), kDimension)
      << "BK length " << a.size() << " vs " << b.size();
  return (a.bits & b.bits).popcount();
}

void BkStore::add(const std::string &sample_id, const BinaryKey &key) {
  VCN_CHECK(key.size() == n_ && key.set_bits == k_, kDimension)
      << "BK does not match store (N=" << n_ << ", K=" << k_ << ")";
  records_.push_back({sample_id, fnv1a64(sample_id), key});
}

void BkStore::save(const std::string &path) const {
  auto os = open_out(path);
  os.write("BKDB", 4);
  os.put(1);
  write_be32(os, static_cast<uint32_t>(n_));
  write_be32(os, static_cast<uint32_t>(k_));
  write_be32(os, static_cast<uint32_t>(records_.size()));
  for (const auto &r : records_) {
    write_be64(os, r.id_hash);
    const auto bytes = r.key.bits.to_bytes();
    os.write(reinterpret_cast<const char *>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
  }
  VCN_CHECK(os.good(), kIo) << "BKDB write failed: " << path;
}

BkStore BkStore::load(const std::string &path) {
  auto is = open_in(path);
  char magic[4];
  is.read(magic, 4);
  VCN_CHECK(is.good() && std::memcmp(magic, "BKDB", 4) == 0, kIo)
      << "bad BKDB magic in " << path;
  const int version = is.get();
  VCN_CHECK(version == 1, kIo) << "BKDB version " << version;
  const uint32_t n = read_be32(is);
  const uint32_t k = read_be32(is);
  const uint32_t count = read_be32(is);
  BkStore store(n, k);
  const size_t nbytes = (n + 7) / 8;
  std::vector<uint8_t> buf(nbytes);
  for (uint32_t i = 0; i < count; ++i) {
    BkRecord r;
    r.id_hash = read_be64(is);
    is.read(reinterpret_cast<char *>(buf.data()),
            static_cast<std::streamsize>(nbytes));
    VCN_CHECK(is.good(), kIo) << "truncated BKDB record";
    r.key.bits = BitVec::from_bytes(buf.data(), n);
    r.key.set_bits = k;
    store.records_.push_back(std::move(r));
  }
  return store;
}

}  // namespace vcn
