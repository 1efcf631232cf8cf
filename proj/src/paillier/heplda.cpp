// src/paillier/heplda.cpp

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

#include "paillier/heplda.hpp"

#include <cstring>
#include <fstream>

#include "common/container.hpp"
#include "common/error.hpp"

namespace vcn {

uint64_t scoring_form_id(const ScoringForm &form) {
  std::vector<uint8_t> buf;
  auto push = [&buf](const double *p, size_t count) {
    const size_t off = buf.size();
    buf.resize(off + count * 8);
    std::memcpy(buf.data() + off, p, count * 8);
  };
  push(form.q.data().data(), form.q.data().size());
  push(form.p.data().data(), form.p.data().size());
  push(form.c.data(), form.c.size());
  push(&form.k0, 1);
  return fnv1a64(buf.data(), buf.size());
}

ProtectedTemplate protect_reference(const PaillierPublicKey &pk,
                                    const ScoringForm &form, const Vec &x_ref,
                                    unsigned scale_bits, Rng &rng,
                                    RandomizerPool *pool,
                                    HeOpCounters *counters) {
  VCN_CHECK(x_ref.size() == form.dim(), kDimension)
      << "reference dim " << x_ref.size() << " vs form " << form.dim();
  VCN_CHECK(scale_bits >= 1, kInvalidArgument) << "scale_bits";
  // Products live at scale 2s; leave generous integer headroom in n.
  VCN_CHECK(pk.n.bit_length() >= 2 * scale_bits + 32, kOverflow)
      << "scale " << scale_bits << " too large for a " << pk.key_bits
      << "-bit key";

  FixedCodec codec(pk.n);
  ProtectedTemplate tpl;
  tpl.key_id = pk.key_id;
  tpl.form_id = scoring_form_id(form);
  tpl.scale_bits = scale_bits;
  tpl.enc_x.reserve(x_ref.size());
  for (double v : x_ref)
    tpl.enc_x.push_back(
        encrypt(pk, codec.encode(v, scale_bits), rng, pool, counters));
  const double self_quad = quad_form(form.q, x_ref, x_ref) + dot(form.c, x_ref);
  tpl.enc_self_quad =
      encrypt(pk, codec.encode(self_quad, 2 * scale_bits), rng, pool,
              counters);
  return tpl;
}

Ciphertext he_plda_score(const PaillierPublicKey &pk, const ScoringForm &form,
                         const ProtectedTemplate &tpl, const Vec &x_probe,
                         unsigned scale_bits, Rng &rng, RandomizerPool *pool,
                         HeOpCounters *counters) {
  VCN_CHECK(tpl.key_id == pk.key_id, kCrypto) << "template key mismatch";
  VCN_CHECK(tpl.form_id == scoring_form_id(form), kCrypto)
      << "template was enrolled under a different scoring form";
  VCN_CHECK(tpl.scale_bits == scale_bits, kInvalidArgument)
      << "scale mismatch: template " << tpl.scale_bits << ", probe "
      << scale_bits;
  VCN_CHECK(x_probe.size() == form.dim() && tpl.dim() == form.dim(),
            kDimension)
      << "he_plda_score dims";

  FixedCodec codec(pk.n);
  const double probe_term =
      quad_form(form.q, x_probe, x_probe) + dot(form.c, x_probe) + form.k0;
  Ciphertext acc = hom_add(
      pk, tpl.enc_self_quad,
      encrypt(pk, codec.encode(probe_term, 2 * scale_bits), rng, pool,
              counters),
      counters);
  const Vec w = scaled(form.p.apply(x_probe), 2.0);
  for (size_t i = 0; i < w.size(); ++i) {
    const auto s = FixedCodec::encode_signed(w[i], scale_bits);
    acc = hom_add(
        pk, acc,
        hom_scalar_mul_signed(pk, tpl.enc_x[i], s.negative, s.magnitude,
                              counters),
        counters);
  }
  return acc;
}

double decrypt_score(const PaillierKeypair &kp, const Ciphertext &score,
                     unsigned scale_bits, HeOpCounters *counters) {
  FixedCodec codec(kp.pk.n);
  return codec.decode(decrypt(kp, score, counters), 2 * scale_bits);
}

void save_template(const std::string &path, const ProtectedTemplate &tpl) {
  auto os = open_out(path);
  os.write("HETP", 4);
  write_be64(os, tpl.key_id);
  write_be64(os, tpl.form_id);
  write_be32(os, static_cast<uint32_t>(tpl.dim()));
  write_be32(os, tpl.scale_bits);
  auto write_ct = [&os](const Ciphertext &c) {
    const auto bytes = c.value.to_bytes_be();
    write_be32(os, static_cast<uint32_t>(bytes.size()));
    os.write(reinterpret_cast<const char *>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
  };
  for (const auto &c : tpl.enc_x) write_ct(c);
  write_ct(tpl.enc_self_quad);
  VCN_CHECK(os.good(), kIo) << "template write failed: " << path;
}

ProtectedTemplate load_template(const std::string &path) {
  auto is = open_in(path);
  char magic[4];
  is.read(magic, 4);
  VCN_CHECK(is.good() && std::memcmp(magic, "HETP", 4) == 0, kIo)
      << "bad HETP magic in " << path;
  ProtectedTemplate tpl;
  tpl.key_id = read_be64(is);
  tpl.form_id = read_be64(is);
  const uint32_t d = read_be32(is);
  tpl.scale_bits = read_be32(is);
  auto read_ct = [&]() {
    const uint32_t len = read_be32(is);
    std::vector<uint8_t> buf(len);
    is.read(reinterpret_cast<char *>(buf.data()),
            static_cast<std::streamsize>(len));
    VCN_CHECK(is.good(), kIo) << "truncated template " << path;
    return Ciphertext{Bigint::from_bytes_be(buf.data(), buf.size()),
                      tpl.key_id};
  };
  tpl.enc_x.reserve(d);
  for (uint32_t i = 0; i < d; ++i) tpl.enc_x.push_back(read_ct());
  tpl.enc_self_quad = read_ct();
  return tpl;
}

}  // namespace vcn
