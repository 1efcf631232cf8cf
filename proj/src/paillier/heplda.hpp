// src/paillier/heplda.hpp

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

#ifndef VCNORM_PAILLIER_HEPLDA_HPP_
#define VCNORM_PAILLIER_HEPLDA_HPP_

#include <string>
#include <vector>

#include "paillier/fixedpoint.hpp"
#include "paillier/paillier.hpp"
#include "plda/plda.hpp"

namespace vcn {

// Homomorphically encrypted reference: coordinate-wise encryptions of the
// enrolled embedding at scale s plus the reference's self term
// x'Qx + c'x, computed in plaintext at enrollment time and stored encrypted
// at scale 2s (an additively homomorphic scheme cannot square ciphertexts).
struct ProtectedTemplate {
  std::vector<Ciphertext> enc_x;  // D coordinates at scale s
  Ciphertext enc_self_quad;       // scale 2s
  uint64_t key_id = 0;
  uint64_t form_id = 0;
  unsigned scale_bits = 0;

  size_t dim() const { return enc_x.size(); }
};

uint64_t scoring_form_id(const ScoringForm &form);

ProtectedTemplate protect_reference(const PaillierPublicKey &pk,
                                    const ScoringForm &form, const Vec &x_ref,
                                    unsigned scale_bits, Rng &rng,
                                    RandomizerPool *pool = nullptr,
                                    HeOpCounters *counters = nullptr);

// Encrypted LLR at scale 2s:
//   enc_self_quad (+) E(probe self term + k0) (+) sum_i enc_x_i ^ w_i
// with w_i = encode(2 (P x_probe)_i, s).  Exactly D scalar multiplications,
// D+1 homomorphic additions and 1 encryption.
Ciphertext he_plda_score(const PaillierPublicKey &pk, const ScoringForm &form,
                         const ProtectedTemplate &tpl, const Vec &x_probe,
                         unsigned scale_bits, Rng &rng,
                         RandomizerPool *pool = nullptr,
                         HeOpCounters *counters = nullptr);

// Decrypt + fixed-point decode of an encrypted score.
double decrypt_score(const PaillierKeypair &kp, const Ciphertext &score,
                     unsigned scale_bits, HeOpCounters *counters = nullptr);

// Template file: "HETP" magic, key_id and form_id (8-byte big-endian each),
// D and scale as 4-byte big-endian, then D+1 ciphertexts (enc_x then
// enc_self_quad) as 4-byte big-endian length-prefixed big-endian byte
// strings.
void save_template(const std::string &path, const ProtectedTemplate &tpl);
ProtectedTemplate load_template(const std::string &path);

}  // namespace vcn

#endif  // VCNORM_PAILLIER_HEPLDA_HPP_
