// tests/test_paillier.cpp

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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <set>

#include "common/error.hpp"
#include "paillier/fixedpoint.hpp"
#include "paillier/heplda.hpp"
#include "paillier/paillier.hpp"

using namespace vcn;

namespace {

Vec random_unit(size_t d, Rng &rng) {
  Vec v(d);
  for (auto &x : v) x = rng.gaussian();
  const double n = norm2(v);
  for (auto &x : v) x /= n;
  return v;
}

PldaModel toy_model(size_t d, Rng &rng) {
  Matrix r(d, d);
  for (auto &v : r.data()) v = rng.gaussian();
  PldaModel m;
  m.mean.resize(d);
  for (auto &v : m.mean) v = 0.1 * rng.gaussian();
  m.between = r * r.transposed();
  for (size_t i = 0; i < d; ++i) m.between.at(i, i) += 0.2;
  m.between.symmetrize();
  m.within = Matrix::identity(d, 0.8);
  return m;
}

}  // namespace

TEST_CASE("textbook keypair from toy primes") {
  PaillierKeypair kp = paillier_from_primes(Bigint(5), Bigint(7));
  CHECK(kp.pk.n == Bigint(35));
  CHECK(kp.pk.g == Bigint(36));
  CHECK(kp.sk.lambda == Bigint(12));
  Rng rng(1);
  // brute-force roundtrip over the whole plaintext space
  for (unsigned long m = 0; m < 35; ++m) {
    Ciphertext c = encrypt(kp.pk, Bigint(m), rng);
    CHECK(decrypt(kp, c) == Bigint(m));
  }
  Ciphertext c12 = encrypt(kp.pk, Bigint(12), rng);
  CHECK(decrypt(kp, c12) == Bigint(12));
}

TEST_CASE("keygen determinism and structure") {
  PaillierKeypair a = paillier_keygen(128, 42);
  PaillierKeypair b = paillier_keygen(128, 42);
  CHECK(a.pk.n == b.pk.n);
  CHECK(a.pk.key_id == b.pk.key_id);
  PaillierKeypair c = paillier_keygen(128, 43);
  CHECK_FALSE(a.pk.n == c.pk.n);
  CHECK(a.pk.n.bit_length() == 128);
  CHECK_THROWS_AS(paillier_keygen(32, 1), Error);
}

TEST_CASE("production-size keys round trip") {
  PaillierKeypair kp = paillier_keygen(3072, 21);
  CHECK(kp.pk.n.bit_length() == 3072);
  Rng rng(8);
  Bigint m = Bigint::random_below(kp.pk.n, rng);
  CHECK(decrypt(kp, encrypt(kp.pk, m, rng)) == m);
}

TEST_CASE("roundtrip and boundaries at 512 bits") {
  PaillierKeypair kp = paillier_keygen(512, 7);
  Rng rng(2);
  CHECK(decrypt(kp, encrypt(kp.pk, Bigint(0), rng)) == Bigint(0));
  const Bigint top = kp.pk.n - Bigint(1);
  CHECK(decrypt(kp, encrypt(kp.pk, top, rng)) == top);
  for (int i = 0; i < 50; ++i) {
    Bigint m = Bigint::random_below(kp.pk.n, rng);
    CHECK(decrypt(kp, encrypt(kp.pk, m, rng)) == m);
  }
  CHECK_THROWS_AS(encrypt(kp.pk, kp.pk.n, rng), Error);
}

TEST_CASE("encryption is randomised") {
  PaillierKeypair kp = paillier_keygen(128, 5);
  Rng rng(3);
  Ciphertext a = encrypt(kp.pk, Bigint(9), rng);
  Ciphertext b = encrypt(kp.pk, Bigint(9), rng);
  CHECK_FALSE(a.value == b.value);
}

TEST_CASE("re-encryption collisions are absent over many draws") {
  PaillierKeypair kp = paillier_keygen(128, 11);
  Rng rng(4);
  std::set<std::string> seen;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i)
    seen.insert(encrypt(kp.pk, Bigint(1), rng).value.to_decimal());
  CHECK(seen.size() == static_cast<size_t>(draws));
}

TEST_CASE("homomorphic identities") {
  PaillierKeypair kp = paillier_keygen(512, 13);
  Rng rng(5);
  SUBCASE("small cases") {
    Ciphertext a = encrypt(kp.pk, Bigint(3), rng);
    Ciphertext b = encrypt(kp.pk, Bigint(4), rng);
    CHECK(decrypt(kp, hom_add(kp.pk, a, b)) == Bigint(7));
    CHECK(decrypt(kp, hom_scalar_mul(kp.pk, a, Bigint(0))) == Bigint(0));
    CHECK(decrypt(kp, hom_scalar_mul(kp.pk, a, Bigint(5))) == Bigint(15));
  }
  SUBCASE("random mod-n identities") {
    for (int i = 0; i < 100; ++i) {
      Bigint a = Bigint::random_below(kp.pk.n, rng);
      Bigint b = Bigint::random_below(kp.pk.n, rng);
      Bigint k = Bigint::random_below(kp.pk.n, rng);
      Ciphertext ea = encrypt(kp.pk, a, rng);
      Ciphertext eb = encrypt(kp.pk, b, rng);
      CHECK(decrypt(kp, hom_add(kp.pk, ea, eb)) == (a + b) % kp.pk.n);
      CHECK(decrypt(kp, hom_scalar_mul(kp.pk, ea, k)) == (k * a) % kp.pk.n);
    }
  }
  SUBCASE("signed scalar path") {
    Ciphertext e = encrypt(kp.pk, Bigint(6), rng);
    Bigint r = decrypt(kp, hom_scalar_mul_signed(kp.pk, e, true, Bigint(2)));
    CHECK(r == kp.pk.n - Bigint(12));  // -12 mod n
  }
  SUBCASE("key mismatch is rejected") {
    PaillierKeypair other = paillier_keygen(512, 14);
    Ciphertext a = encrypt(kp.pk, Bigint(1), rng);
    Ciphertext b = encrypt(other.pk, Bigint(1), rng);
    CHECK_THROWS_AS(hom_add(kp.pk, a, b), Error);
    CHECK_THROWS_AS(decrypt(other, a), Error);
  }
}

TEST_CASE("randomizer pool feeds encryption") {
  PaillierKeypair kp = paillier_keygen(128, 15);
  RandomizerPool pool(kp.pk, Rng(99));
  pool.refill(8);
  CHECK(pool.remaining() == 8);
  CHECK(pool.fill_seconds() > 0.0);
  Rng rng(6);
  Ciphertext c = encrypt(kp.pk, Bigint(21), rng, &pool);
  CHECK(pool.remaining() == 7);
  CHECK(decrypt(kp, c) == Bigint(21));
}

TEST_CASE("key file round trips") {
  namespace fs = std::filesystem;
  PaillierKeypair kp = paillier_keygen(128, 17);
  const auto pub = fs::temp_directory_path() / "vcn_test.pub";
  const auto sec = fs::temp_directory_path() / "vcn_test.key";
  save_public_key(pub.string(), kp.pk);
  save_keypair(sec.string(), kp);
  PaillierPublicKey rpk = load_public_key(pub.string());
  CHECK(rpk.n == kp.pk.n);
  CHECK(rpk.g == kp.pk.g);
  CHECK(rpk.key_id == kp.pk.key_id);
  PaillierKeypair rkp = load_keypair(sec.string());
  CHECK(rkp.sk.lambda == kp.sk.lambda);
  CHECK(rkp.sk.mu == kp.sk.mu);
  // a public file does not load as a secret key
  CHECK_THROWS_AS(load_keypair(pub.string()), Error);
  fs::remove(pub);
  fs::remove(sec);
}

TEST_CASE("fixed point codec") {
  PaillierKeypair kp = paillier_keygen(128, 19);
  FixedCodec codec(kp.pk.n);
  SUBCASE("zero and negative mapping") {
    CHECK(codec.encode(0.0, 8) == Bigint(0));
    CHECK(codec.encode(-1.0, 4) == kp.pk.n - Bigint(16));
    CHECK(codec.decode(kp.pk.n - Bigint(16), 4) == doctest::Approx(-1.0));
  }
  SUBCASE("roundtrip accuracy at scale 24") {
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
      const double x = (rng.next_double() * 2.0 - 1.0) * 100.0;
      const double back = codec.decode(codec.encode(x, 24), 24);
      CHECK(std::abs(back - x) <= std::ldexp(1.0, -24));
    }
  }
  SUBCASE("overflow detection") {
    FixedCodec tiny(Bigint(35));
    CHECK_THROWS_AS(tiny.encode(5.0, 2), Error);  // round(20)*2 >= 35
    CHECK(tiny.encode(4.0, 2) == Bigint(16));
  }
}

TEST_CASE("protected template structure and file round trip") {
  Rng rng(23);
  PaillierKeypair kp = paillier_keygen(512, 29);
  PldaModel m = toy_model(4, rng);
  ScoringForm f = scoring_form(m);
  const unsigned scale = 24;
  Vec x_ref = random_unit(4, rng);
  ProtectedTemplate tpl = protect_reference(kp.pk, f, x_ref, scale, rng);

  // coordinates decrypt to their exact encodings
  FixedCodec codec(kp.pk.n);
  for (size_t i = 0; i < 4; ++i)
    CHECK(decrypt(kp, tpl.enc_x[i]) == codec.encode(x_ref[i], scale));

  // zero reference has a zero self term
  const Vec zero(4, 0.0);
  ProtectedTemplate z = protect_reference(kp.pk, f, zero, scale, rng);
  CHECK(decrypt(kp, z.enc_self_quad) == Bigint(0));

  namespace fs = std::filesystem;
  const auto path = fs::temp_directory_path() / "vcn_tpl.hetp";
  save_template(path.string(), tpl);
  ProtectedTemplate r = load_template(path.string());
  CHECK(r.key_id == tpl.key_id);
  CHECK(r.form_id == tpl.form_id);
  CHECK(r.scale_bits == tpl.scale_bits);
  REQUIRE(r.dim() == tpl.dim());
  for (size_t i = 0; i < r.dim(); ++i)
    CHECK(r.enc_x[i].value == tpl.enc_x[i].value);
  CHECK(r.enc_self_quad.value == tpl.enc_self_quad.value);
  fs::remove(path);
}

TEST_CASE("he_plda_score matches the plaintext path") {
  Rng rng(31);
  PaillierKeypair kp = paillier_keygen(512, 37);

  SUBCASE("D=1 analytic case") {
    PldaModel m;
    m.mean = {0.0};
    m.between = Matrix::identity(1);
    m.within = Matrix::identity(1);
    ScoringForm f = scoring_form(m);
    const Vec zero{0.0};
    ProtectedTemplate tpl = protect_reference(kp.pk, f, zero, 24, rng);
    Ciphertext enc = he_plda_score(kp.pk, f, tpl, zero, 24, rng);
    CHECK(decrypt_score(kp, enc, 24) ==
          doctest::Approx(0.5 * std::log(4.0 / 3.0)).epsilon(1e-3));
  }

  SUBCASE("zero form decrypts to zero") {
    ScoringForm f;
    f.q = Matrix(3, 3);
    f.p = Matrix(3, 3);
    f.c = Vec(3, 0.0);
    f.k0 = 0.0;
    const Vec zero(3, 0.0);
    ProtectedTemplate tpl = protect_reference(kp.pk, f, zero, 24, rng);
    Ciphertext enc = he_plda_score(kp.pk, f, tpl, zero, 24, rng);
    CHECK(decrypt_score(kp, enc, 24) == 0.0);
  }

  SUBCASE("random trials at D=32 stay within 1e-3") {
    PldaModel m = toy_model(32, rng);
    ScoringForm f = scoring_form(m);
    RandomizerPool pool(kp.pk, Rng(123));
    for (int i = 0; i < 25; ++i) {
      Vec ref = random_unit(32, rng), probe = random_unit(32, rng);
      ProtectedTemplate tpl =
          protect_reference(kp.pk, f, ref, 24, rng, &pool);
      Ciphertext enc = he_plda_score(kp.pk, f, tpl, probe, 24, rng, &pool);
      const double he = decrypt_score(kp, enc, 24);
      const double plain = plda_score(f, ref, probe);
      CHECK(std::abs(he - plain) <= 1e-3);
    }
  }

  SUBCASE("form mismatch is rejected") {
    PldaModel m1 = toy_model(4, rng), m2 = toy_model(4, rng);
    ScoringForm f1 = scoring_form(m1), f2 = scoring_form(m2);
    Vec ref = random_unit(4, rng);
    ProtectedTemplate tpl = protect_reference(kp.pk, f1, ref, 24, rng);
    CHECK_THROWS_AS(he_plda_score(kp.pk, f2, tpl, ref, 24, rng), Error);
  }
}

TEST_CASE("he op counters follow the cost model") {
  Rng rng(41);
  PaillierKeypair kp = paillier_keygen(512, 43);
  const size_t d = 8;
  PldaModel m = toy_model(d, rng);
  ScoringForm f = scoring_form(m);
  Vec ref = random_unit(d, rng), probe = random_unit(d, rng);
  HeOpCounters enroll_ops;
  ProtectedTemplate tpl =
      protect_reference(kp.pk, f, ref, 24, rng, nullptr, &enroll_ops);
  CHECK(enroll_ops.encryptions == d + 1);

  HeOpCounters score_ops;
  Ciphertext enc =
      he_plda_score(kp.pk, f, tpl, probe, 24, rng, nullptr, &score_ops);
  CHECK(score_ops.scalar_muls == d);
  CHECK(score_ops.additions == d + 1);
  CHECK(score_ops.encryptions == 1);
  (void)enc;
}
