// src/paillier/paillier.cpp

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

#include "paillier/paillier.hpp"

#include <chrono>
#include <fstream>
#include <map>

#include "common/container.hpp"
#include "common/error.hpp"

namespace vcn {

Bigint Bigint::from_decimal(const std::string &s) {
  Bigint b;
  VCN_CHECK(mpz_set_str(b.z_, s.c_str(), 10) == 0, kInvalidArgument)
      << "bad decimal integer: " << s;
  return b;
}

Bigint Bigint::from_bytes_be(const uint8_t *data, size_t len) {
  Bigint b;
  if (len) mpz_import(b.z_, len, 1, 1, 1, 0, data);
  return b;
}

Bigint Bigint::random_bits(size_t bits, Rng &rng) {
  const size_t nbytes = (bits + 7) / 8;
  auto buf = rng.bytes(nbytes);
  if (bits % 8) buf[0] &= static_cast<uint8_t>(0xff >> (8 - bits % 8));
  return from_bytes_be(buf.data(), buf.size());
}

Bigint Bigint::random_below(const Bigint &bound, Rng &rng) {
  VCN_CHECK(!bound.is_zero(), kInvalidArgument) << "zero bound";
  const size_t bits = bound.bit_length();
  while (true) {
    Bigint candidate = random_bits(bits, rng);
    if (candidate < bound) return candidate;
  }
}

std::string Bigint::to_decimal() const {
  char *s = mpz_get_str(nullptr, 10, z_);
  std::string out(s);
  void (*freefunc)(void *, size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefunc);
  freefunc(s, out.size() + 1);
  return out;
}

std::vector<uint8_t> Bigint::to_bytes_be() const {
  if (is_zero()) return {0};
  size_t count = 0;
  const size_t len = (bit_length() + 7) / 8;
  std::vector<uint8_t> out(len);
  mpz_export(out.data(), &count, 1, 1, 1, 0, z_);
  out.resize(count);
  return out;
}

Bigint operator+(const Bigint &a, const Bigint &b) {
  Bigint r;
  mpz_add(r.z_, a.z_, b.z_);
  return r;
}

Bigint operator-(const Bigint &a, const Bigint &b) {
  Bigint r;
  mpz_sub(r.z_, a.z_, b.z_);
  return r;
}

Bigint operator*(const Bigint &a, const Bigint &b) {
  Bigint r;
  mpz_mul(r.z_, a.z_, b.z_);
  return r;
}

Bigint operator%(const Bigint &a, const Bigint &b) {
  Bigint r;
  mpz_mod(r.z_, a.z_, b.z_);
  return r;
}

Bigint powm(const Bigint &base, const Bigint &exp, const Bigint &mod) {
  Bigint r;
  mpz_powm(r.z_, base.z_, exp.z_, mod.z_);
  return r;
}

Bigint invmod(const Bigint &a, const Bigint &mod) {
  Bigint r;
  VCN_CHECK(mpz_invert(r.z_, a.z_, mod.z_) != 0, kCrypto)
      << "no modular inverse";
  return r;
}

Bigint gcd(const Bigint &a, const Bigint &b) {
  Bigint r;
  mpz_gcd(r.z_, a.z_, b.z_);
  return r;
}

Bigint lcm(const Bigint &a, const Bigint &b) {
  Bigint r;
  mpz_lcm(r.z_, a.z_, b.z_);
  return r;
}

Bigint lshift(const Bigint &a, unsigned bits) {
  Bigint r;
  mpz_mul_2exp(r.z_, a.z_, bits);
  return r;
}

Bigint divexact(const Bigint &a, const Bigint &b) {
  Bigint r;
  mpz_divexact(r.z_, a.z_, b.z_);
  return r;
}

namespace {

// L(u) = (u - 1) / n, defined on u = 1 mod n.
Bigint paillier_l(const Bigint &u, const Bigint &n) {
  return divexact(u - Bigint(1), n);
}

Bigint random_prime(size_t bits, Rng &rng) {
  for (int attempts = 0; attempts < 100000; ++attempts) {
    Bigint c = Bigint::random_bits(bits, rng);
    c.set_bit(0);         // odd
    c.set_bit(bits - 1);  // full bit length
    c.set_bit(bits - 2);  // product of two such primes has exactly 2*bits
    if (c.probably_prime()) return c;
  }
  VCN_THROW(kCrypto) << "prime generation failed after bounded retries";
}

uint64_t derive_key_id(const Bigint &n) { return fnv1a64(n.to_decimal()); }

PaillierKeypair assemble(const Bigint &p, const Bigint &q,
                         unsigned declared_bits) {
  PaillierKeypair kp;
  kp.pk.n = p * q;
  kp.pk.n_squared = kp.pk.n * kp.pk.n;
  kp.pk.g = kp.pk.n + Bigint(1);
  kp.pk.key_bits =
      declared_bits ? declared_bits : static_cast<unsigned>(kp.pk.n.bit_length());
  kp.pk.key_id = derive_key_id(kp.pk.n);
  kp.sk.lambda = lcm(p - Bigint(1), q - Bigint(1));
  const Bigint l = paillier_l(powm(kp.pk.g, kp.sk.lambda, kp.pk.n_squared),
                              kp.pk.n);
  kp.sk.mu = invmod(l, kp.pk.n);
  return kp;
}

}  // namespace

PaillierKeypair paillier_keygen(unsigned key_bits, uint64_t seed) {
  VCN_CHECK(key_bits >= 64, kInvalidArgument)
      << "key_bits " << key_bits << " below the 64-bit test minimum";
  Rng rng = Rng(seed).split(0x7061696cULL);
  const size_t half = key_bits / 2;
  for (int tries = 0; tries < 100; ++tries) {
    Bigint p = random_prime(half, rng);
    Bigint q = random_prime(key_bits - half, rng);
    if (p == q) continue;
    Bigint n = p * q;
    if (n.bit_length() != key_bits) continue;
    // Decryption needs gcd(n, (p-1)(q-1)) = 1.
    if (!(gcd(n, (p - Bigint(1)) * (q - Bigint(1))) == Bigint(1))) continue;
    return assemble(p, q, key_bits);
  }
  VCN_THROW(kCrypto) << "keygen failed for " << key_bits << " bits";
}

PaillierKeypair paillier_from_primes(const Bigint &p, const Bigint &q) {
  VCN_CHECK(!(p == q), kInvalidArgument) << "p == q";
  VCN_CHECK(gcd(p * q, (p - Bigint(1)) * (q - Bigint(1))) == Bigint(1),
            kInvalidArgument)
      << "primes violate gcd(n, phi) = 1";
  return assemble(p, q, 0);
}

void RandomizerPool::refill(size_t count) {
  const auto t0 = std::chrono::steady_clock::now();
  for (size_t i = 0; i < count; ++i) {
    Bigint r = Bigint::random_below(pk_.n, rng_);
    if (r.is_zero() || !(gcd(r, pk_.n) == Bigint(1))) {
      --i;
      continue;
    }
    pool_.push_back(powm(r, pk_.n, pk_.n_squared));
  }
  fill_seconds_ += std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
}

Bigint RandomizerPool::take() {
  if (pool_.empty()) refill(1);
  Bigint r = std::move(pool_.front());
  pool_.pop_front();
  return r;
}

Ciphertext encrypt(const PaillierPublicKey &pk, const Bigint &m, Rng &rng,
                   RandomizerPool *pool, HeOpCounters *counters) {
  VCN_CHECK(!(m < Bigint(0)) && m < pk.n, kInvalidArgument)
      << "plaintext out of range";
  Bigint r_n;
  if (pool) {
    r_n = pool->take();
  } else {
    Bigint r = Bigint::random_below(pk.n, rng);
    while (r.is_zero() || !(gcd(r, pk.n) == Bigint(1)))
      r = Bigint::random_below(pk.n, rng);
    r_n = powm(r, pk.n, pk.n_squared);
  }
  // g = n + 1 makes g^m = 1 + m n (mod n^2); fall back to powm otherwise.
  Bigint g_m = pk.g == pk.n + Bigint(1)
                   ? (Bigint(1) + m * pk.n) % pk.n_squared
                   : powm(pk.g, m, pk.n_squared);
  if (counters) ++counters->encryptions;
  return Ciphertext{(g_m * r_n) % pk.n_squared, pk.key_id};
}

Bigint decrypt(const PaillierKeypair &kp, const Ciphertext &c,
               HeOpCounters *counters) {
  VCN_CHECK(c.key_id == kp.pk.key_id, kCrypto) << "ciphertext key mismatch";
  if (counters) ++counters->decryptions;
  const Bigint l = paillier_l(powm(c.value, kp.sk.lambda, kp.pk.n_squared),
                              kp.pk.n);
  return (l * kp.sk.mu) % kp.pk.n;
}

Ciphertext hom_add(const PaillierPublicKey &pk, const Ciphertext &a,
                   const Ciphertext &b, HeOpCounters *counters) {
  VCN_CHECK(a.key_id == pk.key_id && b.key_id == pk.key_id, kCrypto)
      << "hom_add key mismatch";
  if (counters) ++counters->additions;
  return Ciphertext{(a.value * b.value) % pk.n_squared, pk.key_id};
}

Ciphertext hom_scalar_mul(const PaillierPublicKey &pk, const Ciphertext &c,
                          const Bigint &k, HeOpCounters *counters) {
  VCN_CHECK(c.key_id == pk.key_id, kCrypto) << "hom_scalar_mul key mismatch";
  if (counters) ++counters->scalar_muls;
  return Ciphertext{powm(c.value, k, pk.n_squared), pk.key_id};
}

Ciphertext hom_scalar_mul_signed(const PaillierPublicKey &pk,
                                 const Ciphertext &c, bool negative,
                                 const Bigint &magnitude,
                                 HeOpCounters *counters) {
  VCN_CHECK(c.key_id == pk.key_id, kCrypto) << "hom_scalar_mul key mismatch";
  if (counters) ++counters->scalar_muls;
  const Bigint base =
      negative ? invmod(c.value, pk.n_squared) : c.value;
  return Ciphertext{powm(base, magnitude, pk.n_squared), pk.key_id};
}

namespace {

void write_key_fields(std::ostream &os, const PaillierPublicKey &pk) {
  os << "key_bits: " << pk.key_bits << "\n";
  os << "key_id: " << pk.key_id << "\n";
  os << "n: " << pk.n.to_decimal() << "\n";
  os << "g: " << pk.g.to_decimal() << "\n";
}

std::map<std::string, std::string> read_labelled(std::istream &is) {
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(is, line)) {
    const auto pos = line.find(':');
    if (pos == std::string::npos) continue;
    std::string key = line.substr(0, pos);
    std::string val = line.substr(pos + 1);
    while (!val.empty() && val.front() == ' ') val.erase(val.begin());
    out[key] = val;
  }
  return out;
}

PaillierPublicKey pk_from_fields(
    const std::map<std::string, std::string> &f) {
  PaillierPublicKey pk;
  pk.key_bits = static_cast<unsigned>(std::stoul(f.at("key_bits")));
  pk.key_id = std::stoull(f.at("key_id"));
  pk.n = Bigint::from_decimal(f.at("n"));
  pk.g = Bigint::from_decimal(f.at("g"));
  pk.n_squared = pk.n * pk.n;
  VCN_CHECK(pk.key_id == derive_key_id(pk.n), kCrypto)
      << "key id does not match modulus";
  return pk;
}

}  // namespace

void save_public_key(const std::string &path, const PaillierPublicKey &pk) {
  auto os = open_out(path, false);
  os << "vcnorm-paillier public v1\n";
  write_key_fields(os, pk);
}

void save_keypair(const std::string &path, const PaillierKeypair &kp) {
  auto os = open_out(path, false);
  os << "vcnorm-paillier secret v1\n";
  write_key_fields(os, kp.pk);
  os << "lambda: " << kp.sk.lambda.to_decimal() << "\n";
  os << "mu: " << kp.sk.mu.to_decimal() << "\n";
}

PaillierPublicKey load_public_key(const std::string &path) {
  auto is = open_in(path, false);
  std::string header;
  std::getline(is, header);
  VCN_CHECK(header.rfind("vcnorm-paillier", 0) == 0, kIo)
      << "bad key file " << path;
  return pk_from_fields(read_labelled(is));
}

PaillierKeypair load_keypair(const std::string &path) {
  auto is = open_in(path, false);
  std::string header;
  std::getline(is, header);
  VCN_CHECK(header.rfind("vcnorm-paillier secret", 0) == 0, kIo)
      << "not a secret key file: " << path;
  auto fields = read_labelled(is);
  PaillierKeypair kp;
  kp.pk = pk_from_fields(fields);
  kp.sk.lambda = Bigint::from_decimal(fields.at("lambda"));
  kp.sk.mu = Bigint::from_decimal(fields.at("mu"));
  return kp;
}

}  // namespace vcn
