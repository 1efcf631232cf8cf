// src/paillier/paillier.hpp

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

#ifndef VCNORM_PAILLIER_PAILLIER_HPP_
#define VCNORM_PAILLIER_PAILLIER_HPP_

#include <gmp.h>

#include <cstdint>
#include <deque>
#include <string>
#include <utility>
#include <vector>

#include "common/rng.hpp"

namespace vcn {

// RAII wrapper over GMP's mpz_t with just the operations the cryptosystem
// needs.  GMP supplies the arbitrary-precision arithmetic; the scheme logic
// lives in this module.
class Bigint {
 public:
  Bigint() { mpz_init(z_); }
  Bigint(unsigned long v) { mpz_init_set_ui(z_, v); }  // NOLINT(runtime/explicit)
  Bigint(const Bigint &o) { mpz_init_set(z_, o.z_); }
  Bigint(Bigint &&o) noexcept {
    mpz_init(z_);
    mpz_swap(z_, o.z_);
  }
  Bigint &operator=(const Bigint &o) {
    if (this != &o) mpz_set(z_, o.z_);
    return *this;
  }
  Bigint &operator=(Bigint &&o) noexcept {
    mpz_swap(z_, o.z_);
    return *this;
  }
  ~Bigint() { mpz_clear(z_); }

  static Bigint from_decimal(const std::string &s);
  static Bigint from_bytes_be(const uint8_t *data, size_t len);
  // Uniform in [0, 2^bits).
  static Bigint random_bits(size_t bits, Rng &rng);
  // Uniform in [0, bound).
  static Bigint random_below(const Bigint &bound, Rng &rng);

  std::string to_decimal() const;
  std::vector<uint8_t> to_bytes_be() const;
  size_t bit_length() const { return mpz_sizeinbase(z_, 2); }
  bool is_zero() const { return mpz_sgn(z_) == 0; }
  bool is_odd() const { return mpz_odd_p(z_) != 0; }
  uint64_t to_u64() const { return mpz_get_ui(z_); }
  double to_double() const { return mpz_get_d(z_); }

  friend Bigint operator+(const Bigint &a, const Bigint &b);
  friend Bigint operator-(const Bigint &a, const Bigint &b);
  friend Bigint operator*(const Bigint &a, const Bigint &b);
  friend Bigint operator%(const Bigint &a, const Bigint &b);
  friend int cmp(const Bigint &a, const Bigint &b) {
    return mpz_cmp(a.z_, b.z_);
  }
  friend bool operator==(const Bigint &a, const Bigint &b) {
    return cmp(a, b) == 0;
  }
  friend bool operator<(const Bigint &a, const Bigint &b) {
    return cmp(a, b) < 0;
  }

  friend Bigint powm(const Bigint &base, const Bigint &exp, const Bigint &mod);
  friend Bigint invmod(const Bigint &a, const Bigint &mod);  // throws if none
  friend Bigint gcd(const Bigint &a, const Bigint &b);
  friend Bigint lcm(const Bigint &a, const Bigint &b);
  friend Bigint lshift(const Bigint &a, unsigned bits);
  friend Bigint divexact(const Bigint &a, const Bigint &b);
  bool probably_prime(int reps = 40) const {
    return mpz_probab_prime_p(z_, reps) != 0;
  }
  void set_bit(size_t i) { mpz_setbit(z_, i); }

 private:
  mpz_t z_;
};

struct PaillierPublicKey {
  Bigint n;          // modulus, product of two equal-size primes
  Bigint g;          // generator mod n^2 (n + 1 for generated keys)
  Bigint n_squared;
  unsigned key_bits = 0;
  uint64_t key_id = 0;  // FNV-1a of the decimal modulus
};

struct PaillierSecretKey {
  Bigint lambda;  // lcm(p-1, q-1)
  Bigint mu;      // (L(g^lambda mod n^2))^-1 mod n
};

struct PaillierKeypair {
  PaillierPublicKey pk;
  PaillierSecretKey sk;
};

struct Ciphertext {
  Bigint value;  // in [0, n^2)
  uint64_t key_id = 0;
};

// Operation counters for the cost-model assertions.
struct HeOpCounters {
  uint64_t encryptions = 0;
  uint64_t additions = 0;
  uint64_t scalar_muls = 0;
  uint64_t decryptions = 0;
};

// Precomputed encryption randomizers r^n mod n^2.  Filling the pool is
// input-independent precomputation; encryption consumes one entry per call
// and falls back to an inline computation when the pool is empty.
class RandomizerPool {
 public:
  RandomizerPool(const PaillierPublicKey &pk, Rng rng)
      : pk_(pk), rng_(std::move(rng)) {}
  void refill(size_t count);
  Bigint take();
  size_t remaining() const { return pool_.size(); }
  double fill_seconds() const { return fill_seconds_; }

 private:
  const PaillierPublicKey &pk_;
  Rng rng_;
  std::deque<Bigint> pool_;
  double fill_seconds_ = 0.0;
};

// key_bits >= 64 (small sizes are for tests; 3072 is the documented
// production default).  Deterministic for a fixed seed.
PaillierKeypair paillier_keygen(unsigned key_bits, uint64_t seed);

// Test hook: builds a keypair from explicitly supplied primes (e.g. 5, 7).
PaillierKeypair paillier_from_primes(const Bigint &p, const Bigint &q);

Ciphertext encrypt(const PaillierPublicKey &pk, const Bigint &m, Rng &rng,
                   RandomizerPool *pool = nullptr,
                   HeOpCounters *counters = nullptr);
Bigint decrypt(const PaillierKeypair &kp, const Ciphertext &c,
               HeOpCounters *counters = nullptr);

// decrypt(hom_add(E(a), E(b))) = a + b mod n
Ciphertext hom_add(const PaillierPublicKey &pk, const Ciphertext &a,
                   const Ciphertext &b, HeOpCounters *counters = nullptr);
// decrypt(hom_scalar_mul(E(a), k)) = k * a mod n, k in [0, n)
Ciphertext hom_scalar_mul(const PaillierPublicKey &pk, const Ciphertext &c,
                          const Bigint &k, HeOpCounters *counters = nullptr);
// Signed-scalar variant: negative scalars go through a ciphertext inverse so
// the exponent stays |k| instead of n - |k|.
Ciphertext hom_scalar_mul_signed(const PaillierPublicKey &pk,
                                 const Ciphertext &c, bool negative,
                                 const Bigint &magnitude,
                                 HeOpCounters *counters = nullptr);

// Key files: textual, decimal big integers, one labelled field per line.
void save_public_key(const std::string &path, const PaillierPublicKey &pk);
void save_keypair(const std::string &path, const PaillierKeypair &kp);
PaillierPublicKey load_public_key(const std::string &path);
PaillierKeypair load_keypair(const std::string &path);

}  // namespace vcn

#endif  // VCNORM_PAILLIER_PAILLIER_HPP_
