// src/paillier/fixedpoint.cpp

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

#include "paillier/fixedpoint.hpp"

#include <cmath>

#include "common/error.hpp"

namespace vcn {

namespace {

// round(|x| * 2^s) as a Bigint; exact for |x * 2^s| < 2^63, best-effort
// double precision beyond (values that large are far outside the ranges the
// comparison pipeline produces).
Bigint scaled_magnitude(double ax, unsigned scale_bits) {
  const double y = std::ldexp(ax, static_cast<int>(scale_bits));
  VCN_CHECK(std::isfinite(y), kOverflow) << "fixed-point encode of " << ax;
  if (y < 9.0e18) {
    return Bigint(static_cast<unsigned long>(std::llround(y)));
  }
  Bigint out;
  // Integer part of y is exact in the double; fractional part is already
  // beyond the representable precision at this magnitude.
  const double rounded = std::nearbyint(y);
  const int exp_bits = std::ilogb(rounded);
  (void)exp_bits;
  // Build via decimal round-trip to avoid mpz_set_d truncation ambiguity.
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.0f", rounded);
  return Bigint::from_decimal(buf);
}

}  // namespace

FixedCodec::FixedCodec(Bigint modulus) : n_(std::move(modulus)) {
  VCN_CHECK(Bigint(2) < n_, kInvalidArgument) << "modulus too small";
  // floor(n / 2); raws strictly above it decode negative.
  half_n_ = divexact(n_.is_odd() ? n_ - Bigint(1) : n_, Bigint(2));
}

Bigint FixedCodec::encode(double x, unsigned scale_bits) const {
  VCN_CHECK(std::isfinite(x), kInvalidArgument) << "non-finite value";
  const bool neg = x < 0.0;
  Bigint mag = scaled_magnitude(std::abs(x), scale_bits);
  // |round(x * 2^s)| must stay below n / 2 for the sign to be recoverable.
  VCN_CHECK(mag + mag < n_, kOverflow)
      << "fixed-point overflow at scale " << scale_bits;
  if (!neg || mag.is_zero()) return mag;
  return n_ - mag;
}

double FixedCodec::decode(const Bigint &raw, unsigned scale_bits) const {
  VCN_CHECK(!(raw < Bigint(0)) && raw < n_, kInvalidArgument)
      << "raw value out of range";
  if (half_n_ < raw) {
    const Bigint mag = n_ - raw;
    return -std::ldexp(mag.to_double(), -static_cast<int>(scale_bits));
  }
  return std::ldexp(raw.to_double(), -static_cast<int>(scale_bits));
}

FixedCodec::SignedScalar FixedCodec::encode_signed(double x,
                                                   unsigned scale_bits) {
  VCN_CHECK(std::isfinite(x), kInvalidArgument) << "non-finite value";
  SignedScalar s;
  s.negative = x < 0.0;
  s.magnitude = scaled_magnitude(std::abs(x), scale_bits);
  if (s.magnitude.is_zero()) s.negative = false;
  return s;
}

}  // namespace vcn
