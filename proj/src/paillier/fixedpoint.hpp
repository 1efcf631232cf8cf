// src/paillier/fixedpoint.hpp

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

#ifndef VCNORM_PAILLIER_FIXEDPOINT_HPP_
#define VCNORM_PAILLIER_FIXEDPOINT_HPP_

#include "paillier/paillier.hpp"

namespace vcn {

// Two's-complement-style real-to-integer mapping into [0, n): raw values
// above n/2 are read as negative.  encode rounds x * 2^scale to the nearest
// integer, so decode(encode(x)) = round(x * 2^s) / 2^s; values with
// |x| >= n / 2^(s+1) overflow.
class FixedCodec {
 public:
  explicit FixedCodec(Bigint modulus);

  Bigint encode(double x, unsigned scale_bits) const;
  double decode(const Bigint &raw, unsigned scale_bits) const;

  // Signed split for the scalar-multiplication fast path.
  struct SignedScalar {
    bool negative = false;
    Bigint magnitude;
  };
  static SignedScalar encode_signed(double x, unsigned scale_bits);

  const Bigint &modulus() const { return n_; }

 private:
  Bigint n_;
  Bigint half_n_;  // threshold between positive and negative raws
};

}  // namespace vcn

#endif  // VCNORM_PAILLIER_FIXEDPOINT_HPP_
