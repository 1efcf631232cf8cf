// tests/test_common.cpp

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
#include <sstream>

#include "common/bitvec.hpp"
#include "common/container.hpp"
#include "common/error.hpp"
#include "common/matrix.hpp"
#include "common/rng.hpp"

using namespace vcn;

TEST_CASE("rng determinism and splitting") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng s1 = Rng(42).split(1), s2 = Rng(42).split(2);
  CHECK(s1.next_u64() != s2.next_u64());
}

TEST_CASE("rng gaussian moments") {
  Rng rng(7);
  double sum = 0, sum2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gaussian();
    sum += g;
    sum2 += g * g;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sum2 / n - 1.0) < 0.02);
}

TEST_CASE("rng below is in range and roughly uniform") {
  Rng rng(5);
  size_t buckets[10] = {0};
  for (int i = 0; i < 100000; ++i) {
    const uint64_t v = rng.below(10);
    REQUIRE(v < 10);
    ++buckets[v];
  }
  for (size_t b : buckets) CHECK(std::abs(static_cast<double>(b) - 10000.0) < 500.0);
}

TEST_CASE("bitvec basics") {
  BitVec v(130);
  CHECK(v.size() == 130);
  CHECK(v.popcount() == 0);
  v.set(0, true);
  v.set(64, true);
  v.set(129, true);
  CHECK(v.popcount() == 3);
  CHECK(v.get(64));
  CHECK_FALSE(v.get(63));

  BitVec w = v.flipped();
  CHECK(w.popcount() == 130 - 3);
  CHECK((v & w).popcount() == 0);
  CHECK((v | w).popcount() == 130);
  CHECK((v ^ v).popcount() == 0);
}

TEST_CASE("bitvec byte round trip uses little-endian bit order") {
  // bit i lives at byte i/8, position i%8
  BitVec v(12);
  v.set(0, true);
  v.set(3, true);
  v.set(9, true);
  const auto bytes = v.to_bytes();
  REQUIRE(bytes.size() == 2);
  CHECK(bytes[0] == 0b00001001);
  CHECK(bytes[1] == 0b00000010);
  CHECK(BitVec::from_bytes(bytes.data(), 12) == v);
}

TEST_CASE("bitvec slice append copy_bits") {
  Rng rng(3);
  BitVec v = BitVec::random(257, rng);
  BitVec w = BitVec::random(129, rng);
  BitVec cat = v;
  cat.append(w);
  REQUIRE(cat.size() == 257 + 129);
  CHECK(cat.slice(0, 257) == v);
  CHECK(cat.slice(257, 129) == w);
  for (size_t off : {0ul, 1ul, 63ul, 64ul, 100ul}) {
    BitVec s = cat.slice(off, 130);
    for (size_t i = 0; i < 130; ++i) CHECK(s.get(i) == cat.get(off + i));
  }
}

TEST_CASE("bitvec from_uint to_uint") {
  BitVec v = BitVec::from_uint(0b1011, 6);
  CHECK(v.size() == 6);
  CHECK(v.to_uint() == 0b1011);
  CHECK(v.popcount() == 3);
}

TEST_CASE("matrix multiply and cholesky solve") {
  Matrix a(3, 3);
  // SPD matrix A = L L^T from a simple lower factor
  Matrix l(3, 3);
  l.at(0, 0) = 2;
  l.at(1, 0) = 0.5;
  l.at(1, 1) = 1.5;
  l.at(2, 0) = -0.25;
  l.at(2, 1) = 0.75;
  l.at(2, 2) = 1.0;
  a = l * l.transposed();
  Cholesky chol(a);
  const Vec b{1.0, 2.0, 3.0};
  const Vec x = chol.solve(b);
  const Vec ax = a.apply(x);
  for (size_t i = 0; i < 3; ++i) CHECK(ax[i] == doctest::Approx(b[i]));
  CHECK(chol.log_det() ==
        doctest::Approx(2.0 * (std::log(2) + std::log(1.5) + std::log(1.0))));

  Matrix inv = chol.inverse();
  Matrix prod = a * inv;
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j)
      CHECK(prod.at(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-9));
}

TEST_CASE("cholesky rejects indefinite matrices") {
  Matrix m = Matrix::identity(2);
  m.at(1, 1) = -1.0;
  CHECK_THROWS_AS(Cholesky{m}, Error);
  Matrix zero(2, 2);
  CHECK_THROWS_AS(Cholesky{zero}, Error);
}

TEST_CASE("vcdb container round trip") {
  Matrix m(3, 5);
  Rng rng(11);
  for (auto &v : m.data()) v = rng.gaussian();
  std::stringstream ss;
  write_vcdb(ss, m);
  Matrix r = read_vcdb(ss);
  REQUIRE(r.rows() == 3);
  REQUIRE(r.cols() == 5);
  CHECK(r.data() == m.data());  // bit-exact
}

TEST_CASE("vcdb header layout is big-endian with magic") {
  Matrix m(1, 2);
  m.at(0, 0) = 0.0;
  m.at(0, 1) = 0.0;
  std::stringstream ss;
  write_vcdb(ss, m);
  const std::string s = ss.str();
  REQUIRE(s.size() == 4 + 1 + 4 + 4 + 16);
  CHECK(s.substr(0, 4) == "VCDB");
  CHECK(s[4] == 1);
  CHECK(static_cast<unsigned char>(s[8]) == 1);   // rows BE
  CHECK(static_cast<unsigned char>(s[12]) == 2);  // cols BE
}

TEST_CASE("kv file parsing") {
  std::stringstream ss("a = 1\n# comment\nmode = protected  \n bad line\n");
  auto kv = parse_kv(ss);
  CHECK(kv.at("a") == "1");
  CHECK(kv.at("mode") == "protected");
  CHECK(kv.size() == 2);
}

TEST_CASE("error stream carries code and message") {
  try {
    VCN_THROW(kDimension) << "got " << 3 << " want " << 4;
    FAIL("unreachable");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kDimension);
    CHECK(std::string(e.what()) == "got 3 want 4");
  }
}
