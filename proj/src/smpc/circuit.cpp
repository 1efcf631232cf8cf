// src/smpc/circuit.cpp

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

#include "smpc/circuit.hpp"

#include "common/error.hpp"

namespace vcn {

PhasePlan &PhasePlan::operator+=(const PhasePlan &o) {
  and_gates += o.and_gates;
  rounds += o.rounds;
  payload_bytes += o.payload_bytes;
  frames += o.frames;
  return *this;
}

unsigned integer_width(uint64_t max_value) {
  unsigned w = 1;
  while ((max_value >> w) != 0) ++w;
  return w;
}

ColumnOps column_layer_ops(size_t bits, bool all_lower_settled) {
  ColumnOps ops;
  ops.full_adders = bits / 3;
  ops.half_adder = (bits == 2 && all_lower_settled);
  return ops;
}

namespace {
inline uint64_t and_round_payload(uint64_t gates) { return (2 * gates + 7) / 8; }
}  // namespace

PhasePlan plan_and_batch(uint64_t gates) {
  PhasePlan p;
  p.and_gates = gates;
  p.rounds = 1;
  p.frames = 1;
  p.payload_bytes = and_round_payload(gates);
  return p;
}

// Walks column sizes through the adder-tree policy.  Mirrors
// HammingMachine::build_layer exactly; only sizes matter for the cost.
static std::vector<size_t> hamming_final_columns(uint64_t input_bits,
                                                 uint64_t entries,
                                                 PhasePlan *plan) {
  std::vector<size_t> cols{static_cast<size_t>(input_bits)};
  auto settled = [&](size_t upto) {
    for (size_t i = 0; i < upto; ++i)
      if (cols[i] > 1) return false;
    return true;
  };
  auto all_done = [&] {
    for (size_t c : cols)
      if (c > 1) return false;
    return true;
  };
  while (!all_done()) {
    std::vector<size_t> next(cols.size() + 1, 0);
    uint64_t layer_ops = 0;
    for (size_t ci = 0; ci < cols.size(); ++ci) {
      const ColumnOps ops = column_layer_ops(cols[ci], settled(ci));
      const size_t consumed = 3 * ops.full_adders + (ops.half_adder ? 2 : 0);
      const size_t sums = ops.full_adders + (ops.half_adder ? 1 : 0);
      const size_t carries = sums;
      next[ci] += (cols[ci] - consumed) + sums;
      next[ci + 1] += carries;
      layer_ops += sums;  // one AND per adder
    }
    if (!next.empty() && next.back() == 0) next.pop_back();
    cols = std::move(next);
    if (plan) {
      const uint64_t gates = layer_ops * entries;
      plan->and_gates += gates;
      plan->rounds += 1;
      plan->frames += 1;
      plan->payload_bytes += and_round_payload(gates);
    }
  }
  return cols;
}

PhasePlan plan_hamming(uint64_t input_bits, uint64_t entries) {
  PhasePlan p;
  hamming_final_columns(input_bits, entries, &p);
  return p;
}

unsigned hamming_result_width(uint64_t input_bits) {
  return static_cast<unsigned>(
      hamming_final_columns(input_bits, 1, nullptr).size());
}

PhasePlan plan_compare(unsigned width, uint64_t nodes) {
  PhasePlan p;
  p.rounds = width;
  p.frames = width;
  p.and_gates = static_cast<uint64_t>(width) * nodes;
  p.payload_bytes = width * and_round_payload(nodes);
  return p;
}

PhasePlan plan_top_n(uint64_t count, unsigned key_width, unsigned idx_width,
                     uint64_t n) {
  VCN_CHECK(n >= 1 && n <= count, kInvalidArgument)
      << "top-n " << n << " of " << count;
  PhasePlan p;
  for (uint64_t iter = 0; iter < n; ++iter) {
    uint64_t m = count;
    while (m > 1) {
      const uint64_t pairs = m / 2;
      p += plan_compare(key_width, pairs);
      // Oblivious mux of key and index columns, one round.
      const uint64_t mux_gates = pairs * (key_width + idx_width);
      p.and_gates += mux_gates;
      p.rounds += 1;
      p.frames += 1;
      p.payload_bytes += and_round_payload(mux_gates);
      m = pairs + (m % 2);
    }
    // Opening of the winning index.
    p.rounds += 1;
    p.frames += 1;
    p.payload_bytes += (idx_width + 7) / 8;
  }
  return p;
}

PhasePlan plan_prune(uint64_t bk_bits, uint64_t cohort_size,
                     uint64_t max_weight, uint64_t n) {
  PhasePlan p = plan_and_batch(bk_bits * cohort_size);
  p += plan_hamming(bk_bits, cohort_size);
  const unsigned weight_width = integer_width(max_weight);
  const unsigned idx_width = integer_width(cohort_size - 1);
  p += plan_top_n(cohort_size, weight_width + 1, idx_width, n);
  return p;
}

}  // namespace vcn
